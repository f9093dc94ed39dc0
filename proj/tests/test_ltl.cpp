#include <doctest.h>

#include <algorithm>
#include <random>

#include "rulemon/ltl/formula.hpp"
#include "rulemon/ltl/parser.hpp"
#include "rulemon/ltl/rule.hpp"
#include "rulemon/ltl/transform.hpp"
#include "rulemon/monitor/evaluate.hpp"
#include "support/random_formula.hpp"

using namespace rulemon::ltl;
using rulemon::testing::random_formula;
using rulemon::testing::random_trace;

namespace {

Formula a() { return Formula::atom("a"); }
Formula b() { return Formula::atom("b"); }
Formula c() { return Formula::atom("c"); }

}  // namespace

TEST_CASE("parse builds the expected tree") {
  CHECK(parse("G (a -> b)") == Formula::globally(Formula::implication(a(), b())));
  CHECK(parse("a U b U c") == Formula::until(a(), Formula::until(b(), c())));
  CHECK(parse("a R b R c") == Formula::release(a(), Formula::release(b(), c())));
  CHECK(parse("true") == Formula::make_true());
  CHECK(parse("false") == Formula::make_false());
  CHECK(parse("W a") == Formula::weak_next(a()));
}

TEST_CASE("precedence: unary binds tightest, then U, then &, then |, then ->") {
  CHECK(parse("G a U b") == Formula::until(Formula::globally(a()), b()));
  CHECK(parse("!a & b") == Formula::conjunction(Formula::negation(a()), b()));
  CHECK(parse("a & b U c") == Formula::conjunction(a(), Formula::until(b(), c())));
  CHECK(parse("a | b & c") == Formula::disjunction(a(), Formula::conjunction(b(), c())));
  CHECK(parse("a -> b | c") == Formula::implication(a(), Formula::disjunction(b(), c())));
  CHECK(parse("a -> b -> c") == Formula::implication(a(), Formula::implication(b(), c())));
  CHECK(parse("a & b & c") == Formula::conjunction(Formula::conjunction(a(), b()), c()));
  CHECK(parse("X a U b") == Formula::until(Formula::next(a()), b()));
  CHECK(parse("a U b -> c") == Formula::implication(Formula::until(a(), b()), c()));
}

TEST_CASE("agent-slot identifiers parse as atoms") {
  const Formula f = parse("behind_ij & X (behind_ij U right_ij U front_ij)");
  CHECK(f.kind() == Kind::And);
  CHECK(f.left().name() == "behind_ij");
  CHECK(f.right().kind() == Kind::Next);
}

TEST_CASE("syntax error reports offset and expected tokens") {
  try {
    (void)parse("G (a ->)");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.reason() == ParseError::Reason::Syntax);
    CHECK(e.offset() == 7);
    CHECK_FALSE(e.expected().empty());
  }
  CHECK_THROWS_AS((void)parse("a U"), ParseError);
  CHECK_THROWS_AS((void)parse("(a"), ParseError);
  CHECK_THROWS_AS((void)parse("a b"), ParseError);
  CHECK_THROWS_AS((void)parse(""), ParseError);
}

TEST_CASE("unknown operators are distinguished from syntax errors") {
  for (const char* text : {"a ^ b", "a => b", "a - b", "a ~ b"}) {
    try {
      (void)parse(text);
      FAIL("expected a parse error for " << text);
    } catch (const ParseError& e) {
      CHECK(e.reason() == ParseError::Reason::UnknownOperator);
    }
  }
}

TEST_CASE("reserved words are not identifiers") {
  CHECK_FALSE(is_proposition_identifier("G"));
  CHECK_FALSE(is_proposition_identifier("true"));
  CHECK_FALSE(is_proposition_identifier("1abc"));
  CHECK(is_proposition_identifier("Ga"));
  CHECK(is_proposition_identifier("sd_front_i"));
  CHECK_THROWS_AS((void)Formula::atom("U"), std::invalid_argument);
}

TEST_CASE("printer inserts only the necessary parentheses") {
  CHECK(print(parse("G (a -> b)")) == "G (a -> b)");
  CHECK(print(parse("a U b U c")) == "a U b U c");
  CHECK(print(parse("(a U b) U c")) == "(a U b) U c");
  CHECK(print(parse("(a | b) & c")) == "(a | b) & c");
  CHECK(print(parse("a & (b & c)")) == "a & (b & c)");
  CHECK(print(parse("!(a & b)")) == "!(a & b)");
  CHECK(print(parse("!!a")) == "!!a");
  CHECK(print(parse("(a -> b) -> c")) == "(a -> b) -> c");
}

TEST_CASE("property: parse(print(f)) == f for random formulas up to depth 8") {
  std::mt19937_64 rng(7);
  const std::vector<std::string> atoms{"a", "b", "behind_ij", "lane_end_k"};
  for (int n = 0; n < 3000; ++n) {
    const Formula f = random_formula(rng, atoms, 8);
    const std::string text = print(f);
    INFO(text);
    REQUIRE(parse(text) == f);
  }
}

TEST_CASE("to_nnf dualities") {
  CHECK(to_nnf(parse("!G a")) == parse("F !a"));
  CHECK(to_nnf(parse("!(a U b)")) == parse("!a R !b"));
  CHECK(to_nnf(a()) == a());
  CHECK(to_nnf(parse("!X a")) == parse("W !a"));
  CHECK(to_nnf(parse("!W a")) == parse("X !a"));
  CHECK(to_nnf(parse("a -> b")) == parse("!a | b"));
  CHECK(to_nnf(parse("!(a -> b)")) == parse("a & !b"));
  CHECK(to_nnf(parse("!!a")) == a());
  CHECK(to_nnf(parse("!true")) == Formula::make_false());
  CHECK(is_nnf(to_nnf(parse("!(a & X (a U b U c))"))));
  CHECK_FALSE(is_nnf(parse("!G a")));
  CHECK_FALSE(is_nnf(parse("a -> b")));
}

TEST_CASE("property: NNF preserves finite-trace semantics") {
  std::mt19937_64 rng(11);
  const std::vector<std::string> atoms{"a", "b", "c"};
  std::uniform_int_distribution<std::size_t> len(1, 8);
  for (int n = 0; n < 3000; ++n) {
    const Formula f = random_formula(rng, atoms, 6);
    const Formula g = to_nnf(f);
    REQUIRE(is_nnf(g));
    const auto trace = random_trace(rng, atoms, len(rng));
    INFO(print(f));
    REQUIRE(rulemon::monitor::evaluate_naive(f, trace, 0) == rulemon::monitor::evaluate_naive(g, trace, 0));
  }
}

TEST_CASE("subformulas are deduplicated and children come first") {
  auto g = subformulas(parse("G a"));
  REQUIRE(g.size() == 2);
  CHECK(g[0] == a());
  CHECK(g[1] == parse("G a"));

  auto imp = subformulas(parse("a -> a"));
  REQUIRE(imp.size() == 2);
  CHECK(imp[1] == parse("a -> a"));

  const Formula nrp = parse("!(behind & X (behind U right U front))");
  auto subs = subformulas(nrp);
  // behind, right, front, right U front, behind U right U front, X(..), behind & X(..), !(..)
  CHECK(subs.size() == 8);
  CHECK(subs.back() == nrp);
  for (std::size_t n = 0; n < subs.size(); ++n) {
    const Formula& s = subs[n];
    if (s.is_constant() || s.is_atom()) continue;
    const auto pos_of = [&](const Formula& x) { return std::find(subs.begin(), subs.end(), x) - subs.begin(); };
    CHECK(pos_of(s.child()) < static_cast<long>(n));
    if (is_binary(s.kind())) CHECK(pos_of(s.right()) < static_cast<long>(n));
  }
}

TEST_CASE("atoms are sorted and unique") {
  CHECK(atoms(parse("b U (a & b) | c")) == std::vector<std::string>{"a", "b", "c"});
  CHECK(atoms(parse("true")).empty());
}

TEST_CASE("agent slot suffixes") {
  auto s = split_agent_slots("behind_ij");
  CHECK(s.base == "behind");
  CHECK(s.slots == std::vector<int>{0, 1});
  s = split_agent_slots("lane_end_k");
  CHECK(s.base == "lane_end");
  CHECK(s.slots == std::vector<int>{2});
  s = split_agent_slots("motorway");
  CHECK(s.base == "motorway");
  CHECK(s.slots.empty());
}

TEST_CASE("rule shape and validation") {
  Rule r{"safe_lane_change", parse("lane_change_i"), parse("sd_rear_i"), 1, {}};
  CHECK(r.as_formula() == parse("G (lane_change_i -> sd_rear_i)"));
  CHECK_NOTHROW(r.validate());
  Rule bad{"bad", parse("behind_ij"), parse("true"), 1, {}};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  Rule zero{"zero", parse("true"), parse("true"), 0, {}};
  CHECK_THROWS_AS(zero.validate(), std::invalid_argument);
}

TEST_CASE("rule library round trip") {
  const char* text =
      "# two rules\n"
      "rule being_overtaken arity 2\n"
      "param delta_near = 3\n"
      "premise: right_ij & near_ij\n"
      "conclusion: !accelerate_i\n"
      "\n"
      "rule safe_distance arity 1\n"
      "premise: true\n"
      "conclusion: sd_front_i\n";
  const auto rules = parse_rule_library(text, "lib.rules");
  REQUIRE(rules.size() == 2);
  CHECK(rules[0].name == "being_overtaken");
  CHECK(rules[0].arity == 2);
  CHECK(rules[0].params.at("delta_near") == 3.0);
  CHECK(rules[1].premise == Formula::make_true());
  const auto again = parse_rule_library(print_rule_library(rules));
  REQUIRE(again.size() == 2);
  for (std::size_t n = 0; n < 2; ++n) {
    CHECK(again[n].name == rules[n].name);
    CHECK(again[n].premise == rules[n].premise);
    CHECK(again[n].conclusion == rules[n].conclusion);
    CHECK(again[n].params == rules[n].params);
  }
}

TEST_CASE("rule library errors carry source and line") {
  try {
    (void)parse_rule_library("rule x arity 1\npremise: a_i &\nconclusion: true\n", "bad.rules");
    FAIL("expected an error");
  } catch (const RuleFileError& e) {
    CHECK(e.source() == "bad.rules");
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS((void)parse_rule_library("rule x arity 1\nconclusion: true\n"), RuleFileError);
  CHECK_THROWS_AS((void)parse_rule_library("rule x arity 1\nparam d = abc\npremise: true\nconclusion: true\n"),
                  RuleFileError);
}
