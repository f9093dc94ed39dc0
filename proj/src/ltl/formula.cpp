#include "rulemon/ltl/formula.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace rulemon::ltl {

struct Formula::Node {
  Kind kind;
  std::string name;
  // Null handles here; the shared false node cannot hold itself.
  std::array<Formula, 2> children{Formula(std::shared_ptr<const Node>()), Formula(std::shared_ptr<const Node>())};
  std::size_t size;
  std::size_t depth;
  std::uint64_t hash;
};

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xffU;
    h *= kFnvPrime;
  }
  return h;
}

std::uint64_t hash_string(std::string_view s) {
  std::uint64_t h = kFnvOffset;
  for (unsigned char c : s) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

}  // namespace

std::string_view kind_name(Kind kind) {
  switch (kind) {
    case Kind::False: return "false";
    case Kind::True: return "true";
    case Kind::Atom: return "atom";
    case Kind::Not: return "not";
    case Kind::And: return "and";
    case Kind::Or: return "or";
    case Kind::Implies: return "implies";
    case Kind::Next: return "next";
    case Kind::WeakNext: return "weak-next";
    case Kind::Until: return "until";
    case Kind::Release: return "release";
    case Kind::Globally: return "globally";
    case Kind::Finally: return "finally";
  }
  return "?";
}

bool is_unary(Kind kind) {
  switch (kind) {
    case Kind::Not:
    case Kind::Next:
    case Kind::WeakNext:
    case Kind::Globally:
    case Kind::Finally:
      return true;
    default:
      return false;
  }
}

bool is_binary(Kind kind) {
  switch (kind) {
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
    case Kind::Until:
    case Kind::Release:
      return true;
    default:
      return false;
  }
}

bool is_proposition_identifier(std::string_view name) {
  if (name.empty()) return false;
  auto head = static_cast<unsigned char>(name.front());
  if (!(std::isalpha(head) || head == '_')) return false;
  for (unsigned char c : name) {
    if (!(std::isalnum(c) || c == '_')) return false;
  }
  static constexpr std::array<std::string_view, 8> kReserved = {"G", "F", "X", "U", "R", "W",
                                                                "true", "false"};
  return std::find(kReserved.begin(), kReserved.end(), name) == kReserved.end();
}

Formula::Formula() {
  static const std::shared_ptr<const Node> kFalse = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::False;
    n->size = 1;
    n->depth = 1;
    n->hash = mix(kFnvOffset, static_cast<std::uint64_t>(Kind::False));
    return std::shared_ptr<const Node>(std::move(n));
  }();
  node_ = kFalse;
}

Formula Formula::make(Kind kind, std::string name, Formula left, Formula right, int arity) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  std::uint64_t h = mix(kFnvOffset, static_cast<std::uint64_t>(kind));
  n->size = 1;
  n->depth = 1;
  if (kind == Kind::Atom) h = mix(h, hash_string(name));
  if (arity >= 1) {
    h = mix(h, left.hash());
    n->size += left.size();
    n->depth = left.depth() + 1;
  }
  if (arity == 2) {
    h = mix(h, right.hash());
    n->size += right.size();
    n->depth = std::max(n->depth, right.depth() + 1);
  }
  n->name = std::move(name);
  n->children = {std::move(left), std::move(right)};
  n->hash = h;
  return Formula(std::move(n));
}

Formula Formula::constant(bool value) {
  if (!value) return Formula();
  static const Formula kTrue = make(Kind::True, {}, Formula(), Formula(), 0);
  return kTrue;
}

Formula Formula::atom(std::string name) {
  if (!is_proposition_identifier(name)) {
    throw std::invalid_argument("invalid proposition identifier '" + name + "'");
  }
  return make(Kind::Atom, std::move(name), Formula(), Formula(), 0);
}

Formula Formula::unary(Kind kind, Formula child) {
  if (!is_unary(kind)) throw std::invalid_argument("not a unary operator");
  return make(kind, {}, std::move(child), Formula(), 1);
}

Formula Formula::binary(Kind kind, Formula left, Formula right) {
  if (!is_binary(kind)) throw std::invalid_argument("not a binary operator");
  return make(kind, {}, std::move(left), std::move(right), 2);
}

Formula Formula::negation(Formula child) { return unary(Kind::Not, std::move(child)); }
Formula Formula::next(Formula child) { return unary(Kind::Next, std::move(child)); }
Formula Formula::weak_next(Formula child) { return unary(Kind::WeakNext, std::move(child)); }
Formula Formula::globally(Formula child) { return unary(Kind::Globally, std::move(child)); }
Formula Formula::finally(Formula child) { return unary(Kind::Finally, std::move(child)); }

Formula Formula::conjunction(Formula l, Formula r) { return binary(Kind::And, std::move(l), std::move(r)); }
Formula Formula::disjunction(Formula l, Formula r) { return binary(Kind::Or, std::move(l), std::move(r)); }
Formula Formula::implication(Formula l, Formula r) { return binary(Kind::Implies, std::move(l), std::move(r)); }
Formula Formula::until(Formula l, Formula r) { return binary(Kind::Until, std::move(l), std::move(r)); }
Formula Formula::release(Formula l, Formula r) { return binary(Kind::Release, std::move(l), std::move(r)); }

Kind Formula::kind() const { return node_->kind; }

bool Formula::is_literal() const {
  return kind() == Kind::Atom || (kind() == Kind::Not && child().kind() == Kind::Atom);
}

const std::string& Formula::name() const { return node_->name; }
const Formula& Formula::child() const { return node_->children[0]; }
const Formula& Formula::right() const { return node_->children[1]; }
std::size_t Formula::size() const { return node_->size; }
std::size_t Formula::depth() const { return node_->depth; }
std::uint64_t Formula::hash() const { return node_->hash; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.size() != b.size()) return false;
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  switch (a.kind()) {
    case Kind::Atom:
      return a.name().compare(b.name()) <=> 0;
    case Kind::True:
    case Kind::False:
      return std::strong_ordering::equal;
    default:
      break;
  }
  if (auto c = a.child() <=> b.child(); c != 0) return c;
  if (is_binary(a.kind())) return a.right() <=> b.right();
  return std::strong_ordering::equal;
}

}  // namespace rulemon::ltl
