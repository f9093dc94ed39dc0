#include "rulemon/monitor/dump.hpp"

#include <map>
#include <sstream>
#include <vector>

#include "rulemon/ltl/parser.hpp"

namespace rulemon::monitor {

namespace {

constexpr std::string_view kHeader = "rulemon-monitor 1";

std::string letter_label(const MonitorAutomaton& m, Letter a) {
  std::string out;
  for (std::size_t b = 0; b < m.alphabet().size(); ++b) {
    if (!out.empty()) out += " & ";
    if (((a >> b) & 1U) == 0) out += '!';
    out += m.alphabet()[b];
  }
  return out.empty() ? "true" : out;
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string dump_text(const MonitorAutomaton& m) {
  std::ostringstream out;
  out << kHeader << '\n';
  out << "alphabet " << m.alphabet().size();
  for (const auto& name : m.alphabet()) out << ' ' << name;
  out << '\n';
  out << "states " << m.state_count() << '\n';
  out << "initial " << m.initial() << '\n';
  for (StateId s = 0; s < m.state_count(); ++s) {
    const auto& st = m.state(s);
    out << "state " << s << ' ' << to_string(st.tag) << ' ' << (st.accepting ? "accepting" : "rejecting") << ' '
        << ltl::print(st.residual) << '\n';
  }
  out << "transitions\n";
  for (StateId s = 0; s < m.state_count(); ++s) {
    out << s << ':';
    for (Letter a = 0; a < m.letter_count(); ++a) out << ' ' << m.successor(s, a);
    out << '\n';
  }
  return out.str();
}

MonitorAutomaton parse_text_dump(std::string_view text, std::string_view source) {
  std::vector<std::string> lines;
  {
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines.push_back(line);
    }
  }
  std::size_t at = 0;
  auto fail = [&](const std::string& msg) -> MonitorError {
    return MonitorError(std::string(source) + ":" + std::to_string(at + 1) + ": " + msg);
  };
  auto next = [&]() -> std::istringstream {
    if (at >= lines.size()) throw fail("unexpected end of dump");
    return std::istringstream(lines[at]);
  };

  if (lines.empty() || lines[0] != kHeader) throw fail("missing '" + std::string(kHeader) + "' header");
  ++at;

  std::vector<std::string> alphabet;
  {
    auto in = next();
    std::string kw;
    std::size_t n = 0;
    if (!(in >> kw >> n) || kw != "alphabet") throw fail("expected 'alphabet <n> <names>'");
    alphabet.resize(n);
    for (auto& name : alphabet) {
      if (!(in >> name)) throw fail("alphabet lists fewer names than declared");
    }
    ++at;
  }
  std::size_t count = 0;
  {
    auto in = next();
    std::string kw;
    if (!(in >> kw >> count) || kw != "states" || count == 0) throw fail("expected 'states <count>'");
    ++at;
  }
  StateId initial = 0;
  {
    auto in = next();
    std::string kw;
    if (!(in >> kw >> initial) || kw != "initial") throw fail("expected 'initial <id>'");
    ++at;
  }
  std::vector<MonitorState> states(count);
  for (std::size_t s = 0; s < count; ++s) {
    auto in = next();
    std::string kw, tag, acc;
    std::size_t id = 0;
    if (!(in >> kw >> id >> tag >> acc) || kw != "state" || id != s) {
      throw fail("expected 'state " + std::to_string(s) + " <tag> <accepting|rejecting> <formula>'");
    }
    auto verdict = verdict_from_string(tag);
    if (!verdict) throw fail("unknown verdict tag '" + tag + "'");
    if (acc != "accepting" && acc != "rejecting") throw fail("expected 'accepting' or 'rejecting'");
    std::string rest;
    std::getline(in, rest);
    try {
      states[s] = {ltl::parse(rest), *verdict, acc == "accepting"};
    } catch (const ltl::ParseError& e) {
      throw fail(e.what());
    }
    ++at;
  }
  if (at >= lines.size() || lines[at] != "transitions") throw fail("expected 'transitions'");
  ++at;
  const std::size_t letters = std::size_t{1} << alphabet.size();
  std::vector<StateId> transitions;
  transitions.reserve(count * letters);
  for (std::size_t s = 0; s < count; ++s) {
    auto in = next();
    std::string label;
    if (!(in >> label) || label != std::to_string(s) + ":") throw fail("expected row '" + std::to_string(s) + ":'");
    for (std::size_t a = 0; a < letters; ++a) {
      StateId t = 0;
      if (!(in >> t)) throw fail("transition row has fewer than " + std::to_string(letters) + " entries");
      transitions.push_back(t);
    }
    std::string extra;
    if (in >> extra) throw fail("transition row has more than " + std::to_string(letters) + " entries");
    ++at;
  }
  while (at < lines.size() && lines[at].empty()) ++at;
  if (at < lines.size()) throw fail("trailing content after transition table");
  try {
    return MonitorAutomaton(std::move(alphabet), std::move(states), initial, std::move(transitions));
  } catch (const MonitorError& e) {
    throw MonitorError(std::string(source) + ": " + e.what());
  }
}

std::string dump_dot(const MonitorAutomaton& m, std::string_view graph_name) {
  std::ostringstream out;
  out << "digraph \"" << escape(graph_name) << "\" {\n";
  out << "  rankdir=LR;\n";
  out << "  start [shape=point];\n";
  for (StateId s = 0; s < m.state_count(); ++s) {
    const auto& st = m.state(s);
    std::string color = "black";
    if (st.tag == VerdictValue::Violated) color = "red";
    if (st.tag == VerdictValue::Satisfied) color = "darkgreen";
    out << "  s" << s << " [shape=" << (st.accepting ? "doublecircle" : "circle") << ", color=" << color
        << ", label=\"" << s << "\\n" << escape(ltl::print(st.residual)) << "\"];\n";
  }
  out << "  start -> s" << m.initial() << ";\n";
  for (StateId s = 0; s < m.state_count(); ++s) {
    std::map<StateId, std::vector<Letter>> by_target;
    for (Letter a = 0; a < m.letter_count(); ++a) by_target[m.successor(s, a)].push_back(a);
    for (const auto& [t, letters] : by_target) {
      std::string label;
      if (letters.size() == m.letter_count()) {
        label = "true";
      } else {
        for (std::size_t i = 0; i < letters.size(); ++i) {
          if (i) label += "\\n";
          label += letter_label(m, letters[i]);
        }
      }
      out << "  s" << s << " -> s" << t << " [label=\"" << label << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace rulemon::monitor
