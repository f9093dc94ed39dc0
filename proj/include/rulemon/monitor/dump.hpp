#pragma once

#include <string>
#include <string_view>

#include "rulemon/monitor/automaton.hpp"

namespace rulemon::monitor {

/*
 * Line-oriented text dump:
 *
 *   rulemon-monitor 1
 *   alphabet <n> <name>...
 *   states <count>
 *   initial <id>
 *   state <id> <tag> <accepting|rejecting> <residual formula>
 *   ...
 *   transitions
 *   <id>: <successor for letter 0> <successor for letter 1> ...
 *
 * Letter bit b holds the b-th alphabet entry.
 */
std::string dump_text(const MonitorAutomaton& m);

/// Inverse of dump_text; throws MonitorError with "<source>:<line>:" context.
MonitorAutomaton parse_text_dump(std::string_view text, std::string_view source = "<dump>");

std::string dump_dot(const MonitorAutomaton& m, std::string_view graph_name = "monitor");

}  // namespace rulemon::monitor
