#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace rulemon::cli {

/// Reads an environment variable; nullptr when unset.
using EnvLookup = std::function<const char*(const char*)>;

/*
 * Entry point of the `rulemon` tool. Subcommands: check, compile, eval,
 * labels. Returns the process exit code: 0 on success, 1 on any error
 * (message on `err`), 2 from `check --fail-on-violation` when a violation
 * was found.
 */
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const EnvLookup& env);

}  // namespace rulemon::cli
