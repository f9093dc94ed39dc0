#include <cstdlib>
#include <iostream>

#include "rulemon/cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return rulemon::cli::run_cli(args, std::cout, std::cerr, [](const char* name) { return std::getenv(name); });
}
