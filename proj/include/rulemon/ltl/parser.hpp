#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rulemon/ltl/formula.hpp"

namespace rulemon::ltl {

/*
 * Concrete syntax, loosest to tightest binding:
 *
 *   formula := or ( "->" formula )?              right-associative
 *   or      := and ( "|" and )*
 *   and     := temporal ( "&" temporal )*
 *   temporal:= unary ( ("U" | "R") temporal )?   right-associative
 *   unary   := ("!" | "G" | "F" | "X" | "W") unary | primary
 *   primary := identifier | "true" | "false" | "(" formula ")"
 *
 * W is the weak next operator (true at the last position of a trace).
 */

class ParseError : public std::runtime_error {
 public:
  enum class Reason { Syntax, UnknownOperator };

  ParseError(Reason reason, std::size_t offset, std::vector<std::string> expected, std::string message);

  Reason reason() const { return reason_; }
  /// Byte offset into the input where parsing failed.
  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  Reason reason_;
  std::size_t offset_;
  std::vector<std::string> expected_;
};

Formula parse(std::string_view text);

/// Prints with the minimum parentheses needed for parse(print(f)) == f.
std::string print(const Formula& f);

}  // namespace rulemon::ltl
