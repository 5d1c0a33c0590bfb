#pragma once

// Recursive-descent parser for the expression DSL:
//
//   expression := term (('+' | '-') term)*
//   term       := ['-'] factor (('*' | '/') ['-'] factor)*
//   factor     := base ('^' signed-integer)?
//   base       := integer | integer '/' integer | identifier | '(' expression ')'
//
// x1..x6 are coordinates, any other identifier is a parameter. Numbers are
// integers or integer ratios; there are no decimals. An integer ratio is read
// as one literal only where a term starts, so "a/2/3" means (a/2)/3.

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

#include "hspace33/expr.hpp"

namespace h33 {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Raised when an identifier is not permitted by ParseOptions.
class UnknownSymbolError : public ParseError {
 public:
  using ParseError::ParseError;
};

struct ParseOptions {
  // When set, only these identifiers are accepted.
  std::optional<std::set<std::string>> allowed_symbols;
};

Expr parse(std::string_view source, const ParseOptions& options = {});

}  // namespace h33
