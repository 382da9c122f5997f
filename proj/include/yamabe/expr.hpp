#pragma once

// Expressions for conformal factors and perturbations in CLI configs.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | primary
//   primary := number | 'pi' | 'x1' | 'x2' | 'x3' | 'x4'
//            | ('cos' | 'sin' | 'exp') '(' expr ')' | '(' expr ')'
//
// Coordinates run over the unit torus [0, 1)^4.

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>

#include "yamabe/grid.hpp"

namespace yamabe::expr {

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& message, std::size_t column)
      : std::invalid_argument(message + " at column " + std::to_string(column)), column_(column) {}
  /// 1-based column of the offending character.
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

struct Node;

class Expression {
 public:
  /// Throws ParseError.
  static Expression parse(const std::string& text);

  double operator()(const confgrid::Point& x) const;
  const std::string& text() const { return text_; }

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

}  // namespace yamabe::expr
