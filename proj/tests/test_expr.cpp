#include <cmath>
#include <numbers>

#include "doctest.h"
#include "yamabe/expr.hpp"

using yamabe::expr::Expression;
using yamabe::expr::ParseError;

namespace {

double eval(const std::string& s, yamabe::confgrid::Point x = {0.1, 0.2, 0.3, 0.4}) {
  return Expression::parse(s)(x);
}

std::size_t error_column(const std::string& s) {
  try {
    Expression::parse(s);
  } catch (const ParseError& e) {
    return e.column();
  }
  return 0;
}

}  // namespace

TEST_CASE("arithmetic and precedence") {
  CHECK(eval("1+2*3") == 7.0);
  CHECK(eval("(1+2)*3") == 9.0);
  CHECK(eval("2-3-4") == -5.0);
  CHECK(eval("8/4/2") == 1.0);
  CHECK(eval("-2*-3") == 6.0);
  CHECK(eval("1.5e1") == 15.0);
  CHECK(eval(" 1 +\t2 ") == 3.0);
}

TEST_CASE("variables, pi and functions") {
  const yamabe::confgrid::Point x{0.1, 0.2, 0.3, 0.4};
  CHECK(eval("x1 + x2 + x3 + x4", x) == doctest::Approx(1.0));
  CHECK(eval("pi") == std::numbers::pi);
  CHECK(eval("1+0.2*cos(2*pi*x1)", x) == doctest::Approx(1.0 + 0.2 * std::cos(2.0 * std::numbers::pi * 0.1)));
  CHECK(eval("exp(sin(x3))", x) == doctest::Approx(std::exp(std::sin(0.3))));
}

TEST_CASE("errors carry the column") {
  CHECK(error_column("1 + ") == 5);
  CHECK(error_column("1 + y") == 5);
  CHECK(error_column("cos 1") == 5);
  CHECK(error_column("(1 + 2") == 7);
  CHECK(error_column("1 2") == 3);
  CHECK(error_column("x5") == 1);
  CHECK(error_column("tan(x1)") == 1);
  CHECK(error_column("1 $ 2") == 3);
}
