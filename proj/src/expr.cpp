#include "yamabe/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <variant>

namespace yamabe::expr {

struct Node {
  enum class Op { constant, variable, add, sub, mul, div, neg, cos, sin, exp };
  Op op = Op::constant;
  double value = 0.0;
  std::size_t variable = 0;
  std::shared_ptr<const Node> lhs, rhs;

  double eval(const confgrid::Point& x) const {
    switch (op) {
      case Op::constant: return value;
      case Op::variable: return x[variable];
      case Op::add: return lhs->eval(x) + rhs->eval(x);
      case Op::sub: return lhs->eval(x) - rhs->eval(x);
      case Op::mul: return lhs->eval(x) * rhs->eval(x);
      case Op::div: return lhs->eval(x) / rhs->eval(x);
      case Op::neg: return -lhs->eval(x);
      case Op::cos: return std::cos(lhs->eval(x));
      case Op::sin: return std::sin(lhs->eval(x));
      case Op::exp: return std::exp(lhs->eval(x));
    }
    return 0.0;
  }
};

namespace {

using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  NodePtr parse() {
    NodePtr root = expression();
    skip_space();
    if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError("expression: " + msg, pos_ + 1); }

  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expression() {
    NodePtr lhs = term();
    while (true) {
      if (accept('+')) lhs = make(Node::Op::add, lhs, term());
      else if (accept('-')) lhs = make(Node::Op::sub, lhs, term());
      else return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    while (true) {
      if (accept('*')) lhs = make(Node::Op::mul, lhs, unary());
      else if (accept('/')) lhs = make(Node::Op::div, lhs, unary());
      else return lhs;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Node::Op::neg, unary());
    if (accept('+')) return unary();
    return primary();
  }

  NodePtr primary() {
    skip_space();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = expression();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("malformed number");
      pos_ += static_cast<std::size_t>(end - begin);
      auto n = std::make_shared<Node>();
      n->value = v;
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string word = s_.substr(start, pos_ - start);
      if (word == "pi") {
        auto n = std::make_shared<Node>();
        n->value = std::numbers::pi;
        return n;
      }
      if (word.size() == 2 && word[0] == 'x' && word[1] >= '1' && word[1] <= '4') {
        auto n = std::make_shared<Node>();
        n->op = Node::Op::variable;
        n->variable = static_cast<std::size_t>(word[1] - '1');
        return n;
      }
      Node::Op op;
      if (word == "cos") op = Node::Op::cos;
      else if (word == "sin") op = Node::Op::sin;
      else if (word == "exp") op = Node::Op::exp;
      else {
        pos_ = start;
        fail("unknown identifier '" + word + "'");
      }
      if (!accept('(')) fail("expected '(' after " + word);
      NodePtr arg = expression();
      if (!accept(')')) fail("expected ')'");
      return make(op, arg);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(const std::string& text) {
  Expression e;
  e.root_ = Parser(text).parse();
  e.text_ = text;
  return e;
}

double Expression::operator()(const confgrid::Point& x) const { return root_->eval(x); }

}  // namespace yamabe::expr
