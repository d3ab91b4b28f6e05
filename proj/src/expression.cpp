#include "igk/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <utility>

#include "igk/errors.hpp"

namespace igk {

struct ExprNode {
  enum class Op { Const, Var, Add, Sub, Mul, Div, Pow, Neg, Exp, Ln } op = Op::Const;
  double value = 0.0;
  int slot = -1;
  std::shared_ptr<const ExprNode> lhs;
  std::shared_ptr<const ExprNode> rhs;
};

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make_node(ExprNode::Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  auto node = std::make_shared<ExprNode>();
  node->op = op;
  node->lhs = std::move(lhs);
  node->rhs = std::move(rhs);
  return node;
}

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& vars) : text_(text), vars_(vars) {}

  NodePtr parse() {
    NodePtr root = expr();
    skip_space();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("column " + std::to_string(pos_ + 1) + ": " + msg, pos_ + 1);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make_node(ExprNode::Op::Add, lhs, term());
      } else if (accept('-')) {
        lhs = make_node(ExprNode::Op::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = make_node(ExprNode::Op::Mul, lhs, unary());
      } else if (accept('/')) {
        lhs = make_node(ExprNode::Op::Div, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  // -x^2 parses as -(x^2); the exponent may itself carry a sign.
  NodePtr unary() {
    if (accept('-')) return make_node(ExprNode::Op::Neg, unary());
    if (accept('+')) return unary();
    NodePtr base = primary();
    if (accept('^')) return make_node(ExprNode::Op::Pow, base, unary());
    return base;
  }

  NodePtr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  NodePtr number() {
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc()) fail("malformed number");
    pos_ += static_cast<std::size_t>(ptr - first);
    auto node = std::make_shared<ExprNode>();
    node->value = value;
    return node;
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string name(text_.substr(start, pos_ - start));
    if (name == "exp" || name == "ln") {
      if (!accept('(')) fail("expected '(' after " + name);
      NodePtr arg = expr();
      if (!accept(')')) fail("expected ')'");
      return make_node(name == "exp" ? ExprNode::Op::Exp : ExprNode::Op::Ln, arg);
    }
    if (name == "pi") {
      auto node = std::make_shared<ExprNode>();
      node->value = std::numbers::pi;
      return node;
    }
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i] == name) {
        auto node = std::make_shared<ExprNode>();
        node->op = ExprNode::Op::Var;
        node->slot = static_cast<int>(i);
        return node;
      }
    }
    pos_ = start;
    fail("unknown symbol '" + name + "'");
  }

  std::string_view text_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

double eval(const ExprNode& n, std::span<const double> v) {
  switch (n.op) {
    case ExprNode::Op::Const: return n.value;
    case ExprNode::Op::Var: return v[static_cast<std::size_t>(n.slot)];
    case ExprNode::Op::Add: return eval(*n.lhs, v) + eval(*n.rhs, v);
    case ExprNode::Op::Sub: return eval(*n.lhs, v) - eval(*n.rhs, v);
    case ExprNode::Op::Mul: return eval(*n.lhs, v) * eval(*n.rhs, v);
    case ExprNode::Op::Div: return eval(*n.lhs, v) / eval(*n.rhs, v);
    case ExprNode::Op::Pow: return std::pow(eval(*n.lhs, v), eval(*n.rhs, v));
    case ExprNode::Op::Neg: return -eval(*n.lhs, v);
    case ExprNode::Op::Exp: return std::exp(eval(*n.lhs, v));
    case ExprNode::Op::Ln: return std::log(eval(*n.lhs, v));
  }
  return 0.0;
}

}  // namespace

Expression Expression::parse(std::string_view text, std::vector<std::string> variables) {
  Expression e;
  e.root_ = Parser(text, variables).parse();
  e.text_ = std::string(text);
  e.variables_ = std::move(variables);
  return e;
}

double Expression::evaluate(std::span<const double> values) const {
  if (values.size() < variables_.size()) throw DomainError("expression '" + text_ + "': too few values");
  return eval(*root_, values);
}

}  // namespace igk
