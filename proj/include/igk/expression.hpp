#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace igk {

struct ExprNode;

// Arithmetic expression over named variables: + - * / ^, unary minus,
// exp(), ln(), numeric literals and the constant pi.
class Expression {
 public:
  // Names are resolved at parse time; evaluate() takes values in the same order.
  static Expression parse(std::string_view text, std::vector<std::string> variables);

  double evaluate(std::span<const double> values) const;
  double operator()(double x) const { return evaluate(std::span<const double>(&x, 1)); }

  const std::string& text() const { return text_; }
  const std::vector<std::string>& variables() const { return variables_; }

 private:
  std::shared_ptr<const ExprNode> root_;
  std::string text_;
  std::vector<std::string> variables_;
};

}  // namespace igk
