#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace a12 {

struct ExprError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable scalar expression tree over indexed variables, closed under
/// symbolic differentiation. Powers carry constant exponents (sqrt is
/// pow(., 1/2)). The smart constructors fold constants and collapse nested
/// powers; the power collapse pow(pow(x,a),b) -> pow(x,a*b) assumes the
/// base stays nonnegative, which holds for the profile functions this
/// engine exists for.
class Expr {
 public:
  enum class Kind { Constant, Variable, Add, Sub, Mul, Div, Neg, Pow, Exp, Log };

  static ExprPtr constant(double c);
  static ExprPtr variable(int index);
  static ExprPtr add(ExprPtr a, ExprPtr b);
  static ExprPtr sub(ExprPtr a, ExprPtr b);
  static ExprPtr mul(ExprPtr a, ExprPtr b);
  static ExprPtr div(ExprPtr a, ExprPtr b);
  static ExprPtr neg(ExprPtr a);
  static ExprPtr pow(ExprPtr base, double exponent);
  static ExprPtr sqrt(ExprPtr a) { return pow(std::move(a), 0.5); }
  static ExprPtr exp(ExprPtr a);
  static ExprPtr log(ExprPtr a);

  Kind kind() const { return kind_; }
  double constant_value() const { return value_; }
  double exponent() const { return value_; }
  int variable_index() const { return var_; }
  const ExprPtr& child_a() const { return a_; }
  const ExprPtr& child_b() const { return b_; }

  double eval(const double* vars, int nvars) const;
  double eval(const std::vector<double>& vars) const {
    return eval(vars.data(), static_cast<int>(vars.size()));
  }

  ExprPtr derivative(int var) const;

  /// Replaces variable i by replacements[i] (which may use a different
  /// variable space).
  ExprPtr substitute(const std::vector<ExprPtr>& replacements) const;

  bool is_constant(double c) const;

 private:
  friend struct ExprFactory;

  Expr(Kind k, double v, int var, ExprPtr a, ExprPtr b)
      : kind_(k), value_(v), var_(var), a_(std::move(a)), b_(std::move(b)) {}

  Kind kind_;
  double value_ = 0.0;  // Constant value or Pow exponent
  int var_ = -1;
  ExprPtr a_, b_;
};

/// Parses an arithmetic expression over the named variables. Supported:
/// numbers, + - * / ^ with the usual precedence, parentheses, unary minus,
/// and the functions sqrt, exp, log. '^' requires a constant exponent.
ExprPtr parse_expression(const std::string& text,
                         const std::vector<std::string>& variables);

/// Renders the tree in the grammar parse_expression accepts (fully
/// parenthesized), so printed expressions round-trip.
std::string to_string(const ExprPtr& e, const std::vector<std::string>& variables);

}  // namespace a12
