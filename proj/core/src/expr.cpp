#include "a12/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>

namespace a12 {

struct ExprFactory {
  static ExprPtr node(Expr::Kind k, double v, int var, ExprPtr a, ExprPtr b) {
    return ExprPtr(new Expr(k, v, var, std::move(a), std::move(b)));
  }
};

bool Expr::is_constant(double c) const {
  return kind_ == Kind::Constant && value_ == c;
}

ExprPtr Expr::constant(double c) {
  return ExprFactory::node(Kind::Constant, c, -1, nullptr, nullptr);
}

ExprPtr Expr::variable(int index) {
  if (index < 0) throw ExprError("variable index must be nonnegative");
  return ExprFactory::node(Kind::Variable, 0.0, index, nullptr, nullptr);
}

ExprPtr Expr::add(ExprPtr a, ExprPtr b) {
  if (a->kind() == Kind::Constant && b->kind() == Kind::Constant)
    return constant(a->constant_value() + b->constant_value());
  if (a->is_constant(0.0)) return b;
  if (b->is_constant(0.0)) return a;
  return ExprFactory::node(Kind::Add, 0.0, -1, std::move(a), std::move(b));
}

ExprPtr Expr::sub(ExprPtr a, ExprPtr b) {
  if (a->kind() == Kind::Constant && b->kind() == Kind::Constant)
    return constant(a->constant_value() - b->constant_value());
  if (b->is_constant(0.0)) return a;
  if (a->is_constant(0.0)) return neg(std::move(b));
  return ExprFactory::node(Kind::Sub, 0.0, -1, std::move(a), std::move(b));
}

ExprPtr Expr::mul(ExprPtr a, ExprPtr b) {
  if (a->kind() == Kind::Constant && b->kind() == Kind::Constant)
    return constant(a->constant_value() * b->constant_value());
  if (a->is_constant(0.0) || b->is_constant(0.0)) return constant(0.0);
  if (a->is_constant(1.0)) return b;
  if (b->is_constant(1.0)) return a;
  return ExprFactory::node(Kind::Mul, 0.0, -1, std::move(a), std::move(b));
}

ExprPtr Expr::div(ExprPtr a, ExprPtr b) {
  if (b->is_constant(0.0)) throw ExprError("division by constant zero");
  if (a->kind() == Kind::Constant && b->kind() == Kind::Constant)
    return constant(a->constant_value() / b->constant_value());
  if (a->is_constant(0.0)) return constant(0.0);
  if (b->is_constant(1.0)) return a;
  return ExprFactory::node(Kind::Div, 0.0, -1, std::move(a), std::move(b));
}

ExprPtr Expr::neg(ExprPtr a) {
  if (a->kind() == Kind::Constant) return constant(-a->constant_value());
  if (a->kind() == Kind::Neg) return a->a_;
  return ExprFactory::node(Kind::Neg, 0.0, -1, std::move(a), nullptr);
}

ExprPtr Expr::pow(ExprPtr base, double exponent) {
  if (exponent == 0.0) return constant(1.0);
  if (exponent == 1.0) return base;
  if (base->kind() == Kind::Constant)
    return constant(std::pow(base->constant_value(), exponent));
  if (base->kind() == Kind::Pow)
    return pow(base->a_, base->exponent() * exponent);
  return ExprFactory::node(Kind::Pow, exponent, -1, std::move(base), nullptr);
}

ExprPtr Expr::exp(ExprPtr a) {
  if (a->kind() == Kind::Constant) return constant(std::exp(a->constant_value()));
  return ExprFactory::node(Kind::Exp, 0.0, -1, std::move(a), nullptr);
}

ExprPtr Expr::log(ExprPtr a) {
  if (a->kind() == Kind::Constant) return constant(std::log(a->constant_value()));
  return ExprFactory::node(Kind::Log, 0.0, -1, std::move(a), nullptr);
}

double Expr::eval(const double* vars, int nvars) const {
  switch (kind_) {
    case Kind::Constant:
      return value_;
    case Kind::Variable:
      if (var_ >= nvars) throw ExprError("variable index out of range in eval");
      return vars[var_];
    case Kind::Add:
      return a_->eval(vars, nvars) + b_->eval(vars, nvars);
    case Kind::Sub:
      return a_->eval(vars, nvars) - b_->eval(vars, nvars);
    case Kind::Mul:
      return a_->eval(vars, nvars) * b_->eval(vars, nvars);
    case Kind::Div:
      return a_->eval(vars, nvars) / b_->eval(vars, nvars);
    case Kind::Neg:
      return -a_->eval(vars, nvars);
    case Kind::Pow: {
      double base = a_->eval(vars, nvars);
      if (value_ == 2.0) return base * base;
      if (value_ == 3.0) return base * base * base;
      if (value_ == 0.5) return std::sqrt(base);
      if (value_ == -1.0) return 1.0 / base;
      return std::pow(base, value_);
    }
    case Kind::Exp:
      return std::exp(a_->eval(vars, nvars));
    case Kind::Log:
      return std::log(a_->eval(vars, nvars));
  }
  throw ExprError("corrupt expression node");
}

ExprPtr Expr::derivative(int var) const {
  switch (kind_) {
    case Kind::Constant:
      return constant(0.0);
    case Kind::Variable:
      return constant(var_ == var ? 1.0 : 0.0);
    case Kind::Add:
      return add(a_->derivative(var), b_->derivative(var));
    case Kind::Sub:
      return sub(a_->derivative(var), b_->derivative(var));
    case Kind::Mul:
      return add(mul(a_->derivative(var), b_), mul(a_, b_->derivative(var)));
    case Kind::Div:
      // (a/b)' = a'/b - a b'/b^2
      return sub(div(a_->derivative(var), b_),
                 div(mul(a_, b_->derivative(var)), pow(b_, 2.0)));
    case Kind::Neg:
      return neg(a_->derivative(var));
    case Kind::Pow:
      // (f^c)' = c f^(c-1) f'
      return mul(constant(value_), mul(pow(a_, value_ - 1.0), a_->derivative(var)));
    case Kind::Exp:
      return mul(exp(a_), a_->derivative(var));
    case Kind::Log:
      return div(a_->derivative(var), a_);
  }
  throw ExprError("corrupt expression node");
}

ExprPtr Expr::substitute(const std::vector<ExprPtr>& replacements) const {
  switch (kind_) {
    case Kind::Constant:
      return constant(value_);
    case Kind::Variable:
      if (var_ >= static_cast<int>(replacements.size()))
        throw ExprError("no replacement for variable in substitute");
      return replacements[var_];
    case Kind::Add:
      return add(a_->substitute(replacements), b_->substitute(replacements));
    case Kind::Sub:
      return sub(a_->substitute(replacements), b_->substitute(replacements));
    case Kind::Mul:
      return mul(a_->substitute(replacements), b_->substitute(replacements));
    case Kind::Div:
      return div(a_->substitute(replacements), b_->substitute(replacements));
    case Kind::Neg:
      return neg(a_->substitute(replacements));
    case Kind::Pow:
      return pow(a_->substitute(replacements), value_);
    case Kind::Exp:
      return exp(a_->substitute(replacements));
    case Kind::Log:
      return log(a_->substitute(replacements));
  }
  throw ExprError("corrupt expression node");
}

// ---------------------------------------------------------------------------
// Parser: recursive descent with the usual precedence levels.
// ---------------------------------------------------------------------------

namespace {

struct Parser {
  const std::string& text;
  const std::vector<std::string>& vars;
  size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ExprError(msg + " at position " + std::to_string(pos) + " in '" + text + "'");
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  ExprPtr parse() {
    ExprPtr e = expression();
    skip_ws();
    if (pos != text.size()) fail("unexpected trailing input");
    return e;
  }

  ExprPtr expression() {
    ExprPtr e = term();
    while (true) {
      if (eat('+'))
        e = Expr::add(e, term());
      else if (eat('-'))
        e = Expr::sub(e, term());
      else
        return e;
    }
  }

  ExprPtr term() {
    ExprPtr e = factor();
    while (true) {
      if (eat('*'))
        e = Expr::mul(e, factor());
      else if (eat('/'))
        e = Expr::div(e, factor());
      else
        return e;
    }
  }

  ExprPtr factor() {
    if (eat('-')) return Expr::neg(factor());
    if (eat('+')) return factor();
    return power();
  }

  ExprPtr power() {
    ExprPtr base = atom();
    if (eat('^')) {
      ExprPtr e = factor();  // right-associative
      if (e->kind() != Expr::Kind::Constant)
        fail("exponent must be a constant");
      return Expr::pow(base, e->constant_value());
    }
    return base;
  }

  ExprPtr atom() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of expression");
    char c = text[pos];
    if (c == '(') {
      ++pos;
      ExprPtr e = expression();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail(std::string("unexpected character '") + c + "'");
  }

  ExprPtr number() {
    size_t start = pos;
    while (pos < text.size() &&
           (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.' ||
            text[pos] == 'e' || text[pos] == 'E' ||
            ((text[pos] == '+' || text[pos] == '-') && pos > start &&
             (text[pos - 1] == 'e' || text[pos - 1] == 'E'))))
      ++pos;
    try {
      size_t used = 0;
      double v = std::stod(text.substr(start, pos - start), &used);
      if (used != pos - start) fail("malformed number");
      return Expr::constant(v);
    } catch (const std::exception&) {
      pos = start;
      fail("malformed number");
    }
  }

  ExprPtr identifier() {
    size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    std::string name = text.substr(start, pos - start);
    if (peek() == '(') {
      eat('(');
      ExprPtr arg = expression();
      if (!eat(')')) fail("expected ')' after function argument");
      if (name == "sqrt") return Expr::sqrt(arg);
      if (name == "exp") return Expr::exp(arg);
      if (name == "log") return Expr::log(arg);
      pos = start;
      fail("unknown function '" + name + "'");
    }
    for (size_t i = 0; i < vars.size(); ++i)
      if (vars[i] == name) return Expr::variable(static_cast<int>(i));
    pos = start;
    fail("unknown identifier '" + name + "'");
  }
};

}  // namespace

ExprPtr parse_expression(const std::string& text,
                         const std::vector<std::string>& variables) {
  Parser p{text, variables};
  return p.parse();
}

namespace {

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string print_expr(const Expr& e, const std::vector<std::string>& vars) {
  switch (e.kind()) {
    case Expr::Kind::Constant: {
      double v = e.constant_value();
      return v < 0 ? "(" + format_value(v) + ")" : format_value(v);
    }
    case Expr::Kind::Variable: {
      int i = e.variable_index();
      if (i < 0 || i >= static_cast<int>(vars.size()))
        throw ExprError("variable index out of range in to_string");
      return vars[i];
    }
    case Expr::Kind::Add:
      return "(" + print_expr(*e.child_a(), vars) + "+" + print_expr(*e.child_b(), vars) + ")";
    case Expr::Kind::Sub:
      return "(" + print_expr(*e.child_a(), vars) + "-" + print_expr(*e.child_b(), vars) + ")";
    case Expr::Kind::Mul:
      return "(" + print_expr(*e.child_a(), vars) + "*" + print_expr(*e.child_b(), vars) + ")";
    case Expr::Kind::Div:
      return "(" + print_expr(*e.child_a(), vars) + "/" + print_expr(*e.child_b(), vars) + ")";
    case Expr::Kind::Neg:
      return "(-" + print_expr(*e.child_a(), vars) + ")";
    case Expr::Kind::Pow:
      return "(" + print_expr(*e.child_a(), vars) + "^" + format_value(e.exponent()) + ")";
    case Expr::Kind::Exp:
      return "exp(" + print_expr(*e.child_a(), vars) + ")";
    case Expr::Kind::Log:
      return "log(" + print_expr(*e.child_a(), vars) + ")";
  }
  throw ExprError("corrupt expression node");
}

}  // namespace

std::string to_string(const ExprPtr& e, const std::vector<std::string>& variables) {
  return print_expr(*e, variables);
}

}  // namespace a12
