#include "a12/generating.hpp"

#include <cmath>
#include <limits>

namespace a12 {

namespace {

const std::vector<std::string> kUV = {"u", "v"};
const std::vector<std::string> kS = {"s"};

ExprPtr u_var() { return Expr::variable(0); }
ExprPtr v_var() { return Expr::variable(1); }
ExprPtr s_var() { return Expr::variable(0); }

/// L(u,v) = (u+v) * phi(sqrt(v/(u+v)))^2
ExprPtr l_from_phi_tree(const ExprPtr& phi) {
  ExprPtr total = Expr::add(u_var(), v_var());
  ExprPtr w = Expr::sqrt(Expr::div(v_var(), total));
  ExprPtr phi_at_w = phi->substitute({w});
  return Expr::mul(total, Expr::pow(phi_at_w, 2.0));
}

/// L(u,v) = (u+v) * psi(sqrt(u/(u+v)))^2
ExprPtr l_from_psi_tree(const ExprPtr& psi) {
  ExprPtr total = Expr::add(u_var(), v_var());
  ExprPtr w = Expr::sqrt(Expr::div(u_var(), total));
  ExprPtr psi_at_w = psi->substitute({w});
  return Expr::mul(total, Expr::pow(psi_at_w, 2.0));
}

/// phi(s) = sqrt(L(1-s^2, s^2)); psi(s) = sqrt(L(s^2, 1-s^2)).
ExprPtr profile_from_l(const ExprPtr& l, bool want_phi) {
  ExprPtr s2 = Expr::pow(s_var(), 2.0);
  ExprPtr one_minus = Expr::sub(Expr::constant(1.0), Expr::pow(s_var(), 2.0));
  ExprPtr sub = want_phi ? l->substitute({one_minus, s2}) : l->substitute({s2, one_minus});
  return Expr::sqrt(sub);
}

std::array<ExprPtr, 4> derivative_chain(const ExprPtr& f) {
  std::array<ExprPtr, 4> out;
  out[0] = f;
  for (int i = 1; i < 4; ++i) out[i] = out[i - 1]->derivative(0);
  return out;
}

double checked_eval(const ExprPtr& e, const double* vars, int n, const char* what) {
  double val = e->eval(vars, n);
  if (!std::isfinite(val))
    throw FamilyError(std::string("derivatives unavailable: non-finite ") + what);
  return val;
}

}  // namespace

void GeneratingFamily::finalize(ExprPtr l_tree) {
  l_[0] = l_tree;
  l_[1] = l_[0]->derivative(0);  // L1
  l_[2] = l_[0]->derivative(1);  // L2
  l_[3] = l_[1]->derivative(0);  // L11
  l_[4] = l_[1]->derivative(1);  // L12
  l_[5] = l_[2]->derivative(1);  // L22
  l_[6] = l_[3]->derivative(0);  // L111
  l_[7] = l_[3]->derivative(1);  // L112
  l_[8] = l_[4]->derivative(1);  // L122
  l_[9] = l_[5]->derivative(1);  // L222
  if (kind_ != Kind::PhiExpr) phi_ = derivative_chain(profile_from_l(l_tree, true));
  if (kind_ != Kind::PsiExpr) psi_ = derivative_chain(profile_from_l(l_tree, false));
}

GeneratingFamily GeneratingFamily::riemannian(double c1, double c2) {
  if (!(c1 > 0.0) || !(c2 > 0.0))
    throw FamilyError("riemannian family needs positive coefficients");
  GeneratingFamily f;
  f.kind_ = Kind::Riemannian;
  f.spec_ = "riemannian:" + std::to_string(c1) + "," + std::to_string(c2);
  ExprPtr l = Expr::add(Expr::mul(Expr::constant(c1), u_var()),
                        Expr::mul(Expr::constant(c2), v_var()));
  f.finalize(l);
  return f;
}

GeneratingFamily GeneratingFamily::mroot(int m) {
  if (m < 2) throw FamilyError("mroot family needs an integer m >= 2");
  GeneratingFamily f;
  f.kind_ = Kind::MRoot;
  f.spec_ = "mroot:" + std::to_string(m);
  ExprPtr radicand = Expr::add(Expr::pow(u_var(), double(m)), Expr::pow(v_var(), double(m)));
  ExprPtr l = Expr::add(Expr::add(u_var(), v_var()), Expr::pow(radicand, 1.0 / double(m)));
  f.finalize(l);
  return f;
}

GeneratingFamily GeneratingFamily::from_phi(const std::string& expr_in_s) {
  GeneratingFamily f;
  f.kind_ = Kind::PhiExpr;
  f.spec_ = "phi:" + expr_in_s;
  f.phi_ = derivative_chain(parse_expression(expr_in_s, kS));
  f.finalize(l_from_phi_tree(f.phi_[0]));
  return f;
}

GeneratingFamily GeneratingFamily::from_psi(const std::string& expr_in_s) {
  GeneratingFamily f;
  f.kind_ = Kind::PsiExpr;
  f.spec_ = "psi:" + expr_in_s;
  f.psi_ = derivative_chain(parse_expression(expr_in_s, kS));
  f.finalize(l_from_psi_tree(f.psi_[0]));
  return f;
}

GeneratingFamily GeneratingFamily::from_l(const std::string& expr_in_uv) {
  GeneratingFamily f;
  f.kind_ = Kind::LExpr;
  f.spec_ = "L:" + expr_in_uv;
  f.finalize(parse_expression(expr_in_uv, kUV));
  return f;
}

GeneratingFamily GeneratingFamily::parse(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw FamilyError("family spec needs the form kind:payload, got '" + spec + "'");
  std::string head = spec.substr(0, colon);
  std::string payload = spec.substr(colon + 1);
  if (head == "phi") return from_phi(payload);
  if (head == "psi") return from_psi(payload);
  if (head == "L" || head == "l") return from_l(payload);
  if (head == "mroot") {
    try {
      size_t used = 0;
      int m = std::stoi(payload, &used);
      if (used != payload.size()) throw std::invalid_argument("trailing");
      return mroot(m);
    } catch (const std::exception&) {
      throw FamilyError("invalid mroot order '" + payload + "'");
    }
  }
  if (head == "riemannian") {
    auto comma = payload.find(',');
    if (comma == std::string::npos)
      throw FamilyError("riemannian spec needs two coefficients, got '" + payload + "'");
    try {
      double c1 = std::stod(payload.substr(0, comma));
      double c2 = std::stod(payload.substr(comma + 1));
      return riemannian(c1, c2);
    } catch (const FamilyError&) {
      throw;
    } catch (const std::exception&) {
      throw FamilyError("invalid riemannian coefficients '" + payload + "'");
    }
  }
  throw FamilyError("unknown family kind '" + head + "'");
}

double GeneratingFamily::l_value(double u, double v) const {
  double vars[2] = {u, v};
  return l_[0]->eval(vars, 2);
}

LJet3 GeneratingFamily::l_jet(double u, double v) const {
  double vars[2] = {u, v};
  LJet3 j;
  j.L = checked_eval(l_[0], vars, 2, "L");
  j.L1 = checked_eval(l_[1], vars, 2, "L1");
  j.L2 = checked_eval(l_[2], vars, 2, "L2");
  j.L11 = checked_eval(l_[3], vars, 2, "L11");
  j.L12 = checked_eval(l_[4], vars, 2, "L12");
  j.L22 = checked_eval(l_[5], vars, 2, "L22");
  j.L111 = checked_eval(l_[6], vars, 2, "L111");
  j.L112 = checked_eval(l_[7], vars, 2, "L112");
  j.L122 = checked_eval(l_[8], vars, 2, "L122");
  j.L222 = checked_eval(l_[9], vars, 2, "L222");
  return j;
}

double GeneratingFamily::phi(double s, int order) const {
  if (order < 0 || order > 3) throw FamilyError("phi derivative order must be 0..3");
  return checked_eval(phi_[order], &s, 1, "phi derivative");
}

double GeneratingFamily::psi(double s, int order) const {
  if (order < 0 || order > 3) throw FamilyError("psi derivative order must be 0..3");
  return checked_eval(psi_[order], &s, 1, "psi derivative");
}

GeneratingFamily GeneratingFamily::convert(Profile target) const {
  GeneratingFamily f;
  switch (target) {
    case Profile::Phi: {
      f.kind_ = Kind::PhiExpr;
      f.phi_ = phi_;
      f.spec_ = "phi:" + to_string(phi_[0], kS);
      f.finalize(l_from_phi_tree(f.phi_[0]));
      break;
    }
    case Profile::Psi: {
      f.kind_ = Kind::PsiExpr;
      f.psi_ = psi_;
      f.spec_ = "psi:" + to_string(psi_[0], kS);
      f.finalize(l_from_psi_tree(f.psi_[0]));
      break;
    }
    case Profile::L: {
      f.kind_ = Kind::LExpr;
      f.spec_ = "L:" + to_string(l_[0], kUV);
      f.finalize(l_[0]);
      break;
    }
  }
  // A converted profile must stay strictly positive where it will be used.
  for (int i = 0; i <= 100; ++i) {
    double s = i / 100.0;
    if (!(f.phi(s) > 0.0) || !(f.psi(s) > 0.0))
      throw FamilyError("non-positive profile detected during conversion at s=" +
                        std::to_string(s));
  }
  return f;
}

GeneratingFamily GeneratingFamily::rescale_arguments(double k1, double k2) const {
  if (!(k1 > 0.0) || !(k2 > 0.0)) throw FamilyError("rescale factors must be positive");
  GeneratingFamily f;
  f.kind_ = Kind::LExpr;
  ExprPtr l = l_[0]->substitute({Expr::mul(Expr::constant(k1), u_var()),
                                 Expr::mul(Expr::constant(k2), v_var())});
  f.spec_ = "L:" + to_string(l, kUV);
  f.finalize(l);
  return f;
}

ValidityReport validate_generating(const GeneratingFamily& family, int grid_size) {
  if (grid_size < 3) throw FamilyError("validation grid needs at least 3 points");
  const int n = grid_size;
  ValidityReport rep;
  rep.positive = true;
  rep.min_margin = std::numeric_limits<double>::infinity();
  rep.min_profile = std::numeric_limits<double>::infinity();

  std::vector<double> p0(n), p1(n), p2(n), q0(n), q1(n), q2(n);
  for (int i = 0; i < n; ++i) {
    double s = double(i) / (n - 1);
    p0[i] = family.phi(s, 0);
    p1[i] = family.phi(s, 1);
    p2[i] = family.phi(s, 2);
    q0[i] = family.psi(s, 0);
    q1[i] = family.psi(s, 1);
    q2[i] = family.psi(s, 2);
    rep.min_profile = std::min({rep.min_profile, p0[i], q0[i]});
    if (!(p0[i] > 0.0) || !(q0[i] > 0.0)) rep.positive = false;
  }

  // margin(s,b) = (f - s f' - s^2 f'') + b^2 f'' is affine in b^2. The phi
  // and psi scans run separately; on a near-tie the phi-side argmin wins.
  double min_p = std::numeric_limits<double>::infinity();
  double min_q = min_p;
  double arg_ps = 0, arg_pb = 0, arg_qs = 0, arg_qb = 0;
  for (int i = 0; i < n; ++i) {
    double s = double(i) / (n - 1);
    double base_p = p0[i] - s * p1[i] - s * s * p2[i];
    double base_q = q0[i] - s * q1[i] - s * s * q2[i];
    for (int jb = i; jb < n; ++jb) {
      double b = double(jb) / (n - 1);
      double mp = base_p + b * b * p2[i];
      if (mp < min_p) {
        min_p = mp;
        arg_ps = s;
        arg_pb = b;
      }
      double mq = base_q + b * b * q2[i];
      if (mq < min_q) {
        min_q = mq;
        arg_qs = s;
        arg_qb = b;
      }
    }
  }
  if (min_q < min_p - 1e-13) {
    rep.min_margin = min_q;
    rep.argmin_s = arg_qs;
    rep.argmin_b = arg_qb;
    rep.argmin_form = "psi";
  } else {
    rep.min_margin = std::min(min_p, min_q);
    rep.argmin_s = arg_ps;
    rep.argmin_b = arg_pb;
    rep.argmin_form = "phi";
  }

  // The two b=1 convexity expressions agree under s -> sqrt(1-s^2).
  rep.identity_gap = 0.0;
  for (int i = 0; i < n; ++i) {
    double s = double(i) / (n - 1);
    double sbar = std::sqrt(std::max(0.0, 1.0 - s * s));
    double lhs = p0[i] - s * p1[i] + (1.0 - s * s) * p2[i];
    double rhs = family.psi(sbar, 0) - sbar * family.psi(sbar, 1) +
                 (1.0 - sbar * sbar) * family.psi(sbar, 2);
    rep.identity_gap = std::max(rep.identity_gap, std::abs(lhs - rhs));
  }

  rep.valid = rep.positive && rep.min_margin > 0.0 && rep.identity_gap <= 1e-10;
  return rep;
}

}  // namespace a12
