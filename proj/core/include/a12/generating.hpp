#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include "a12/expr.hpp"

namespace a12 {

struct FamilyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// L(u,v) and its partial derivatives to total order 3, all evaluated at
/// one point of the closed quadrant.
struct LJet3 {
  double L;
  double L1, L2;
  double L11, L12, L22;
  double L111, L112, L122, L222;
};

enum class Profile { Phi, Psi, L };

/// The scalar profile of a two-argument norm F = sqrt(L(a1^2, a2^2)),
/// equivalently F = a*phi(a2/a) = a*psi(a1/a). One defining expression is
/// canonical; the other two profiles are derived from it symbolically, so
/// every family exposes phi, psi and the order-3 jet of L.
class GeneratingFamily {
 public:
  enum class Kind { Riemannian, MRoot, PhiExpr, PsiExpr, LExpr };

  static GeneratingFamily riemannian(double c1, double c2);
  static GeneratingFamily mroot(int m);
  static GeneratingFamily from_phi(const std::string& expr_in_s);
  static GeneratingFamily from_psi(const std::string& expr_in_s);
  static GeneratingFamily from_l(const std::string& expr_in_uv);

  /// Accepts "riemannian:c1,c2", "mroot:m", "phi:<expr>", "psi:<expr>",
  /// "L:<expr>".
  static GeneratingFamily parse(const std::string& spec);

  Kind kind() const { return kind_; }
  const std::string& spec() const { return spec_; }

  double l_value(double u, double v) const;
  LJet3 l_jet(double u, double v) const;

  /// phi and psi with derivatives; order <= 3.
  double phi(double s, int order = 0) const;
  double psi(double s, int order = 0) const;

  /// Returns the same norm with the requested profile as its defining
  /// expression. Round-trips agree pointwise.
  GeneratingFamily convert(Profile target) const;

  /// Returns the family with L~(u,v) = L(k1*u, k2*v); used when the two
  /// block norms are rescaled.
  GeneratingFamily rescale_arguments(double k1, double k2) const;

 private:
  GeneratingFamily() = default;
  void finalize(ExprPtr l_tree);

  Kind kind_ = Kind::LExpr;
  std::string spec_;
  std::array<ExprPtr, 4> phi_{};  // phi, phi', phi'', phi'''
  std::array<ExprPtr, 4> psi_{};
  std::array<ExprPtr, 10> l_{};   // L, L1, L2, L11, L12, L22, L111..L222
};

/// Grid report for the strong-convexity inequalities of a profile. The
/// margin function phi - s phi' + (b^2 - s^2) phi'' (and its psi analogue)
/// is scanned over the triangle 0 <= s <= b <= 1; identity_gap measures the
/// pointwise match of the two b=1 forms under s -> sqrt(1-s^2).
struct ValidityReport {
  bool valid = false;
  bool positive = false;   // phi and psi strictly positive on the grid
  double min_margin = 0.0;
  double argmin_s = 0.0, argmin_b = 0.0;
  std::string argmin_form;  // "phi" or "psi"
  double identity_gap = 0.0;
  double min_profile = 0.0;  // grid minimum of min(phi, psi)
};

ValidityReport validate_generating(const GeneratingFamily& family, int grid_size = 201);

}  // namespace a12
