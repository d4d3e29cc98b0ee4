#pragma once

#include <memory>
#include <string>

#include "a12/lie_algebra.hpp"

namespace a12 {

/// An orthogonal splitting g = V1 + V2 with inner products on the two
/// factors, given by column bases and the Gram matrices of <,>_1, <,>_2 in
/// those bases.
struct SubspaceDatum {
  Eigen::MatrixXd v1, v2;
  Eigen::MatrixXd gram1, gram2;
};

/// A left-invariant two-block norm on a compact Lie algebra: the algebra,
/// the normalized generating profile, and the adapted alpha-orthonormal
/// frame. Brackets are the full Lie bracket (group case); a reductive
/// m-projection may be supplied for coset-space data.
class HomogeneousDatum {
 public:
  HomogeneousDatum(std::shared_ptr<const CompactLieAlgebra> algebra,
                   const GeneratingFamily& family, const SubspaceDatum& split,
                   std::string kind = "custom");

  const CompactLieAlgebra& algebra() const { return *algebra_; }
  const GeneratingFamily& family() const { return family_; }
  const DatumDecomposition& datum() const { return datum_; }
  const Eigen::MatrixXd& alpha() const { return alpha_; }
  const std::string& kind() const { return kind_; }
  int n1() const { return datum_.n1; }
  int n2() const { return datum_.n2; }

  void set_m_projection(const Eigen::MatrixXd& p) { m_projection_ = p; }

  Eigen::VectorXd bracket_m(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
  double pair_alpha(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
  /// alpha-orthogonal projections onto V1 / V2, in algebra coordinates.
  Eigen::VectorXd project_v1(const Eigen::VectorXd& y) const;
  Eigen::VectorXd project_v2(const Eigen::VectorXd& y) const;
  double norm(const Eigen::VectorXd& y) const { return eval_norm(family_, datum_, y); }

 private:
  std::shared_ptr<const CompactLieAlgebra> algebra_;
  GeneratingFamily family_;
  DatumDecomposition datum_;
  Eigen::MatrixXd alpha_;
  Eigen::MatrixXd m_projection_;  // identity unless set
  std::string kind_;
};

/// V2 = a Cartan subalgebra, V1 = the sum of the real root spaces of its
/// adjoint action, with <,>_1 scaled by root_scalars[k] on the k-th root
/// space (broadcast when a single scalar is given) and <,>_2 the restricted
/// bi-invariant form. The result satisfies the vanishing criterion.
HomogeneousDatum build_cartan_datum(std::shared_ptr<const CompactLieAlgebra> algebra,
                                    const GeneratingFamily& family,
                                    const std::vector<double>& root_scalars = {1.0});

/// V2 = one root space, V1 = the Cartan subalgebra plus the remaining root
/// spaces with unequal block scalings, so the vanishing criterion fails and
/// the S-curvature is not identically zero.
HomogeneousDatum build_rootspace_datum(std::shared_ptr<const CompactLieAlgebra> algebra,
                                       const GeneratingFamily& family, int v2_root_index = 0,
                                       double cartan_scale = 2.0,
                                       double first_other_scale = 2.0);

/// Parses datum spec strings: "cartan", "cartan:c1,c2,...", "perturbed".
HomogeneousDatum build_datum(std::shared_ptr<const CompactLieAlgebra> algebra,
                             const GeneratingFamily& family, const std::string& spec);

/// The scalar coefficient of the V1-component of the raised distortion
/// gradient: the S-curvature is phi_coefficient * (L1 c + L2 d). Degree -2
/// homogeneous; zero for linear L.
double phi_coefficient(const HomogeneousDatum& hd, const Eigen::VectorXd& y);

double s_curvature_closed(const HomogeneousDatum& hd, const Eigen::VectorXd& y);

/// The independent route: raises the central-difference gradient of
/// ln sqrt det g with the fundamental tensor and pairs the bracket with
/// <,>_y. Shares no code with phi_coefficient.
double s_curvature_oracle(const HomogeneousDatum& hd, const Eigen::VectorXd& y,
                          double step = 1e-5);

struct SCurvatureSample {
  Eigen::VectorXd y;
  double a = 0, a_prime = 0;
  double phi = 0;
  double s_closed = 0;
  double s_oracle = 0;
  double deviation = 0;  // |closed - oracle| / max(1, |closed|, |oracle|)
  bool boundary = false;
};
SCurvatureSample evaluate_scurvature(const HomogeneousDatum& hd, const Eigen::VectorXd& y,
                                     double step = 1e-5);

/// One-sided trend of S toward a boundary direction: the closed form is
/// evaluated at y(eps) = (1-eps) y_boundary + eps y_transverse along a
/// decreasing ladder of eps (halved per step, smallest last). The caller
/// reads off convergence or blow-up; nothing is extrapolated.
std::vector<double> s_curvature_boundary_trend(const HomogeneousDatum& hd,
                                               const Eigen::VectorXd& y_boundary,
                                               const Eigen::VectorXd& y_transverse,
                                               int steps = 6, double eps0 = 0.1);

struct CriterionReport {
  bool holds = false;
  // First violated polarized condition, when holds is false:
  Eigen::VectorXd witness_v1, witness_v2;
  int pairing = 0;       // 1: <[y',y''],y'> != 0;  2: <[y',y''],y''> != 0
  double value = 0.0;    // the nonzero pairing at the witness
};

/// Basis test of <[y',y''],y'> = <[y',y''],y''> = 0 for all y' in V1,
/// y'' in V2, with a verified witness on failure.
CriterionReport vanishing_criterion(const HomogeneousDatum& hd);

}  // namespace a12
