#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "a12/generating.hpp"

namespace a12 {

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Signals evaluation at a direction inside V1 or V2 of a quantity that is
/// only defined away from the two blocks.
struct BoundaryDirectionError : DomainError {
  using DomainError::DomainError;
};

/// An orthogonal splitting R^n = V1 + V2 carried by an alpha-orthonormal
/// frame. Vectors handed to the norm operations live in ambient
/// coordinates; tensors come back in frame coordinates, where alpha is the
/// standard inner product, alpha1 the norm of the first n1 coordinates and
/// alpha2 the norm of the rest.
struct DatumDecomposition {
  int n1 = 0;
  int n2 = 0;
  Eigen::MatrixXd frame;      // columns: alpha-orthonormal basis, first n1 span V1
  Eigen::MatrixXd frame_inv;  // cached inverse
  bool normalized = false;

  static DatumDecomposition standard(int n1, int n2);
  static DatumDecomposition with_frame(int n1, int n2, const Eigen::MatrixXd& frame,
                                       bool normalized = false);

  int dim() const { return n1 + n2; }
  Eigen::VectorXd to_frame(const Eigen::VectorXd& y) const { return frame_inv * y; }
  Eigen::VectorXd from_frame(const Eigen::VectorXd& c) const { return frame * c; }
};

/// Dense symmetric third-order tensor with (i,j,k) accessors.
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(int n) : n_(n), d_(static_cast<size_t>(n) * n * n, 0.0) {}
  int dim() const { return n_; }
  double& operator()(int i, int j, int k) { return d_[(static_cast<size_t>(i) * n_ + j) * n_ + k]; }
  double operator()(int i, int j, int k) const {
    return d_[(static_cast<size_t>(i) * n_ + j) * n_ + k];
  }
  double max_abs() const;
  /// Contraction C_ijk v^k.
  Eigen::MatrixXd contract(const Eigen::VectorXd& v) const;
  /// Largest deviation from total symmetry.
  double symmetry_gap() const;

 private:
  int n_ = 0;
  std::vector<double> d_;
};

/// Point data of the norm on one tangent direction, in frame coordinates.
struct TensorBundleAtPoint {
  Eigen::VectorXd y;     // frame coordinates of the direction
  double a = 0.0;        // alpha1(y)
  double a_prime = 0.0;  // alpha2(y)
  Eigen::MatrixXd g;
  Eigen::MatrixXd g_inv;
  bool positive_definite = false;
  Tensor3 cartan;                             // filled by cartan_tensor
  std::optional<Eigen::VectorXd> mean_torsion;  // absent on V1/V2 boundary
  bool boundary = false;
};

double eval_norm(const GeneratingFamily& family, const DatumDecomposition& datum,
                 const Eigen::VectorXd& y);

/// d/du and d/dv of ln det g as a function of (u,v) = (alpha1^2, alpha2^2),
/// with det g = (L1 L2 - 2 L L12) L1^(n1-1) L2^(n2-1), plus the 2x2 block
/// determinant itself.
struct TorsionCoefficients {
  double p;     // d_u ln det g
  double q;     // d_v ln det g
  double det2;  // L1 L2 - 2 L L12
};
TorsionCoefficients torsion_coefficients(const LJet3& j, int n1, int n2);

struct PrincipalCurvatures {
  double kappa_s;  // the s-curve curvature
  double kappa_u;  // multiplicity n1-1
  double kappa_v;  // multiplicity n2-1
};

PrincipalCurvatures principal_curvatures(const GeneratingFamily& family,
                                         const DatumDecomposition& datum, double s);

/// Closed-form fundamental tensor (g and its inverse) at y.
TensorBundleAtPoint fundamental_tensor(const GeneratingFamily& family,
                                       const DatumDecomposition& datum,
                                       const Eigen::VectorXd& y);

/// Closed-form Cartan tensor and mean Cartan torsion at y. On a boundary
/// direction the torsion is left empty and `boundary` is set; pass
/// `require_interior` to turn that into a BoundaryDirectionError.
TensorBundleAtPoint cartan_tensor(const GeneratingFamily& family,
                                  const DatumDecomposition& datum, const Eigen::VectorXd& y,
                                  bool require_interior = false);

/// ln sqrt(det g(y)).
double log_det_hessian(const GeneratingFamily& family, const DatumDecomposition& datum,
                       const Eigen::VectorXd& y);

bool is_riemannian(const GeneratingFamily& family, const DatumDecomposition& datum,
                   int samples, std::uint64_t seed = 0);

struct FdHessian {
  Eigen::MatrixXd h;
  bool one_sided = false;  // a stencil direction hugged the cone boundary
};

/// Second differences of F^2/2 in frame coordinates; the independent check
/// of the closed-form fundamental tensor. Uses only norm values.
FdHessian hessian_fd_oracle(const GeneratingFamily& family, const DatumDecomposition& datum,
                            const Eigen::VectorXd& y, double step);

/// Central differences of ln sqrt det g in frame coordinates; the
/// independent check of the mean Cartan torsion.
Eigen::VectorXd log_det_gradient_fd(const GeneratingFamily& family,
                                    const DatumDecomposition& datum, const Eigen::VectorXd& y,
                                    double step);

/// Rescales (alpha1, alpha2) by (phi(0), phi(1)) and transforms the profile
/// so the norm is unchanged and the new profile has phi(0) = phi(1) = 1.
std::pair<GeneratingFamily, DatumDecomposition> normalize_datum(
    const GeneratingFamily& family, const DatumDecomposition& datum);

}  // namespace a12
