#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "a12/minkowski.hpp"
#include "a12/rng.hpp"

namespace a12 {

/// A compact Lie algebra in a fixed basis that is orthonormal for the
/// bi-invariant inner product, carried as the family of ad-matrices of the
/// basis vectors. su(n) uses -trace(XY) on anti-Hermitian matrices; the
/// basis is i-diagonal traceless vectors (an orthonormal completion of the
/// trace-zero hyperplane) followed by the normalized off-diagonal pairs.
class CompactLieAlgebra {
 public:
  static CompactLieAlgebra su(int n);
  /// Zero-bracket algebra of the given dimension (degenerate test input).
  static CompactLieAlgebra abelian(int dim);
  /// Parses algebra spec strings: "su2", "su3", ...
  static CompactLieAlgebra parse(const std::string& spec);

  int dim() const { return dim_; }
  int rank() const { return rank_; }
  const std::string& name() const { return name_; }

  const Eigen::MatrixXd& bi_form() const { return bi_form_; }
  const std::vector<Eigen::MatrixXd>& ad_basis() const { return ad_; }
  const Eigen::MatrixXd& cartan_basis() const { return cartan_; }
  const std::vector<std::string>& labels() const { return labels_; }

  Eigen::MatrixXd ad(const Eigen::VectorXd& x) const;
  Eigen::VectorXd bracket(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;

  /// Residual diagnostics over all basis triples.
  double antisymmetry_residual() const;
  double jacobi_residual() const;
  double ad_invariance_residual() const;

  /// su(n) only: coordinates of i*diag(w), sum(w) = 0.
  Eigen::VectorXd su_diagonal_element(const Eigen::VectorXd& w) const;
  int su_n() const { return su_n_; }

 private:
  CompactLieAlgebra() = default;

  int dim_ = 0;
  int rank_ = 0;
  int su_n_ = 0;
  std::string name_;
  Eigen::MatrixXd bi_form_;
  Eigen::MatrixXd cartan_;                  // dim x rank
  Eigen::MatrixXd su_diag_;                 // n x rank, orthonormal trace-zero vectors
  std::vector<Eigen::MatrixXd> ad_;
  std::vector<std::string> labels_;
};

/// Orthonormal basis (columns) of the numerical kernel of ad(X). Throws
/// when the singular spectrum has no clear gap at the threshold.
Eigen::MatrixXd centralizer(const CompactLieAlgebra& algebra, const Eigen::VectorXd& x,
                            double tol = 1e-9);

/// exp(t ad(Y)) X.
Eigen::VectorXd adjoint_transport(const CompactLieAlgebra& algebra, const Eigen::VectorXd& y,
                                  double t, const Eigen::VectorXd& x);

/// Applies a word of `word_length` random adjoint exponentials to X.
Eigen::VectorXd random_orbit_sample(const CompactLieAlgebra& algebra, const Eigen::VectorXd& x,
                                    int word_length, Rng& rng);
Eigen::VectorXd random_orbit_sample(const CompactLieAlgebra& algebra, const Eigen::VectorXd& x,
                                    int word_length, std::uint64_t seed);

struct SubspaceTools {
  bool commutative = false;
  double max_bracket = 0.0;          // largest pairwise bracket norm
  Eigen::MatrixXd complement;        // orthonormal complement basis (columns)
  Eigen::MatrixXd pr_onto;           // projector onto span(V)
  Eigen::MatrixXd pr_complement;     // projector onto the complement
};

/// Commutativity test, orthogonal complement and the two projectors for a
/// subspace, with respect to the given Gram form (bi-invariant by default).
SubspaceTools subspace_tools(const CompactLieAlgebra& algebra, const Eigen::MatrixXd& v_basis,
                             const Eigen::MatrixXd* gram = nullptr);

/// Distance between the column spans of two orthonormal bases (projector
/// Frobenius gap).
double subspace_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

}  // namespace a12
