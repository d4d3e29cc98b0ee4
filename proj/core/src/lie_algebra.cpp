#include "a12/lie_algebra.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace a12 {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

CompactLieAlgebra CompactLieAlgebra::su(int n) {
  if (n < 2) throw DomainError("su(n) needs n >= 2");
  CompactLieAlgebra g;
  g.su_n_ = n;
  g.rank_ = n - 1;
  g.dim_ = n * n - 1;
  g.name_ = "su" + std::to_string(n);

  using CMat = Eigen::MatrixXcd;
  const std::complex<double> im(0.0, 1.0);
  std::vector<CMat> basis;
  basis.reserve(g.dim_);

  // Orthonormal trace-zero diagonal directions: (1,...,1,-a,0,...)/sqrt(a(a+1)).
  g.su_diag_ = Eigen::MatrixXd::Zero(n, n - 1);
  for (int a = 1; a < n; ++a) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < a; ++i) v[i] = 1.0;
    v[a] = -a;
    v /= std::sqrt(double(a) * (a + 1));
    g.su_diag_.col(a - 1) = v;
    CMat h = CMat::Zero(n, n);
    for (int i = 0; i < n; ++i) h(i, i) = im * v[i];
    basis.push_back(h);
    g.labels_.push_back("h" + std::to_string(a));
  }
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) {
      CMat a = CMat::Zero(n, n);
      a(p, q) = inv_sqrt2;
      a(q, p) = -inv_sqrt2;
      basis.push_back(a);
      g.labels_.push_back("A" + std::to_string(p + 1) + std::to_string(q + 1));
      CMat s = CMat::Zero(n, n);
      s(p, q) = im * inv_sqrt2;
      s(q, p) = im * inv_sqrt2;
      basis.push_back(s);
      g.labels_.push_back("S" + std::to_string(p + 1) + std::to_string(q + 1));
    }

  auto bi = [](const CMat& x, const CMat& y) { return -(x * y).trace().real(); };

  g.bi_form_ = Eigen::MatrixXd(g.dim_, g.dim_);
  for (int i = 0; i < g.dim_; ++i)
    for (int j = 0; j <= i; ++j) g.bi_form_(i, j) = g.bi_form_(j, i) = bi(basis[i], basis[j]);

  g.ad_.assign(g.dim_, Eigen::MatrixXd::Zero(g.dim_, g.dim_));
  for (int i = 0; i < g.dim_; ++i)
    for (int j = 0; j < g.dim_; ++j) {
      CMat br = basis[i] * basis[j] - basis[j] * basis[i];
      for (int k = 0; k < g.dim_; ++k) g.ad_[i](k, j) = bi(br, basis[k]);
    }

  g.cartan_ = Eigen::MatrixXd::Zero(g.dim_, g.rank_);
  for (int a = 0; a < g.rank_; ++a) g.cartan_(a, a) = 1.0;
  return g;
}

CompactLieAlgebra CompactLieAlgebra::abelian(int dim) {
  if (dim < 1) throw DomainError("abelian algebra needs dim >= 1");
  CompactLieAlgebra g;
  g.dim_ = dim;
  g.rank_ = dim;
  g.name_ = "abelian" + std::to_string(dim);
  g.bi_form_ = Eigen::MatrixXd::Identity(dim, dim);
  g.cartan_ = Eigen::MatrixXd::Identity(dim, dim);
  g.ad_.assign(dim, Eigen::MatrixXd::Zero(dim, dim));
  for (int i = 0; i < dim; ++i) g.labels_.push_back("e" + std::to_string(i + 1));
  return g;
}

CompactLieAlgebra CompactLieAlgebra::parse(const std::string& spec) {
  if (spec.rfind("su", 0) == 0) {
    try {
      size_t used = 0;
      int n = std::stoi(spec.substr(2), &used);
      if (used == spec.size() - 2) return su(n);
    } catch (const std::exception&) {
    }
  }
  throw DomainError("unknown algebra spec '" + spec + "' (expected su2, su3, ...)");
}

Eigen::MatrixXd CompactLieAlgebra::ad(const Eigen::VectorXd& x) const {
  if (x.size() != dim_) throw DomainError("ad: dimension mismatch");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    if (x[i] != 0.0) m += x[i] * ad_[i];
  return m;
}

Eigen::VectorXd CompactLieAlgebra::bracket(const Eigen::VectorXd& x,
                                           const Eigen::VectorXd& y) const {
  if (y.size() != dim_) throw DomainError("bracket: dimension mismatch");
  return ad(x) * y;
}

double CompactLieAlgebra::antisymmetry_residual() const {
  double r = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k)
        r = std::max(r, std::abs(ad_[i](k, j) + ad_[j](k, i)));
  return r;
}

double CompactLieAlgebra::jacobi_residual() const {
  // Jacobi holds iff ad is a bracket homomorphism on every basis pair.
  double r = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) {
      Eigen::MatrixXd lhs = ad_[i] * ad_[j] - ad_[j] * ad_[i];
      for (int k = 0; k < dim_; ++k) lhs -= ad_[i](k, j) * ad_[k];
      r = std::max(r, lhs.cwiseAbs().maxCoeff());
    }
  return r;
}

double CompactLieAlgebra::ad_invariance_residual() const {
  double r = 0.0;
  for (int i = 0; i < dim_; ++i) {
    Eigen::MatrixXd m = ad_[i].transpose() * bi_form_ + bi_form_ * ad_[i];
    r = std::max(r, m.cwiseAbs().maxCoeff());
  }
  return r;
}

Eigen::VectorXd CompactLieAlgebra::su_diagonal_element(const Eigen::VectorXd& w) const {
  if (su_n_ == 0) throw DomainError("not an su(n) model");
  if (w.size() != su_n_) throw DomainError("diagonal vector has wrong length");
  if (std::abs(w.sum()) > 1e-12 * (1.0 + w.cwiseAbs().maxCoeff()))
    throw DomainError("diagonal vector must be trace-free");
  Eigen::VectorXd x = Eigen::VectorXd::Zero(dim_);
  x.head(rank_) = su_diag_.transpose() * w;
  return x;
}

Eigen::MatrixXd centralizer(const CompactLieAlgebra& algebra, const Eigen::VectorXd& x,
                            double tol) {
  Eigen::MatrixXd adx = algebra.ad(x);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(adx, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const int n = algebra.dim();
  double smax = sv(0);
  if (smax == 0.0) return Eigen::MatrixXd::Identity(n, n);  // central element
  double threshold = tol * smax;
  int kernel = 0;
  while (kernel < n && sv(n - 1 - kernel) < threshold) ++kernel;
  if (kernel == 0)
    throw DomainError("centralizer: no numerical kernel found (ad(X) nonsingular?)");
  if (kernel < n) {
    double smallest_kept = sv(n - 1 - kernel);
    if (smallest_kept < 1e3 * threshold)
      throw DomainError("centralizer: singular values have no clear gap at the threshold");
  }
  return svd.matrixV().rightCols(kernel);
}

Eigen::VectorXd adjoint_transport(const CompactLieAlgebra& algebra, const Eigen::VectorXd& y,
                                  double t, const Eigen::VectorXd& x) {
  if (!std::isfinite(t)) throw DomainError("adjoint_transport: t must be finite");
  Eigen::MatrixXd m = t * algebra.ad(y);
  return m.exp() * x;
}

Eigen::VectorXd random_orbit_sample(const CompactLieAlgebra& algebra, const Eigen::VectorXd& x,
                                    int word_length, Rng& rng) {
  if (word_length < 1) throw DomainError("orbit word length must be >= 1");
  Eigen::VectorXd v = x;
  for (int w = 0; w < word_length; ++w) {
    Eigen::VectorXd y = rng.unit_vector(algebra.dim());
    double t = rng.uniform(-kPi, kPi);
    v = adjoint_transport(algebra, y, t, v);
  }
  return v;
}

Eigen::VectorXd random_orbit_sample(const CompactLieAlgebra& algebra, const Eigen::VectorXd& x,
                                    int word_length, std::uint64_t seed) {
  Rng rng(seed);
  return random_orbit_sample(algebra, x, word_length, rng);
}

SubspaceTools subspace_tools(const CompactLieAlgebra& algebra, const Eigen::MatrixXd& v_basis,
                             const Eigen::MatrixXd* gram) {
  const int n = algebra.dim();
  const Eigen::MatrixXd& b = gram ? *gram : algebra.bi_form();
  if (v_basis.rows() != n) throw DomainError("subspace basis has wrong dimension");
  const int k = static_cast<int>(v_basis.cols());

  SubspaceTools out;
  out.max_bracket = 0.0;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      out.max_bracket = std::max(
          out.max_bracket,
          algebra.bracket(v_basis.col(i), v_basis.col(j)).lpNorm<Eigen::Infinity>());
  out.commutative = out.max_bracket < 1e-12;

  // b-orthonormalize the input, then complete with coordinate directions.
  auto b_dot = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    return x.dot(b * y);
  };
  std::vector<Eigen::VectorXd> ortho;
  auto absorb = [&](Eigen::VectorXd v, bool must_be_independent) {
    for (const auto& u : ortho) v -= b_dot(u, v) * u;
    for (const auto& u : ortho) v -= b_dot(u, v) * u;  // second pass for stability
    double nrm = std::sqrt(std::max(0.0, b_dot(v, v)));
    if (nrm < 1e-10) {
      if (must_be_independent) throw DomainError("dependent input basis");
      return false;
    }
    ortho.push_back(v / nrm);
    return true;
  };
  for (int i = 0; i < k; ++i) absorb(v_basis.col(i), true);
  Eigen::MatrixXd v_on(n, k);
  for (int i = 0; i < k; ++i) v_on.col(i) = ortho[i];
  for (int i = 0; i < n && static_cast<int>(ortho.size()) < n; ++i)
    absorb(Eigen::VectorXd::Unit(n, i), false);
  if (static_cast<int>(ortho.size()) != n)
    throw DomainError("failed to complete orthonormal basis");

  out.complement = Eigen::MatrixXd(n, n - k);
  for (int i = k; i < n; ++i) out.complement.col(i - k) = ortho[i];
  out.pr_onto = v_on * (v_on.transpose() * b);
  out.pr_complement = Eigen::MatrixXd::Identity(n, n) - out.pr_onto;
  return out;
}

double subspace_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd pa = a * a.transpose();
  Eigen::MatrixXd pb = b * b.transpose();
  return (pa - pb).norm();
}

}  // namespace a12
