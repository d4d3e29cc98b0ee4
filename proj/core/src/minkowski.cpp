#include "a12/minkowski.hpp"

#include <cmath>

#include "a12/rng.hpp"

namespace a12 {

namespace {

constexpr double kBoundaryTol = 1e-12;

void check_dims(int n1, int n2) {
  if (n2 < 2 || n1 < n2)
    throw DomainError("dimension decomposition needs n1 >= n2 >= 2");
}

/// Block rotation in SO(V1) x SO(V2) sending the frame coordinates of y to
/// the adapted position (a, 0, ..., 0, a'). Any such completion works; a
/// Householder reflection per block, fixed up to determinant +1 by flipping
/// one coordinate the adapted vector does not touch.
Eigen::MatrixXd adapted_rotation(const Eigen::VectorXd& c, int n1, int n2, double a,
                                 double a_prime) {
  const int n = n1 + n2;
  Eigen::MatrixXd r = Eigen::MatrixXd::Identity(n, n);
  auto rotate_into = [&](int offset, int len, int target, double norm) {
    if (norm <= 0.0) return;
    Eigen::VectorXd w = c.segment(offset, len);
    w[target] -= norm;
    double wn2 = w.squaredNorm();
    if (wn2 < 1e-28) return;
    r.block(offset, offset, len, len) -= (2.0 / wn2) * (w * w.transpose());
    int flip = target == 0 ? len - 1 : 0;  // len >= 2 always
    r.row(offset + flip) *= -1.0;
  };
  rotate_into(0, n1, 0, a);
  rotate_into(n1, n2, n2 - 1, a_prime);
  return r;
}

struct AdaptedPoint {
  Eigen::VectorXd c;  // frame coordinates
  double a, a_prime;
  Eigen::MatrixXd rot;  // rot * c is adapted
  LJet3 jet;
};

AdaptedPoint adapt(const GeneratingFamily& family, const DatumDecomposition& datum,
                   const Eigen::VectorXd& y) {
  if (y.size() != datum.dim()) throw DomainError("direction has wrong dimension");
  if (y.norm() == 0.0) throw DomainError("zero vector");
  AdaptedPoint p;
  p.c = datum.to_frame(y);
  p.a = p.c.head(datum.n1).norm();
  p.a_prime = p.c.tail(datum.n2).norm();
  p.rot = adapted_rotation(p.c, datum.n1, datum.n2, p.a, p.a_prime);
  p.jet = family.l_jet(p.a * p.a, p.a_prime * p.a_prime);
  return p;
}

void fill_g_blocks(const AdaptedPoint& p, int n1, int n2, Eigen::MatrixXd& g,
                   Eigen::MatrixXd& g_inv) {
  const int n = n1 + n2;
  const LJet3& j = p.jet;
  const double a = p.a, ap = p.a_prime;
  g = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n1; ++i) g(i, i) = j.L1;
  for (int i = n1; i < n; ++i) g(i, i) = j.L2;
  g(0, 0) = j.L1 + 2.0 * a * a * j.L11;
  g(n - 1, n - 1) = j.L2 + 2.0 * ap * ap * j.L22;
  g(0, n - 1) = g(n - 1, 0) = 2.0 * a * ap * j.L12;

  const double det2 = j.L1 * j.L2 - 2.0 * j.L * j.L12;
  g_inv = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n1; ++i) g_inv(i, i) = 1.0 / j.L1;
  for (int i = n1; i < n; ++i) g_inv(i, i) = 1.0 / j.L2;
  g_inv(0, 0) = (j.L2 + 2.0 * ap * ap * j.L22) / det2;
  g_inv(n - 1, n - 1) = (j.L1 + 2.0 * a * a * j.L11) / det2;
  g_inv(0, n - 1) = g_inv(n - 1, 0) = -2.0 * a * ap * j.L12 / det2;
}

void set_symmetric(Tensor3& t, int i, int j, int k, double v) {
  t(i, j, k) = t(i, k, j) = t(j, i, k) = t(j, k, i) = t(k, i, j) = t(k, j, i) = v;
}

Tensor3 conjugate_back(const Tensor3& c_ad, const Eigen::MatrixXd& rot) {
  const int n = c_ad.dim();
  Tensor3 t1(n), t2(n), out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int r = 0; r < n; ++r) {
        double s = 0.0;
        for (int k = 0; k < n; ++k) s += c_ad(i, j, k) * rot(k, r);
        t1(i, j, r) = s;
      }
  for (int i = 0; i < n; ++i)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += t1(i, j, r) * rot(j, q);
        t2(i, q, r) = s;
      }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += t2(i, q, r) * rot(i, p);
        out(p, q, r) = s;
      }
  return out;
}

double f2_half(const GeneratingFamily& family, int n1, const Eigen::VectorXd& c) {
  double u = c.head(n1).squaredNorm();
  double v = c.tail(c.size() - n1).squaredNorm();
  return 0.5 * family.l_value(u, v);
}

}  // namespace

DatumDecomposition DatumDecomposition::standard(int n1, int n2) {
  check_dims(n1, n2);
  DatumDecomposition d;
  d.n1 = n1;
  d.n2 = n2;
  d.frame = Eigen::MatrixXd::Identity(n1 + n2, n1 + n2);
  d.frame_inv = d.frame;
  return d;
}

DatumDecomposition DatumDecomposition::with_frame(int n1, int n2,
                                                  const Eigen::MatrixXd& frame,
                                                  bool normalized) {
  check_dims(n1, n2);
  const int n = n1 + n2;
  if (frame.rows() != n || frame.cols() != n)
    throw DomainError("frame must be square of dimension n1+n2");
  DatumDecomposition d;
  d.n1 = n1;
  d.n2 = n2;
  d.frame = frame;
  d.frame_inv = frame.partialPivLu().inverse();
  d.normalized = normalized;
  if (((d.frame * d.frame_inv) - Eigen::MatrixXd::Identity(n, n)).norm() > 1e-8)
    throw DomainError("frame is numerically singular");
  return d;
}

double Tensor3::max_abs() const {
  double m = 0.0;
  for (double x : d_) m = std::max(m, std::abs(x));
  return m;
}

Eigen::MatrixXd Tensor3::contract(const Eigen::VectorXd& v) const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      double s = 0.0;
      for (int k = 0; k < n_; ++k) s += (*this)(i, j, k) * v[k];
      out(i, j) = s;
    }
  return out;
}

double Tensor3::symmetry_gap() const {
  double gap = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j <= i; ++j)
      for (int k = 0; k <= j; ++k) {
        double v = (*this)(i, j, k);
        gap = std::max({gap, std::abs((*this)(i, k, j) - v), std::abs((*this)(j, i, k) - v),
                        std::abs((*this)(j, k, i) - v), std::abs((*this)(k, i, j) - v),
                        std::abs((*this)(k, j, i) - v)});
      }
  return gap;
}

TorsionCoefficients torsion_coefficients(const LJet3& j, int n1, int n2) {
  TorsionCoefficients t;
  t.det2 = j.L1 * j.L2 - 2.0 * j.L * j.L12;
  t.p = (j.L11 * j.L2 - j.L1 * j.L12 - 2.0 * j.L * j.L112) / t.det2 +
        (n1 - 1) * j.L11 / j.L1 + (n2 - 1) * j.L12 / j.L2;
  t.q = (j.L1 * j.L22 - j.L2 * j.L12 - 2.0 * j.L * j.L122) / t.det2 +
        (n1 - 1) * j.L12 / j.L1 + (n2 - 1) * j.L22 / j.L2;
  return t;
}

double eval_norm(const GeneratingFamily& family, const DatumDecomposition& datum,
                 const Eigen::VectorXd& y) {
  if (y.size() != datum.dim()) throw DomainError("direction has wrong dimension");
  if (y.norm() == 0.0) throw DomainError("zero vector");
  Eigen::VectorXd c = datum.to_frame(y);
  double u = c.head(datum.n1).squaredNorm();
  double v = c.tail(datum.n2).squaredNorm();
  return std::sqrt(family.l_value(u, v));
}

PrincipalCurvatures principal_curvatures(const GeneratingFamily& family,
                                         const DatumDecomposition& datum, double s) {
  (void)datum;
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError("s must lie in [0,1]");
  double p = family.phi(s, 0), p1 = family.phi(s, 1), p2 = family.phi(s, 2);
  double sb = std::sqrt(std::max(0.0, 1.0 - s * s));
  double q = family.psi(sb, 0), q1 = family.psi(sb, 1);
  PrincipalCurvatures k;
  double w = (1.0 - s * s) * p1 * p1 / (p * p) + 1.0;
  k.kappa_s = (p - s * p1 + (1.0 - s * s) * p2) / std::pow(w, 1.5);
  k.kappa_u = (p - s * p1) / std::sqrt(w);
  double wb = (1.0 - sb * sb) * q1 * q1 / (q * q) + 1.0;
  k.kappa_v = (q - sb * q1) / std::sqrt(wb);
  return k;
}

TensorBundleAtPoint fundamental_tensor(const GeneratingFamily& family,
                                       const DatumDecomposition& datum,
                                       const Eigen::VectorXd& y) {
  AdaptedPoint p = adapt(family, datum, y);
  TensorBundleAtPoint out;
  out.y = p.c;
  out.a = p.a;
  out.a_prime = p.a_prime;
  Eigen::MatrixXd g_ad, ginv_ad;
  fill_g_blocks(p, datum.n1, datum.n2, g_ad, ginv_ad);
  out.g = p.rot.transpose() * g_ad * p.rot;
  out.g_inv = p.rot.transpose() * ginv_ad * p.rot;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(out.g, Eigen::EigenvaluesOnly);
  out.positive_definite = es.eigenvalues().minCoeff() > 0.0;
  return out;
}

TensorBundleAtPoint cartan_tensor(const GeneratingFamily& family,
                                  const DatumDecomposition& datum, const Eigen::VectorXd& y,
                                  bool require_interior) {
  AdaptedPoint p = adapt(family, datum, y);
  const int n1 = datum.n1, n2 = datum.n2, n = n1 + n2;
  const LJet3& j = p.jet;
  const double a = p.a, ap = p.a_prime;

  TensorBundleAtPoint out;
  out.y = p.c;
  out.a = a;
  out.a_prime = ap;
  Eigen::MatrixXd g_ad, ginv_ad;
  fill_g_blocks(p, n1, n2, g_ad, ginv_ad);
  out.g = p.rot.transpose() * g_ad * p.rot;
  out.g_inv = p.rot.transpose() * ginv_ad * p.rot;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(out.g, Eigen::EigenvaluesOnly);
  out.positive_definite = es.eigenvalues().minCoeff() > 0.0;

  Tensor3 c_ad(n);
  set_symmetric(c_ad, 0, 0, 0, 3.0 * a * j.L11 + 2.0 * a * a * a * j.L111);
  set_symmetric(c_ad, n - 1, n - 1, 0, a * j.L12 + 2.0 * a * ap * ap * j.L122);
  set_symmetric(c_ad, n - 1, 0, 0, ap * j.L12 + 2.0 * a * a * ap * j.L112);
  set_symmetric(c_ad, n - 1, n - 1, n - 1, 3.0 * ap * j.L22 + 2.0 * ap * ap * ap * j.L222);
  for (int i = 1; i < n1; ++i) {
    set_symmetric(c_ad, i, i, 0, a * j.L11);
    set_symmetric(c_ad, i, i, n - 1, ap * j.L12);
  }
  for (int i = n1; i < n - 1; ++i) {
    set_symmetric(c_ad, i, i, 0, a * j.L12);
    set_symmetric(c_ad, i, i, n - 1, ap * j.L22);
  }
  out.cartan = conjugate_back(c_ad, p.rot);

  double alpha = std::sqrt(a * a + ap * ap);
  out.boundary = (a <= kBoundaryTol * alpha) || (ap <= kBoundaryTol * alpha);
  if (out.boundary) {
    if (require_interior)
      throw BoundaryDirectionError("boundary-direction: mean torsion needs y outside V1 and V2");
    return out;
  }

  // I_k = (1/2) d_k ln det g. As a function of (u, v) = (a^2, a'^2) only the
  // adapted components I_1 = a * d_u ln det g and I_n = a' * d_v ln det g
  // survive.
  TorsionCoefficients tc = torsion_coefficients(j, n1, n2);
  Eigen::VectorXd i_ad = Eigen::VectorXd::Zero(n);
  i_ad[0] = a * tc.p;
  i_ad[n - 1] = ap * tc.q;
  out.mean_torsion = p.rot.transpose() * i_ad;
  return out;
}

double log_det_hessian(const GeneratingFamily& family, const DatumDecomposition& datum,
                       const Eigen::VectorXd& y) {
  TensorBundleAtPoint t = fundamental_tensor(family, datum, y);
  Eigen::LLT<Eigen::MatrixXd> llt(t.g);
  if (llt.info() != Eigen::Success)
    throw DomainError("fundamental tensor is not positive definite");
  double log_det = 0.0;
  for (int i = 0; i < t.g.rows(); ++i) log_det += std::log(llt.matrixL()(i, i));
  return log_det;  // sum log L_ii = (1/2) log det g
}

bool is_riemannian(const GeneratingFamily& family, const DatumDecomposition& datum,
                   int samples, std::uint64_t seed) {
  Rng rng(seed);
  const int n = datum.dim();
  for (int k = 0; k < samples; ++k) {
    Eigen::VectorXd c = rng.unit_vector(n);
    while (c.head(datum.n1).norm() < 0.05 || c.tail(datum.n2).norm() < 0.05)
      c = rng.unit_vector(n);
    TensorBundleAtPoint t = cartan_tensor(family, datum, datum.from_frame(c));
    if (!t.mean_torsion || t.mean_torsion->lpNorm<Eigen::Infinity>() >= 1e-9) return false;
  }
  return true;
}

FdHessian hessian_fd_oracle(const GeneratingFamily& family, const DatumDecomposition& datum,
                            const Eigen::VectorXd& y, double step) {
  if (y.size() != datum.dim()) throw DomainError("direction has wrong dimension");
  if (y.norm() == 0.0) throw DomainError("zero vector");
  Eigen::VectorXd c = datum.to_frame(y);
  const int n1 = datum.n1, n = datum.dim();
  double alpha = c.norm();
  if (!(step > 0.0) || step > alpha / 100.0)
    throw DomainError("step too large: FD oracle needs step in (0, alpha(y)/100]");

  const double a = c.head(n1).norm();
  const double ap = c.tail(n - n1).norm();
  const bool deficient1 = a <= 2.0 * step;
  const bool deficient2 = ap <= 2.0 * step;
  auto one_sided_axis = [&](int i) { return (i < n1) ? deficient1 : deficient2; };

  auto f = [&](const Eigen::VectorXd& z) { return f2_half(family, n1, z); };
  auto shift = [&](int i, int k) {
    Eigen::VectorXd z = c;
    z[i] += k * step;
    return z;
  };

  FdHessian out;
  out.one_sided = deficient1 || deficient2;
  out.h = Eigen::MatrixXd::Zero(n, n);
  const double h = step;
  const double f0 = f(c);

  for (int i = 0; i < n; ++i) {
    if (!one_sided_axis(i)) {
      out.h(i, i) = (f(shift(i, 1)) - 2.0 * f0 + f(shift(i, -1))) / (h * h);
    } else {
      out.h(i, i) =
          (2.0 * f0 - 5.0 * f(shift(i, 1)) + 4.0 * f(shift(i, 2)) - f(shift(i, 3))) / (h * h);
    }
    for (int jx = i + 1; jx < n; ++jx) {
      auto dj = [&](const Eigen::VectorXd& z) {
        if (!one_sided_axis(jx)) {
          Eigen::VectorXd zp = z, zm = z;
          zp[jx] += h;
          zm[jx] -= h;
          return (f(zp) - f(zm)) / (2.0 * h);
        }
        Eigen::VectorXd z1 = z, z2 = z;
        z1[jx] += h;
        z2[jx] += 2.0 * h;
        return (-3.0 * f(z) + 4.0 * f(z1) - f(z2)) / (2.0 * h);
      };
      double mixed;
      if (!one_sided_axis(i)) {
        mixed = (dj(shift(i, 1)) - dj(shift(i, -1))) / (2.0 * h);
      } else {
        mixed = (-3.0 * dj(c) + 4.0 * dj(shift(i, 1)) - dj(shift(i, 2))) / (2.0 * h);
      }
      out.h(i, jx) = out.h(jx, i) = mixed;
    }
  }
  return out;
}

Eigen::VectorXd log_det_gradient_fd(const GeneratingFamily& family,
                                    const DatumDecomposition& datum, const Eigen::VectorXd& y,
                                    double step) {
  Eigen::VectorXd c = datum.to_frame(y);
  const int n = datum.dim();
  Eigen::VectorXd grad(n);
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXd cp = c, cm = c;
    cp[k] += step;
    cm[k] -= step;
    grad[k] = (log_det_hessian(family, datum, datum.from_frame(cp)) -
               log_det_hessian(family, datum, datum.from_frame(cm))) /
              (2.0 * step);
  }
  return grad;
}

std::pair<GeneratingFamily, DatumDecomposition> normalize_datum(
    const GeneratingFamily& family, const DatumDecomposition& datum) {
  double c1 = family.phi(0.0);
  double c2 = family.phi(1.0);
  if (!(c1 > 0.0) || !(c2 > 0.0))
    throw FamilyError("invalid family: phi(0) and phi(1) must be positive");
  if (std::abs(c1 - 1.0) < 1e-12 && std::abs(c2 - 1.0) < 1e-12) {
    DatumDecomposition d = datum;
    d.normalized = true;
    return {family, d};
  }
  GeneratingFamily scaled = family.rescale_arguments(1.0 / (c1 * c1), 1.0 / (c2 * c2));
  Eigen::VectorXd diag(datum.dim());
  for (int i = 0; i < datum.n1; ++i) diag[i] = 1.0 / c1;
  for (int i = datum.n1; i < datum.dim(); ++i) diag[i] = 1.0 / c2;
  DatumDecomposition d = DatumDecomposition::with_frame(
      datum.n1, datum.n2, datum.frame * diag.asDiagonal(), true);
  return {scaled, d};
}

}  // namespace a12
