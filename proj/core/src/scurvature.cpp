#include "a12/scurvature.hpp"

#include <cmath>

namespace a12 {

namespace {

constexpr double kInteriorTol = 1e-12;

Eigen::MatrixXd orthonormal_frame_of_block(const Eigen::MatrixXd& basis,
                                           const Eigen::MatrixXd& gram) {
  // Columns f = basis * (L^-T) are orthonormal for the form whose Gram in
  // `basis` is gram = L L^T.
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success)
    throw DomainError("subspace inner product is not positive definite");
  Eigen::MatrixXd l = llt.matrixL();
  return basis * l.transpose().triangularView<Eigen::Upper>().solve(
                     Eigen::MatrixXd::Identity(basis.cols(), basis.cols()));
}

struct RootSpaceSplit {
  Eigen::MatrixXd cartan;                  // dim x rank, orthonormal
  std::vector<Eigen::MatrixXd> spaces;     // each dim x 2, orthonormal, theta-sorted
  std::vector<double> thetas;
};

/// Diagonalizes the adjoint action of a generic Cartan element: the
/// eigenspaces of -ad(H)^2 with positive eigenvalue come in 2-dimensional
/// blocks (the real root spaces), the kernel is the Cartan subalgebra.
RootSpaceSplit split_root_spaces(const CompactLieAlgebra& g) {
  if (g.rank() < 2) throw DomainError("root space split needs rank >= 2");
  const int dim = g.dim();
  const int rank = g.rank();
  const int pairs = (dim - rank) / 2;
  if (rank + 2 * pairs != dim)
    throw DomainError("algebra dimension does not split into Cartan plus root pairs");

  for (int attempt = 0; attempt < 6; ++attempt) {
    Eigen::VectorXd h = Eigen::VectorXd::Zero(dim);
    double w = 1.0;
    const double shrink = 1.0 / (3.14159265358979 + attempt);
    for (int a = 0; a < rank; ++a) {
      h += w * g.cartan_basis().col(a);
      w *= shrink;
    }
    Eigen::MatrixXd adh = g.ad(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(-adh * adh);
    const Eigen::VectorXd& ev = es.eigenvalues();  // ascending
    double scale = std::max(1.0, ev(dim - 1));

    // Cluster eigenvalues; need rank zeros and `pairs` doubles.
    bool ok = true;
    for (int i = 0; i < rank && ok; ++i) ok = ev(i) < 1e-10 * scale;
    std::vector<std::pair<int, int>> groups;  // [start, end)
    int i = rank;
    while (i < dim && ok) {
      int jx = i + 1;
      while (jx < dim && ev(jx) - ev(i) < 1e-8 * scale) ++jx;
      if (jx - i != 2) ok = false;
      groups.emplace_back(i, jx);
      i = jx;
    }
    if (!ok || static_cast<int>(groups.size()) != pairs) continue;
    if (!groups.empty() && ev(groups.front().first) < 1e-6 * scale) continue;

    RootSpaceSplit out;
    out.cartan = es.eigenvectors().leftCols(rank);
    for (auto [s, e] : groups) {
      out.spaces.push_back(es.eigenvectors().middleCols(s, 2));
      out.thetas.push_back(std::sqrt(ev(s)));
    }
    return out;
  }
  throw DomainError("failed to separate root spaces of the Cartan action");
}

}  // namespace

HomogeneousDatum::HomogeneousDatum(std::shared_ptr<const CompactLieAlgebra> algebra,
                                   const GeneratingFamily& family, const SubspaceDatum& split,
                                   std::string kind)
    : algebra_(std::move(algebra)), family_(family), kind_(std::move(kind)) {
  const int n1 = static_cast<int>(split.v1.cols());
  const int n2 = static_cast<int>(split.v2.cols());
  if (n1 + n2 != algebra_->dim())
    throw DomainError("V1 and V2 must span the algebra");
  Eigen::MatrixXd frame(algebra_->dim(), algebra_->dim());
  frame.leftCols(n1) = orthonormal_frame_of_block(split.v1, split.gram1);
  frame.rightCols(n2) = orthonormal_frame_of_block(split.v2, split.gram2);
  DatumDecomposition base = DatumDecomposition::with_frame(n1, n2, frame);
  auto normalized = normalize_datum(family_, base);
  family_ = normalized.first;
  datum_ = normalized.second;
  alpha_ = datum_.frame_inv.transpose() * datum_.frame_inv;
  m_projection_ = Eigen::MatrixXd::Identity(algebra_->dim(), algebra_->dim());
}

Eigen::VectorXd HomogeneousDatum::bracket_m(const Eigen::VectorXd& x,
                                            const Eigen::VectorXd& y) const {
  return m_projection_ * algebra_->bracket(x, y);
}

double HomogeneousDatum::pair_alpha(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  return x.dot(alpha_ * y);
}

Eigen::VectorXd HomogeneousDatum::project_v1(const Eigen::VectorXd& y) const {
  Eigen::VectorXd c = datum_.to_frame(y);
  c.tail(datum_.n2).setZero();
  return datum_.from_frame(c);
}

Eigen::VectorXd HomogeneousDatum::project_v2(const Eigen::VectorXd& y) const {
  Eigen::VectorXd c = datum_.to_frame(y);
  c.head(datum_.n1).setZero();
  return datum_.from_frame(c);
}

HomogeneousDatum build_cartan_datum(std::shared_ptr<const CompactLieAlgebra> algebra,
                                    const GeneratingFamily& family,
                                    const std::vector<double>& root_scalars) {
  RootSpaceSplit split = split_root_spaces(*algebra);
  const int pairs = static_cast<int>(split.spaces.size());
  std::vector<double> scal = root_scalars;
  if (scal.size() == 1) scal.assign(pairs, scal[0]);
  if (static_cast<int>(scal.size()) != pairs)
    throw DomainError("need one scalar per root space (or a single broadcast value)");
  for (double c : scal)
    if (!(c > 0.0)) throw DomainError("root space scalars must be positive");

  const int dim = algebra->dim();
  const int n1 = dim - algebra->rank();
  SubspaceDatum sd;
  sd.v1 = Eigen::MatrixXd(dim, n1);
  for (int k = 0; k < pairs; ++k) sd.v1.middleCols(2 * k, 2) = split.spaces[k];
  sd.v2 = split.cartan;
  sd.gram1 = Eigen::MatrixXd::Identity(n1, n1);
  for (int k = 0; k < pairs; ++k) sd.gram1.block(2 * k, 2 * k, 2, 2) *= scal[k];
  sd.gram2 = Eigen::MatrixXd::Identity(algebra->rank(), algebra->rank());
  return HomogeneousDatum(std::move(algebra), family, sd, "cartan");
}

HomogeneousDatum build_rootspace_datum(std::shared_ptr<const CompactLieAlgebra> algebra,
                                       const GeneratingFamily& family, int v2_root_index,
                                       double cartan_scale, double first_other_scale) {
  RootSpaceSplit split = split_root_spaces(*algebra);
  const int pairs = static_cast<int>(split.spaces.size());
  if (v2_root_index < 0 || v2_root_index >= pairs)
    throw DomainError("root space index out of range");
  if (pairs < 2) throw DomainError("need at least two root spaces");

  const int dim = algebra->dim();
  const int rank = algebra->rank();
  const int n1 = dim - 2;
  SubspaceDatum sd;
  sd.v1 = Eigen::MatrixXd(dim, n1);
  sd.gram1 = Eigen::MatrixXd::Identity(n1, n1);
  int col = 0, other = 0;
  for (int k = 0; k < pairs; ++k) {
    if (k == v2_root_index) continue;
    sd.v1.middleCols(col, 2) = split.spaces[k];
    if (other == 0) sd.gram1.block(col, col, 2, 2) *= first_other_scale;
    ++other;
    col += 2;
  }
  sd.v1.rightCols(rank) = split.cartan;
  sd.gram1.block(col, col, rank, rank) *= cartan_scale;
  sd.v2 = split.spaces[v2_root_index];
  sd.gram2 = Eigen::MatrixXd::Identity(2, 2);
  return HomogeneousDatum(std::move(algebra), family, sd, "perturbed");
}

HomogeneousDatum build_datum(std::shared_ptr<const CompactLieAlgebra> algebra,
                             const GeneratingFamily& family, const std::string& spec) {
  if (spec == "cartan") return build_cartan_datum(std::move(algebra), family);
  if (spec.rfind("cartan:", 0) == 0) {
    std::vector<double> scal;
    std::string payload = spec.substr(7);
    size_t pos = 0;
    while (pos <= payload.size()) {
      size_t comma = payload.find(',', pos);
      std::string tok = payload.substr(pos, comma == std::string::npos ? comma : comma - pos);
      try {
        scal.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw DomainError("bad cartan scalar '" + tok + "'");
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return build_cartan_datum(std::move(algebra), family, scal);
  }
  if (spec == "perturbed") return build_rootspace_datum(std::move(algebra), family);
  throw DomainError("unknown datum spec '" + spec + "' (want cartan[:...] or perturbed)");
}

double phi_coefficient(const HomogeneousDatum& hd, const Eigen::VectorXd& y) {
  Eigen::VectorXd c = hd.datum().to_frame(y);
  double a = c.head(hd.n1()).norm();
  double ap = c.tail(hd.n2()).norm();
  double alpha = std::sqrt(a * a + ap * ap);
  if (alpha == 0.0) throw DomainError("zero vector");
  if (a <= kInteriorTol * alpha || ap <= kInteriorTol * alpha)
    throw BoundaryDirectionError("boundary-direction: phi coefficient needs y outside V1, V2");
  LJet3 j = hd.family().l_jet(a * a, ap * ap);
  TorsionCoefficients t = torsion_coefficients(j, hd.n1(), hd.n2());
  return (j.L2 * t.p - j.L1 * t.q) / t.det2;
}

double s_curvature_closed(const HomogeneousDatum& hd, const Eigen::VectorXd& y) {
  double phi = phi_coefficient(hd, y);
  Eigen::VectorXd y1 = hd.project_v1(y);
  Eigen::VectorXd y2 = hd.project_v2(y);
  Eigen::VectorXd w = hd.bracket_m(y2, y1);  // [y'', y']_m
  double c = hd.pair_alpha(w, y1);
  double d = hd.pair_alpha(w, y2);
  Eigen::VectorXd cf = hd.datum().to_frame(y);
  double a = cf.head(hd.n1()).norm();
  double ap = cf.tail(hd.n2()).norm();
  LJet3 j = hd.family().l_jet(a * a, ap * ap);
  return phi * (j.L1 * c + j.L2 * d);
}

double s_curvature_oracle(const HomogeneousDatum& hd, const Eigen::VectorXd& y, double step) {
  Eigen::VectorXd c = hd.datum().to_frame(y);
  double a = c.head(hd.n1()).norm();
  double ap = c.tail(hd.n2()).norm();
  double alpha = std::sqrt(a * a + ap * ap);
  if (alpha == 0.0) throw DomainError("zero vector");
  if (a <= 2.0 * step || ap <= 2.0 * step)
    throw BoundaryDirectionError("boundary-direction: S-curvature oracle needs interior y");

  // grad of ln sqrt det g in frame coordinates, raised by g^{-1}.
  Eigen::VectorXd grad = log_det_gradient_fd(hd.family(), hd.datum(), y, step);
  TensorBundleAtPoint t = fundamental_tensor(hd.family(), hd.datum(), y);
  Eigen::VectorXd raised_frame = t.g_inv * grad;
  Eigen::VectorXd raised = hd.datum().from_frame(raised_frame);
  Eigen::VectorXd w = hd.bracket_m(y, raised);
  Eigen::VectorXd wf = hd.datum().to_frame(w);
  return wf.dot(t.g * c);
}

SCurvatureSample evaluate_scurvature(const HomogeneousDatum& hd, const Eigen::VectorXd& y,
                                     double step) {
  SCurvatureSample s;
  s.y = y;
  Eigen::VectorXd c = hd.datum().to_frame(y);
  s.a = c.head(hd.n1()).norm();
  s.a_prime = c.tail(hd.n2()).norm();
  double alpha = std::sqrt(s.a * s.a + s.a_prime * s.a_prime);
  s.boundary = (s.a <= 2.0 * step || s.a_prime <= 2.0 * step) ||
               (s.a <= kInteriorTol * alpha || s.a_prime <= kInteriorTol * alpha);
  if (s.boundary) return s;
  s.phi = phi_coefficient(hd, y);
  s.s_closed = s_curvature_closed(hd, y);
  s.s_oracle = s_curvature_oracle(hd, y, step);
  s.deviation = std::abs(s.s_closed - s.s_oracle) /
                std::max({1.0, std::abs(s.s_closed), std::abs(s.s_oracle)});
  return s;
}

std::vector<double> s_curvature_boundary_trend(const HomogeneousDatum& hd,
                                               const Eigen::VectorXd& y_boundary,
                                               const Eigen::VectorXd& y_transverse,
                                               int steps, double eps0) {
  if (steps < 1 || !(eps0 > 0.0) || eps0 >= 1.0)
    throw DomainError("trend needs steps >= 1 and eps0 in (0,1)");
  std::vector<double> values;
  values.reserve(steps);
  double eps = eps0;
  for (int k = 0; k < steps; ++k, eps *= 0.5)
    values.push_back(s_curvature_closed(hd, (1.0 - eps) * y_boundary + eps * y_transverse));
  return values;
}

CriterionReport vanishing_criterion(const HomogeneousDatum& hd) {
  const int n1 = hd.n1(), n2 = hd.n2();
  const Eigen::MatrixXd& frame = hd.datum().frame;

  double scale = 0.0;
  std::vector<std::vector<Eigen::VectorXd>> br(n1, std::vector<Eigen::VectorXd>(n2));
  for (int i = 0; i < n1; ++i)
    for (int a = 0; a < n2; ++a) {
      br[i][a] = hd.bracket_m(frame.col(i), frame.col(n1 + a));
      scale = std::max(scale, br[i][a].lpNorm<Eigen::Infinity>());
    }
  const double tol = 1e-10 * (1.0 + scale);

  auto q1 = [&](const Eigen::VectorXd& y1, const Eigen::VectorXd& y2) {
    return hd.pair_alpha(hd.bracket_m(y1, y2), y1);
  };
  auto q2 = [&](const Eigen::VectorXd& y1, const Eigen::VectorXd& y2) {
    return hd.pair_alpha(hd.bracket_m(y1, y2), y2);
  };

  auto witness = [&](std::initializer_list<std::pair<Eigen::VectorXd, Eigen::VectorXd>> cands,
                     CriterionReport& rep) {
    for (const auto& [y1, y2] : cands) {
      double v1 = q1(y1, y2);
      if (std::abs(v1) > tol / 2) {
        rep.witness_v1 = y1;
        rep.witness_v2 = y2;
        rep.pairing = 1;
        rep.value = v1;
        return;
      }
      double v2 = q2(y1, y2);
      if (std::abs(v2) > tol / 2) {
        rep.witness_v1 = y1;
        rep.witness_v2 = y2;
        rep.pairing = 2;
        rep.value = v2;
        return;
      }
    }
    throw DomainError("violated polarized condition without a direct witness");
  };

  CriterionReport rep;
  rep.holds = true;
  // (i) <[e_i, f_a], e_j> + <[e_j, f_a], e_i> = 0
  for (int a = 0; a < n2; ++a)
    for (int i = 0; i < n1; ++i)
      for (int jx = i; jx < n1; ++jx) {
        double v = hd.pair_alpha(br[i][a], frame.col(jx)) +
                   hd.pair_alpha(br[jx][a], frame.col(i));
        if (std::abs(v) > tol) {
          rep.holds = false;
          witness({{frame.col(i), frame.col(n1 + a)},
                   {frame.col(jx), frame.col(n1 + a)},
                   {frame.col(i) + frame.col(jx), frame.col(n1 + a)}},
                  rep);
          return rep;
        }
      }
  // (ii) <[e_i, f_a], f_b> + <[e_i, f_b], f_a> = 0
  for (int i = 0; i < n1; ++i)
    for (int a = 0; a < n2; ++a)
      for (int b = a; b < n2; ++b) {
        double v = hd.pair_alpha(br[i][a], frame.col(n1 + b)) +
                   hd.pair_alpha(br[i][b], frame.col(n1 + a));
        if (std::abs(v) > tol) {
          rep.holds = false;
          witness({{frame.col(i), frame.col(n1 + a)},
                   {frame.col(i), frame.col(n1 + b)},
                   {frame.col(i), frame.col(n1 + a) + frame.col(n1 + b)}},
                  rep);
          return rep;
        }
      }
  return rep;
}

}  // namespace a12
