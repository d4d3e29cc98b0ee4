#include "a12/kvfcl.hpp"

#include <cmath>

namespace a12 {

namespace {

constexpr double kAcceptSpread = 1e-8;
constexpr double kRejectSpread = 1e-3;
constexpr double kPi = 3.14159265358979323846;

}  // namespace

std::string to_string(DeviationVerdict v) {
  switch (v) {
    case DeviationVerdict::Accepted:
      return "accepted";
    case DeviationVerdict::Rejected:
      return "rejected";
    case DeviationVerdict::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

std::string to_string(KvfclClass c) {
  switch (c) {
    case KvfclClass::Class1:
      return "class-1";
    case KvfclClass::Class2:
      return "class-2";
    case KvfclClass::Rejected:
      return "rejected";
    case KvfclClass::Inconsistent:
      return "inconsistent";
    case KvfclClass::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

void validate_candidate(const HomogeneousDatum& hd, const KillingCandidate& cand) {
  const int dim = hd.algebra().dim();
  if (cand.x.size() != dim || cand.x_prime.size() != dim)
    throw DomainError("candidate has wrong dimension");
  if (cand.x.norm() == 0.0 && cand.x_prime.norm() == 0.0)
    throw DomainError("candidate must be nonzero");
  if (cand.g_prime.rows() != dim || cand.g_prime.cols() == 0)
    throw DomainError("candidate needs a declared g' basis");

  // X' must lie in span(g').
  Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(cand.g_prime)
                          .householderQ() *
                      Eigen::MatrixXd::Identity(dim, cand.g_prime.cols());
  Eigen::VectorXd residual = cand.x_prime - q * (q.transpose() * cand.x_prime);
  if (residual.norm() > 1e-12 * (1.0 + cand.x_prime.norm()))
    throw DomainError("X' does not lie in the declared g'");

  // ad(W) must preserve V1, V2 and be alpha-skew, else the right
  // translations of exp(g') are not even isometries of F.
  const auto& dd = hd.datum();
  const int n1 = hd.n1();
  for (int k = 0; k < cand.g_prime.cols(); ++k) {
    Eigen::MatrixXd adw = hd.algebra().ad(cand.g_prime.col(k));
    double scale = 1.0 + adw.cwiseAbs().maxCoeff();
    Eigen::MatrixXd adw_frame = dd.frame_inv * adw * dd.frame;
    double mix = adw_frame.block(n1, 0, hd.n2(), n1).cwiseAbs().maxCoeff();
    mix = std::max(mix, adw_frame.block(0, n1, n1, hd.n2()).cwiseAbs().maxCoeff());
    if (mix > 1e-9 * scale)
      throw DomainError("g' validation failure: ad(g') does not preserve the splitting");
    Eigen::MatrixXd skew = adw.transpose() * hd.alpha() + hd.alpha() * adw;
    if (skew.cwiseAbs().maxCoeff() > 1e-9 * scale)
      throw DomainError("g' validation failure: ad(g') is not alpha-skew");
  }
}

DeviationReport length_deviation(const HomogeneousDatum& hd, const KillingCandidate& cand,
                                 int samples, std::uint64_t seed, int word_length) {
  validate_candidate(hd, cand);
  if (samples < 1) throw DomainError("need at least one sample");

  Rng rng(seed);
  const auto& g = hd.algebra();
  const int dim = g.dim();
  const int kgp = static_cast<int>(cand.g_prime.cols());
  const bool move_x = cand.x.norm() > 0.0;
  const bool move_xp = cand.x_prime.norm() > 0.0;

  DeviationReport rep;
  rep.samples = samples;
  rep.seed = seed;
  rep.min_f = std::numeric_limits<double>::infinity();
  rep.max_f = 0.0;

  for (int s = 0; s < samples; ++s) {
    Eigen::VectorXd gx = cand.x;
    if (move_x)
      for (int w = 0; w < word_length; ++w)
        gx = adjoint_transport(g, rng.unit_vector(dim), rng.uniform(-kPi, kPi), gx);
    Eigen::VectorXd gxp = cand.x_prime;
    if (move_xp)
      for (int w = 0; w < word_length; ++w) {
        Eigen::VectorXd wdir = Eigen::VectorXd::Zero(dim);
        for (int c = 0; c < kgp; ++c) wdir += rng.normal() * cand.g_prime.col(c);
        double nrm = wdir.norm();
        if (nrm < 1e-12) continue;
        gxp = adjoint_transport(g, wdir / nrm, rng.uniform(-kPi, kPi), gxp);
      }
    double f = hd.norm(gx - gxp);
    rep.min_f = std::min(rep.min_f, f);
    rep.max_f = std::max(rep.max_f, f);
  }

  if (rep.min_f <= 1e-12 * rep.max_f) {
    rep.spread = std::numeric_limits<double>::infinity();
    rep.verdict = DeviationVerdict::Rejected;
    return rep;
  }
  rep.spread = (rep.max_f - rep.min_f) / rep.min_f;
  rep.verdict = rep.spread < kAcceptSpread
                    ? DeviationVerdict::Accepted
                    : (rep.spread > kRejectSpread ? DeviationVerdict::Rejected
                                                  : DeviationVerdict::Inconclusive);
  return rep;
}

KvfclClass classify_candidate(const HomogeneousDatum& hd, const KillingCandidate& cand,
                              const DeviationReport& report) {
  if (report.verdict == DeviationVerdict::Rejected) return KvfclClass::Rejected;
  if (report.verdict == DeviationVerdict::Inconclusive) return KvfclClass::Inconclusive;

  double xscale = std::max(cand.x.norm(), cand.x_prime.norm());
  if (cand.x.norm() <= 1e-12 * xscale) return KvfclClass::Class2;

  // class-1 requires X' central in g'.
  double worst = 0.0;
  for (int k = 0; k < cand.g_prime.cols(); ++k)
    worst = std::max(worst,
                     hd.algebra().bracket(cand.x_prime, cand.g_prime.col(k)).norm());
  if (worst <= 1e-9 * (1.0 + cand.x_prime.norm())) return KvfclClass::Class1;
  return KvfclClass::Inconsistent;
}

}  // namespace a12
