#pragma once

#include <cstdint>
#include <string>

#include "a12/scurvature.hpp"

namespace a12 {

/// A Killing-field candidate (X, X') on a left-invariant metric: X is the
/// left-translation part, X' the right-translation part, constrained to a
/// declared subalgebra g' whose adjoint action preserves the datum.
struct KillingCandidate {
  Eigen::VectorXd x;
  Eigen::VectorXd x_prime;
  Eigen::MatrixXd g_prime;  // columns span g'
};

enum class DeviationVerdict { Accepted, Rejected, Inconclusive };

struct DeviationReport {
  long long samples = 0;
  std::uint64_t seed = 0;
  double min_f = 0.0;
  double max_f = 0.0;
  double spread = 0.0;  // (max - min) / min
  DeviationVerdict verdict = DeviationVerdict::Inconclusive;
};

enum class KvfclClass { Class1, Class2, Rejected, Inconsistent, Inconclusive };

std::string to_string(DeviationVerdict v);
std::string to_string(KvfclClass c);

/// Checks that ad of every g'-generator preserves V1, V2 and is skew for
/// the alpha form, and that X' lies in span(g'). Throws on failure.
void validate_candidate(const HomogeneousDatum& hd, const KillingCandidate& cand);

/// Samples F(Ad(g) X - Ad(g') X') over seeded orbit words (g over the full
/// group, g' over exp-words in g'). Constant length at sampling resolution
/// means spread < 1e-8; spread > 1e-3 is conclusive rejection; the band
/// between is reported as inconclusive.
DeviationReport length_deviation(const HomogeneousDatum& hd, const KillingCandidate& cand,
                                 int samples, std::uint64_t seed, int word_length = 5);

/// Places an accepted candidate in the dichotomy: X = 0 (class-2) or X' in
/// the center of g' (class-1). An accepted candidate satisfying neither is
/// inconsistent: it indicates a tolerance failure or a bug, never new
/// mathematics.
KvfclClass classify_candidate(const HomogeneousDatum& hd, const KillingCandidate& cand,
                              const DeviationReport& report);

}  // namespace a12
