#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "a12/qfield.hpp"

namespace a12 {

/// A simple root system in explicit coordinates over Q(sqrt2, sqrt3).
/// Ambient dimension equals the rank except for type A, which lives in the
/// trace-zero hyperplane of R^(rank+1) with roots e_i - e_j.
struct RootSystem {
  char family = 0;  // 'A'..'G'
  int rank = 0;
  int ambient = 0;
  std::string label;            // "B3", "E8", ...
  std::vector<QVec> roots;      // closed under negation
  std::vector<int> positive;    // one index per +- pair

  static RootSystem build(char family, int rank);
  static RootSystem parse(const std::string& spec);

  /// Expected cardinality by type.
  static long long expected_count(char family, int rank);
};

/// Exact #{alpha in Delta : <alpha,U> != 0 and <alpha,X> != 0}.
long long count_nonorthogonal(const RootSystem& rs, const QVec& u, const QVec& x);

struct ScanReport {
  std::string strategy;  // "random" or "exhaustive-directions"
  long long samples = 0;
  std::uint64_t seed = 0;
  long long min_count = 0;
  QVec argmin_u, argmin_x;
  long long expected_min = 4;  // 2 for type A
  bool pass = false;
  bool certified = false;  // exhaustive scans certify the global minimum
  long long flats = 0;     // exhaustive: arrangement flats enumerated
  long long minimizing_pair_count = 0;
  std::vector<std::pair<QVec, QVec>> minimizing_pairs;  // capped
};

/// Seeded random scan over exact rational directions. Half of the samples
/// are drawn from arrangement strata (nullspaces of random root subsets) so
/// low-count cells are actually visited.
ScanReport assertion_scan_random(const RootSystem& rs, long long samples, std::uint64_t seed);

/// Certifies the minimum: the count depends only on the set of roots
/// orthogonal to each argument, and those sets are enumerated from the
/// intersection lattice of the root hyperplane arrangement.
ScanReport assertion_scan_exhaustive(const RootSystem& rs);

ScanReport assertion_scan(const RootSystem& rs, const std::string& strategy,
                          long long samples, std::uint64_t seed);

struct BracketDimReport {
  long long root_count = 0;   // exact count over the A_n model
  int bracket_dim = 0;        // numerical dim [U,[X,su(n+1)]]
  bool equal = false;
};

/// Cross-checks the exact root count against the rank of ad(U) ad(X) in the
/// su(n+1) matrix model, for commuting integer diagonals U, X (sum zero).
BracketDimReport bracket_dim_crosscheck(int n, const std::vector<long long>& u_diag,
                                        const std::vector<long long>& x_diag);

}  // namespace a12
