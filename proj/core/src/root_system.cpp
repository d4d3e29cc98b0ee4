#include "a12/root_system.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "a12/lie_algebra.hpp"
#include "a12/rng.hpp"

namespace a12 {

namespace {

QF half() { return QF(Rat(1, 2)); }

void push_sign_combinations(std::vector<QVec>& roots, const QVec& base,
                            const std::vector<int>& slots, size_t k, QVec& cur) {
  if (k == slots.size()) {
    roots.push_back(cur);
    return;
  }
  int i = slots[k];
  cur[i] = base[i];
  push_sign_combinations(roots, base, slots, k + 1, cur);
  cur[i] = -base[i];
  push_sign_combinations(roots, base, slots, k + 1, cur);
}

std::vector<QVec> classical_pairs(int n, bool with_short, const QF& short_scale) {
  // +-e_i +- e_j for i < j, plus optionally +-short_scale*e_i.
  std::vector<QVec> roots;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int si : {1, -1})
        for (int sj : {1, -1}) {
          QVec r(n, QF());
          r[i] = si > 0 ? QF(1) : QF(-1);
          r[j] = sj > 0 ? QF(1) : QF(-1);
          roots.push_back(r);
        }
  if (with_short)
    for (int i = 0; i < n; ++i)
      for (int s : {1, -1}) {
        QVec r(n, QF());
        r[i] = s > 0 ? short_scale : -short_scale;
        roots.push_back(r);
      }
  return roots;
}

int sign_of(const QF& v) {
  if (v.is_zero()) return 0;
  double d = v.to_double();
  if (std::abs(d) < 1e-9)
    throw std::invalid_argument("cannot determine sign of near-zero field element");
  return d > 0 ? 1 : -1;
}

struct QI {
  long long a = 0, b = 0, c = 0, d = 0;
  bool zero() const { return a == 0 && b == 0 && c == 0 && d == 0; }
};

QI qi_of(const QF& q) {
  if (q.a.den() != 1 || q.b.den() != 1 || q.c.den() != 1 || q.d.den() != 1)
    throw QArithmeticError("expected integral field element");
  QI v{q.a.num(), q.b.num(), q.c.num(), q.d.num()};
  for (long long x : {v.a, v.b, v.c, v.d})
    if (x > (1LL << 40) || x < -(1LL << 40))
      throw QArithmeticError("integer coordinates too large for the fast scan path");
  return v;
}

using QIVec = std::vector<QI>;

QIVec qi_vector(const QVec& v) {
  QVec prim = primitive_integer_vector(v);
  QIVec out(prim.size());
  for (size_t i = 0; i < prim.size(); ++i) out[i] = qi_of(prim[i]);
  return out;
}

bool qi_dot_nonzero(const QIVec& x, const QIVec& y) {
  long long a = 0, b = 0, c = 0, d = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    const QI& p = x[i];
    const QI& q = y[i];
    a += p.a * q.a + 2 * p.b * q.b + 3 * p.c * q.c + 6 * p.d * q.d;
    b += p.a * q.b + p.b * q.a + 3 * (p.c * q.d + p.d * q.c);
    c += p.a * q.c + p.c * q.a + 2 * (p.b * q.d + p.d * q.b);
    d += p.a * q.d + p.d * q.a + p.b * q.c + p.c * q.b;
  }
  return a != 0 || b != 0 || c != 0 || d != 0;
}

}  // namespace

long long RootSystem::expected_count(char family, int rank) {
  switch (family) {
    case 'A':
      return (long long)rank * (rank + 1);
    case 'B':
    case 'C':
      return 2LL * rank * rank;
    case 'D':
      return 2LL * rank * (rank - 1);
    case 'G':
      return 12;
    case 'F':
      return 48;
    case 'E':
      return rank == 6 ? 72 : (rank == 7 ? 126 : 240);
  }
  throw std::invalid_argument("unknown root system family");
}

RootSystem RootSystem::build(char family, int rank) {
  RootSystem rs;
  rs.family = family;
  rs.rank = rank;
  rs.label = std::string(1, family) + std::to_string(rank);

  switch (family) {
    case 'A': {
      if (rank < 1) throw std::invalid_argument("A_n needs rank >= 1");
      rs.ambient = rank + 1;
      for (int i = 0; i < rs.ambient; ++i)
        for (int j = 0; j < rs.ambient; ++j) {
          if (i == j) continue;
          QVec r(rs.ambient, QF());
          r[i] = QF(1);
          r[j] = QF(-1);
          rs.roots.push_back(r);
        }
      break;
    }
    case 'B': {
      if (rank < 2) throw std::invalid_argument("B_n needs rank >= 2");
      rs.ambient = rank;
      rs.roots = classical_pairs(rank, true, QF(1));
      break;
    }
    case 'C': {
      if (rank < 3) throw std::invalid_argument("C_n needs rank >= 3");
      rs.ambient = rank;
      rs.roots = classical_pairs(rank, true, QF(2));
      break;
    }
    case 'D': {
      if (rank < 4) throw std::invalid_argument("D_n needs rank >= 4");
      rs.ambient = rank;
      rs.roots = classical_pairs(rank, false, QF(0));
      break;
    }
    case 'G': {
      if (rank != 2) throw std::invalid_argument("G has rank 2");
      rs.ambient = 2;
      auto add_pair = [&](QF x, QF y) {
        rs.roots.push_back({x, y});
        rs.roots.push_back({-x, -y});
      };
      // short: angles 0, 60, 120 degrees (plus negatives)
      add_pair(QF(1), QF(0));
      add_pair(half(), QF::sqrt3(Rat(1, 2)));
      add_pair(-half(), QF::sqrt3(Rat(1, 2)));
      // long: angles 90, 30, 150 degrees (plus negatives)
      add_pair(QF(0), QF::sqrt3());
      add_pair(QF(Rat(3, 2)), QF::sqrt3(Rat(1, 2)));
      add_pair(QF(Rat(-3, 2)), QF::sqrt3(Rat(1, 2)));
      break;
    }
    case 'F': {
      if (rank != 4) throw std::invalid_argument("F has rank 4");
      rs.ambient = 4;
      rs.roots = classical_pairs(4, true, QF(1));  // B4 part: 32 roots
      QVec base(4, half());
      std::vector<int> slots = {0, 1, 2, 3};
      QVec cur(4, QF());
      push_sign_combinations(rs.roots, base, slots, 0, cur);  // 16 half-roots
      break;
    }
    case 'E': {
      if (rank < 6 || rank > 8) throw std::invalid_argument("E has rank 6, 7 or 8");
      rs.ambient = rank;
      if (rank == 8) {
        // D8 part.
        auto d8 = classical_pairs(8, false, QF(0));
        rs.roots.insert(rs.roots.end(), d8.begin(), d8.end());
        // (+-1/2)^8 with an even number of minus signs.
        for (int mask = 0; mask < 256; ++mask) {
          if (__builtin_popcount(mask) % 2) continue;
          QVec r(8, QF());
          for (int i = 0; i < 8; ++i) r[i] = (mask >> i) & 1 ? -half() : half();
          rs.roots.push_back(r);
        }
      } else if (rank == 7) {
        // D6 embedded in the first six coordinates.
        auto d6 = classical_pairs(6, false, QF(0));
        for (auto& r : d6) {
          r.push_back(QF(0));
          rs.roots.push_back(r);
        }
        // (+-1/2, ..., +-1/2, +-sqrt2/2), even number of +1/2 entries.
        for (int mask = 0; mask < 64; ++mask) {
          if ((6 - __builtin_popcount(mask)) % 2) continue;
          for (int s : {1, -1}) {
            QVec r(7, QF());
            for (int i = 0; i < 6; ++i) r[i] = (mask >> i) & 1 ? -half() : half();
            r[6] = QF::sqrt2(Rat(s, 2));
            rs.roots.push_back(r);
          }
        }
        // (0, ..., 0, +-sqrt2).
        for (int s : {1, -1}) {
          QVec r(7, QF());
          r[6] = QF::sqrt2(Rat(s));
          rs.roots.push_back(r);
        }
      } else {
        // D5 embedded in the first five coordinates.
        auto d5 = classical_pairs(5, false, QF(0));
        for (auto& r : d5) {
          r.push_back(QF(0));
          rs.roots.push_back(r);
        }
        // (+-1/2, ..., +-1/2, +-sqrt3/2), odd number of plus signs in all
        // six coordinates.
        for (int mask = 0; mask < 32; ++mask) {
          for (int s : {1, -1}) {
            int plus = (5 - __builtin_popcount(mask)) + (s > 0 ? 1 : 0);
            if (plus % 2 == 0) continue;
            QVec r(6, QF());
            for (int i = 0; i < 5; ++i) r[i] = (mask >> i) & 1 ? -half() : half();
            r[5] = QF::sqrt3(Rat(s, 2));
            rs.roots.push_back(r);
          }
        }
      }
      break;
    }
    default:
      throw std::invalid_argument("unknown root system family");
  }

  if ((long long)rs.roots.size() != expected_count(family, rank))
    throw std::logic_error("root system " + rs.label + " has wrong cardinality");

  for (size_t i = 0; i < rs.roots.size(); ++i) {
    int s = 0;
    for (const QF& v : rs.roots[i]) {
      s = sign_of(v);
      if (s) break;
    }
    if (s > 0) rs.positive.push_back(static_cast<int>(i));
  }
  if (rs.positive.size() * 2 != rs.roots.size())
    throw std::logic_error("root system " + rs.label + " is not negation-closed");
  return rs;
}

RootSystem RootSystem::parse(const std::string& spec) {
  if (spec.size() < 2) throw std::invalid_argument("bad root system spec '" + spec + "'");
  char fam = spec[0];
  int rank = 0;
  try {
    size_t used = 0;
    rank = std::stoi(spec.substr(1), &used);
    if (used != spec.size() - 1) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw std::invalid_argument("bad root system spec '" + spec + "'");
  }
  return build(fam, rank);
}

long long count_nonorthogonal(const RootSystem& rs, const QVec& u, const QVec& x) {
  if ((int)u.size() != rs.ambient || (int)x.size() != rs.ambient)
    throw std::invalid_argument("direction has wrong ambient dimension");
  if (is_zero_vector(u) || is_zero_vector(x))
    throw std::invalid_argument("directions must be nonzero");
  if (rs.family == 'A') {
    QVec ones(rs.ambient, QF(1));
    if (!dot(ones, u).is_zero() || !dot(ones, x).is_zero())
      throw std::invalid_argument("type A directions must lie in the trace-zero hyperplane");
  }
  long long count = 0;
  for (int p : rs.positive) {
    if (dot(rs.roots[p], u).is_zero()) continue;
    if (dot(rs.roots[p], x).is_zero()) continue;
    count += 2;
  }
  return count;
}

// ---------------------------------------------------------------------------
// Intersection-lattice enumeration for the exhaustive scan.
// ---------------------------------------------------------------------------

namespace {

struct FlatRec {
  std::uint64_t zset = 0;
  std::vector<QVec> basis;  // exact basis of the flat
  QVec rep;                 // generic point: Z(rep) == zset
};

struct Lattice {
  const RootSystem& rs;
  std::vector<QVec> constraint_tail;  // extra rows (type A: the ones vector)
  std::vector<FlatRec> flats;

  explicit Lattice(const RootSystem& r) : rs(r) {
    if (rs.positive.size() > 64)
      throw std::invalid_argument(
          "exhaustive-directions scan supports at most 64 positive roots (type " + rs.label +
          " has " + std::to_string(rs.positive.size()) + ")");
    if (rs.family == 'A') constraint_tail.push_back(QVec(rs.ambient, QF(1)));
    enumerate();
  }

  std::vector<QVec> nullspace_of(std::uint64_t z) const {
    std::vector<QVec> rows = constraint_tail;
    for (size_t k = 0; k < rs.positive.size(); ++k)
      if ((z >> k) & 1) rows.push_back(rs.roots[rs.positive[k]]);
    return exact_nullspace(rows, rs.ambient);
  }

  std::uint64_t closure_of(const std::vector<QVec>& basis) const {
    std::uint64_t z = 0;
    for (size_t k = 0; k < rs.positive.size(); ++k) {
      bool orth = true;
      for (const QVec& b : basis)
        if (!dot(rs.roots[rs.positive[k]], b).is_zero()) {
          orth = false;
          break;
        }
      if (orth) z |= (1ULL << k);
    }
    return z;
  }

  std::uint64_t zset_of_point(const QVec& p) const {
    std::uint64_t z = 0;
    for (size_t k = 0; k < rs.positive.size(); ++k)
      if (dot(rs.roots[rs.positive[k]], p).is_zero()) z |= (1ULL << k);
    return z;
  }

  QVec representative(const FlatRec& f) const {
    const int k = static_cast<int>(f.basis.size());
    for (int radius = 1; radius <= 5; ++radius) {
      std::vector<int> coef(k, -radius);
      while (true) {
        bool at_radius = false;
        for (int c : coef)
          if (c == radius || c == -radius) at_radius = true;
        if (at_radius) {
          QVec p(rs.ambient, QF());
          for (int i = 0; i < k; ++i)
            if (coef[i] != 0)
              for (int j = 0; j < rs.ambient; ++j)
                p[j] = p[j] + QF(coef[i]) * f.basis[i][j];
          if (!is_zero_vector(p) && zset_of_point(p) == f.zset)
            return primitive_integer_vector(p);
        }
        int i = 0;
        while (i < k && coef[i] == radius) coef[i++] = -radius;
        if (i == k) break;
        ++coef[i];
      }
    }
    throw std::logic_error("no generic representative found on a flat of " + rs.label);
  }

  void enumerate() {
    std::map<std::uint64_t, int> seen;
    // Adds the closure of the requested z-set; returns its index and
    // whether it was newly created. Flats of dimension 0 are dropped (the
    // scan arguments must be nonzero).
    auto add = [&](std::uint64_t z_request) -> std::pair<int, bool> {
      auto basis = nullspace_of(z_request);
      if (basis.empty()) return {-1, false};
      std::uint64_t z = closure_of(basis);
      auto it = seen.find(z);
      if (it != seen.end()) return {it->second, false};
      FlatRec f;
      f.zset = z;
      f.basis = std::move(basis);
      f.rep = representative(f);
      flats.push_back(std::move(f));
      int idx = static_cast<int>(flats.size()) - 1;
      seen[z] = idx;
      return {idx, true};
    };

    auto [first, created] = add(0);
    if (first < 0) throw std::logic_error("empty ambient space");
    std::vector<int> queue = {first};
    while (!queue.empty()) {
      int idx = queue.back();
      queue.pop_back();
      std::uint64_t z = flats[idx].zset;
      for (size_t k = 0; k < rs.positive.size(); ++k) {
        if ((z >> k) & 1) continue;
        auto [child, fresh] = add(z | (1ULL << k));
        if (fresh) queue.push_back(child);
      }
    }
  }
};

}  // namespace

ScanReport assertion_scan_exhaustive(const RootSystem& rs) {
  if (rs.rank < 2) throw std::invalid_argument("assertion scan needs rank >= 2");
  Lattice lat(rs);
  const long long total = static_cast<long long>(rs.roots.size());
  const int nf = static_cast<int>(lat.flats.size());

  ScanReport rep;
  rep.strategy = "exhaustive-directions";
  rep.samples = static_cast<long long>(nf) * nf;
  rep.seed = 0;
  rep.flats = nf;
  rep.expected_min = rs.family == 'A' ? 2 : 4;
  rep.min_count = total;
  rep.certified = true;

  for (int i = 0; i < nf; ++i)
    for (int j = i; j < nf; ++j) {
      long long cnt =
          total - 2LL * __builtin_popcountll(lat.flats[i].zset | lat.flats[j].zset);
      if (cnt < rep.min_count) {
        rep.min_count = cnt;
        rep.argmin_u = lat.flats[i].rep;
        rep.argmin_x = lat.flats[j].rep;
        rep.minimizing_pairs.clear();
        rep.minimizing_pair_count = 0;
      }
      if (cnt == rep.min_count) {
        ++rep.minimizing_pair_count;
        if (rep.minimizing_pairs.size() < 256)
          rep.minimizing_pairs.emplace_back(lat.flats[i].rep, lat.flats[j].rep);
      }
    }
  rep.pass = rs.family == 'A' ? (rep.min_count == rep.expected_min)
                              : (rep.min_count >= rep.expected_min);
  return rep;
}

ScanReport assertion_scan_random(const RootSystem& rs, long long samples, std::uint64_t seed) {
  if (rs.rank < 2) throw std::invalid_argument("assertion scan needs rank >= 2");
  if (samples < 1) throw std::invalid_argument("need at least one sample");

  const int amb = rs.ambient;
  const size_t npos = rs.positive.size();
  std::vector<QIVec> pos_qi(npos);
  for (size_t k = 0; k < npos; ++k) pos_qi[k] = qi_vector(rs.roots[rs.positive[k]]);

  Rng rng(seed);

  auto generic_sample = [&]() -> QVec {
    while (true) {
      if (rs.family == 'A') {
        std::vector<long long> w(amb);
        long long sum = 0;
        for (int i = 0; i < amb; ++i) {
          w[i] = static_cast<long long>(rng.below(19)) - 9;
          sum += w[i];
        }
        QVec p(amb);
        bool nonzero = false;
        for (int i = 0; i < amb; ++i) {
          long long val = amb * w[i] - sum;
          p[i] = QF(val);
          nonzero |= (val != 0);
        }
        if (nonzero) return p;
      } else {
        QVec p(amb);
        bool nonzero = false;
        for (int i = 0; i < amb; ++i) {
          long long val = static_cast<long long>(rng.below(19)) - 9;
          p[i] = QF(val);
          nonzero |= (val != 0);
        }
        if (nonzero) return p;
      }
    }
  };

  auto stratified_sample = [&]() -> QVec {
    int k = 1 + static_cast<int>(rng.below(std::max(1, rs.rank - 1)));
    std::vector<QVec> rows;
    if (rs.family == 'A') rows.push_back(QVec(amb, QF(1)));
    for (int t = 0; t < k; ++t) rows.push_back(rs.roots[rs.positive[rng.below(npos)]]);
    auto basis = exact_nullspace(rows, amb);
    if (basis.empty()) return generic_sample();
    for (int attempt = 0; attempt < 8; ++attempt) {
      QVec p(amb, QF());
      bool any = false;
      for (const QVec& b : basis) {
        long long c = static_cast<long long>(rng.below(7)) - 3;
        if (c == 0) continue;
        any = true;
        for (int j = 0; j < amb; ++j) p[j] = p[j] + QF(c) * b[j];
      }
      if (any && !is_zero_vector(p)) return p;
    }
    return generic_sample();
  };

  ScanReport rep;
  rep.strategy = "random";
  rep.samples = samples;
  rep.seed = seed;
  rep.expected_min = rs.family == 'A' ? 2 : 4;
  rep.min_count = static_cast<long long>(rs.roots.size());
  rep.certified = false;
  rep.argmin_u = QVec(amb, QF());
  rep.argmin_x = QVec(amb, QF());
  bool have_argmin = false;

  for (long long s = 0; s < samples; ++s) {
    QVec u = rng.below(2) ? stratified_sample() : generic_sample();
    QVec x = rng.below(2) ? stratified_sample() : generic_sample();
    QIVec uq = qi_vector(u);
    QIVec xq = qi_vector(x);
    long long cnt = 0;
    bool aborted = false;
    for (size_t kk = 0; kk < npos; ++kk) {
      if (!qi_dot_nonzero(pos_qi[kk], uq)) continue;
      if (!qi_dot_nonzero(pos_qi[kk], xq)) continue;
      cnt += 2;
      if (have_argmin && cnt >= rep.min_count) {
        aborted = true;
        break;
      }
    }
    if (!aborted && (!have_argmin || cnt < rep.min_count)) {
      rep.min_count = cnt;
      rep.argmin_u = primitive_integer_vector(u);
      rep.argmin_x = primitive_integer_vector(x);
      have_argmin = true;
    }
  }
  rep.minimizing_pair_count = 1;
  rep.minimizing_pairs.emplace_back(rep.argmin_u, rep.argmin_x);
  rep.pass = rs.family == 'A' ? (rep.min_count == rep.expected_min)
                              : (rep.min_count >= rep.expected_min);
  return rep;
}

ScanReport assertion_scan(const RootSystem& rs, const std::string& strategy,
                          long long samples, std::uint64_t seed) {
  if (strategy == "exhaustive-directions" || strategy == "exhaustive")
    return assertion_scan_exhaustive(rs);
  if (strategy == "random") return assertion_scan_random(rs, samples, seed);
  throw std::invalid_argument("unknown scan strategy '" + strategy +
                              "' (want random or exhaustive-directions)");
}

BracketDimReport bracket_dim_crosscheck(int n, const std::vector<long long>& u_diag,
                                        const std::vector<long long>& x_diag) {
  if (n < 1) throw std::invalid_argument("bracket_dim_crosscheck needs n >= 1");
  if ((int)u_diag.size() != n + 1 || (int)x_diag.size() != n + 1)
    throw std::invalid_argument("diagonal vectors must have length n+1");
  long long su = 0, sx = 0;
  for (int i = 0; i <= n; ++i) {
    su += u_diag[i];
    sx += x_diag[i];
  }
  if (su != 0 || sx != 0)
    throw std::invalid_argument("diagonal vectors must be trace-free");

  RootSystem rs = RootSystem::build('A', n);
  QVec u(n + 1), x(n + 1);
  for (int i = 0; i <= n; ++i) {
    u[i] = QF(u_diag[i]);
    x[i] = QF(x_diag[i]);
  }

  BracketDimReport out;
  out.root_count = count_nonorthogonal(rs, u, x);

  CompactLieAlgebra g = CompactLieAlgebra::su(n + 1);
  Eigen::VectorXd uw(n + 1), xw(n + 1);
  for (int i = 0; i <= n; ++i) {
    uw[i] = double(u_diag[i]);
    xw[i] = double(x_diag[i]);
  }
  Eigen::MatrixXd m = g.ad(g.su_diagonal_element(uw)) * g.ad(g.su_diagonal_element(xw));
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  double smax = sv.size() ? sv(0) : 0.0;
  int dim = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (smax > 0 && sv(i) > 1e-9 * smax) ++dim;
  out.bracket_dim = dim;
  out.equal = (out.bracket_dim == out.root_count);
  return out;
}

}  // namespace a12
