#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace a12 {

struct QArithmeticError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Normalized rational on 64-bit integers with overflow-checked arithmetic.
class Rat {
 public:
  Rat() : n_(0), d_(1) {}
  Rat(long long n) : n_(n), d_(1) {}
  Rat(long long n, long long d);

  long long num() const { return n_; }
  long long den() const { return d_; }
  bool is_zero() const { return n_ == 0; }
  int sign() const { return n_ > 0 ? 1 : (n_ < 0 ? -1 : 0); }

  Rat operator-() const;
  Rat operator+(const Rat& o) const;
  Rat operator-(const Rat& o) const;
  Rat operator*(const Rat& o) const;
  Rat operator/(const Rat& o) const;
  bool operator==(const Rat& o) const { return n_ == o.n_ && d_ == o.d_; }
  bool operator!=(const Rat& o) const { return !(*this == o); }

  double to_double() const { return double(n_) / double(d_); }
  std::string to_string() const;

 private:
  long long n_, d_;  // d > 0, gcd(|n|, d) = 1
};

/// Element a + b*sqrt2 + c*sqrt3 + d*sqrt6 of the field Q(sqrt2, sqrt3).
/// Zero tests are exact: the four components vanish together or not at all.
struct QF {
  Rat a, b, c, d;

  QF() = default;
  QF(Rat ra) : a(ra) {}
  QF(long long n) : a(n) {}
  static QF rational(Rat r) { return QF(r); }
  static QF sqrt2(Rat coef = Rat(1));
  static QF sqrt3(Rat coef = Rat(1));
  static QF sqrt6(Rat coef = Rat(1));

  bool is_zero() const { return a.is_zero() && b.is_zero() && c.is_zero() && d.is_zero(); }
  bool is_rational() const { return b.is_zero() && c.is_zero() && d.is_zero(); }
  bool operator==(const QF& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }

  QF operator-() const;
  QF operator+(const QF& o) const;
  QF operator-(const QF& o) const;
  QF operator*(const QF& o) const;
  QF inverse() const;  // throws on zero

  double to_double() const;
  std::string to_string() const;
};

using QVec = std::vector<QF>;

QF dot(const QVec& x, const QVec& y);
bool is_zero_vector(const QVec& x);
std::string to_string(const QVec& x);

/// Exact basis of {v : row . v = 0 for every row}; `cols` is the ambient
/// dimension (rows may be empty).
std::vector<QVec> exact_nullspace(const std::vector<QVec>& rows, int cols);

/// Scales to integer entries (components of every coordinate integral) and
/// divides out the common content; flips sign so the first nonzero
/// component of the first nonzero coordinate is positive.
QVec primitive_integer_vector(const QVec& x);

}  // namespace a12
