#include "a12/qfield.hpp"

#include <array>
#include <cmath>
#include <numeric>

namespace a12 {

namespace {

long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) throw QArithmeticError("integer overflow in add");
  return r;
}

long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw QArithmeticError("integer overflow in mul");
  return r;
}

long long checked_neg(long long a) {
  if (a == INT64_MIN) throw QArithmeticError("integer overflow in negate");
  return -a;
}

}  // namespace

Rat::Rat(long long n, long long d) : n_(n), d_(d) {
  if (d_ == 0) throw QArithmeticError("zero denominator");
  if (d_ < 0) {
    n_ = checked_neg(n_);
    d_ = checked_neg(d_);
  }
  long long g = std::gcd(n_ < 0 ? -n_ : n_, d_);
  if (g > 1) {
    n_ /= g;
    d_ /= g;
  }
}

Rat Rat::operator-() const { return Rat(checked_neg(n_), d_); }

Rat Rat::operator+(const Rat& o) const {
  long long g = std::gcd(d_, o.d_);
  long long lhs = checked_mul(n_, o.d_ / g);
  long long rhs = checked_mul(o.n_, d_ / g);
  return Rat(checked_add(lhs, rhs), checked_mul(d_, o.d_ / g));
}

Rat Rat::operator-(const Rat& o) const { return *this + (-o); }

Rat Rat::operator*(const Rat& o) const {
  Rat x(n_, o.d_);   // cross-reduce first to keep magnitudes small
  Rat y(o.n_, d_);
  return Rat(checked_mul(x.n_, y.n_), checked_mul(x.d_, y.d_));
}

Rat Rat::operator/(const Rat& o) const {
  if (o.is_zero()) throw QArithmeticError("division by zero rational");
  return *this * Rat(o.d_, o.n_);
}

std::string Rat::to_string() const {
  if (d_ == 1) return std::to_string(n_);
  return std::to_string(n_) + "/" + std::to_string(d_);
}

QF QF::sqrt2(Rat coef) {
  QF x;
  x.b = coef;
  return x;
}
QF QF::sqrt3(Rat coef) {
  QF x;
  x.c = coef;
  return x;
}
QF QF::sqrt6(Rat coef) {
  QF x;
  x.d = coef;
  return x;
}

QF QF::operator-() const {
  QF x;
  x.a = -a;
  x.b = -b;
  x.c = -c;
  x.d = -d;
  return x;
}

QF QF::operator+(const QF& o) const {
  QF x;
  x.a = a + o.a;
  x.b = b + o.b;
  x.c = c + o.c;
  x.d = d + o.d;
  return x;
}

QF QF::operator-(const QF& o) const { return *this + (-o); }

QF QF::operator*(const QF& o) const {
  QF x;
  x.a = a * o.a + Rat(2) * (b * o.b) + Rat(3) * (c * o.c) + Rat(6) * (d * o.d);
  x.b = a * o.b + b * o.a + Rat(3) * (c * o.d + d * o.c);
  x.c = a * o.c + c * o.a + Rat(2) * (b * o.d + d * o.b);
  x.d = a * o.d + d * o.a + b * o.c + c * o.b;
  return x;
}

QF QF::inverse() const {
  if (is_zero()) throw QArithmeticError("inverse of zero field element");
  // Conjugates under sqrt2 -> -sqrt2 and sqrt3 -> -sqrt3.
  QF s2 = *this, s3 = *this, s23 = *this;
  s2.b = -s2.b;
  s2.d = -s2.d;
  s3.c = -s3.c;
  s3.d = -s3.d;
  s23.b = -s23.b;
  s23.c = -s23.c;
  QF prod = s2 * s3 * s23;
  QF norm = *this * prod;
  if (!norm.is_rational() || norm.a.is_zero())
    throw QArithmeticError("field norm failed to collapse to a nonzero rational");
  Rat inv = Rat(1) / norm.a;
  QF out;
  out.a = prod.a * inv;
  out.b = prod.b * inv;
  out.c = prod.c * inv;
  out.d = prod.d * inv;
  return out;
}

double QF::to_double() const {
  static const double r2 = std::sqrt(2.0), r3 = std::sqrt(3.0), r6 = std::sqrt(6.0);
  return a.to_double() + b.to_double() * r2 + c.to_double() * r3 + d.to_double() * r6;
}

std::string QF::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  auto append = [&](const Rat& r, const char* tag) {
    if (r.is_zero()) return;
    std::string piece = r.to_string();
    if (!out.empty() && piece[0] != '-') out += "+";
    out += piece;
    out += tag;
  };
  append(a, "");
  append(b, "*r2");
  append(c, "*r3");
  append(d, "*r6");
  return out;
}

QF dot(const QVec& x, const QVec& y) {
  if (x.size() != y.size()) throw QArithmeticError("dot: length mismatch");
  QF s;
  for (size_t i = 0; i < x.size(); ++i) s = s + x[i] * y[i];
  return s;
}

bool is_zero_vector(const QVec& x) {
  for (const QF& v : x)
    if (!v.is_zero()) return false;
  return true;
}

std::string to_string(const QVec& x) {
  std::string out = "(";
  for (size_t i = 0; i < x.size(); ++i) {
    if (i) out += ",";
    out += x[i].to_string();
  }
  return out + ")";
}

std::vector<QVec> exact_nullspace(const std::vector<QVec>& rows, int cols) {
  std::vector<QVec> m = rows;
  for (const QVec& r : m)
    if (static_cast<int>(r.size()) != cols)
      throw QArithmeticError("nullspace: ragged rows");

  std::vector<int> pivot_col;
  size_t row = 0;
  for (int col = 0; col < cols && row < m.size(); ++col) {
    size_t pivot = row;
    while (pivot < m.size() && m[pivot][col].is_zero()) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[row], m[pivot]);
    QF inv = m[row][col].inverse();
    for (int j = col; j < cols; ++j) m[row][j] = m[row][j] * inv;
    for (size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][col].is_zero()) continue;
      QF f = m[i][col];
      for (int j = col; j < cols; ++j) m[i][j] = m[i][j] - f * m[row][j];
    }
    pivot_col.push_back(col);
    ++row;
  }

  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<QVec> basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    QVec v(cols, QF());
    v[free] = QF(1);
    for (size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

QVec primitive_integer_vector(const QVec& x) {
  long long lcm = 1;
  auto fold_den = [&](const Rat& r) {
    long long d = r.den();
    lcm = checked_mul(lcm / std::gcd(lcm, d), d);
  };
  for (const QF& q : x) {
    fold_den(q.a);
    fold_den(q.b);
    fold_den(q.c);
    fold_den(q.d);
  }
  long long content = 0;
  auto fold_num = [&](const Rat& r, long long scale) {
    long long v = checked_mul(r.num(), scale / r.den());
    content = std::gcd(content, v < 0 ? -v : v);
    return v;
  };
  std::vector<std::array<long long, 4>> ints(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    ints[i][0] = fold_num(x[i].a, lcm);
    ints[i][1] = fold_num(x[i].b, lcm);
    ints[i][2] = fold_num(x[i].c, lcm);
    ints[i][3] = fold_num(x[i].d, lcm);
  }
  if (content == 0) return QVec(x.size(), QF());
  int sign = 0;
  for (const auto& q : ints) {
    for (long long v : q)
      if (v != 0) {
        sign = v > 0 ? 1 : -1;
        break;
      }
    if (sign) break;
  }
  if (sign == 0) sign = 1;
  QVec out(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    QF q;
    q.a = Rat(sign * ints[i][0] / content);
    q.b = Rat(sign * ints[i][1] / content);
    q.c = Rat(sign * ints[i][2] / content);
    q.d = Rat(sign * ints[i][3] / content);
    out[i] = q;
  }
  return out;
}

}  // namespace a12
