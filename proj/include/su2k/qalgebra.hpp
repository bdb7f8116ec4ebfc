#pragma once

// q-deformed SU(2) representation theory at level k: q-integers, q-factorials,
// triangle coefficients, quantum 6j symbols and the derived F- and R-symbols.
//
// Conventions used throughout the library:
//   * Anyon labels are doubled topological spins stored as plain ints
//     (label 1 = spin 1/2, label 2 = spin 1, ...), valid range [0, k].
//   * The deformation parameter is q = exp(2*pi*i / (k+2)).
//   * Spin polynomials such as j(j+1) are evaluated on true (halved) spins;
//     every intermediate stays an exact integer for admissible labels.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "su2k/matrix.hpp"

namespace su2k::qalgebra {

/// Doubled topological spin label (twice the true spin).
using DoubledSpin = int;

/// True iff the fusion j1 x j2 -> j3 is allowed at level k: the truncated
/// Clebsch-Gordan ladder |j1-j2| <= j3 <= min(j1+j2, 2k-j1-j2) with integer
/// total spin. Labels outside [0, k] are never admissible.
inline bool is_admissible(DoubledSpin j1, DoubledSpin j2, DoubledSpin j3, int k) {
  if (j1 < 0 || j2 < 0 || j3 < 0 || j1 > k || j2 > k || j3 > k) return false;
  if ((j1 + j2 + j3) % 2 != 0) return false;
  return j3 >= std::abs(j1 - j2) && j3 <= j1 + j2 && j1 + j2 + j3 <= 2 * k;
}

/// [n]_q = sin(n*pi/(k+2)) / sin(pi/(k+2)); the real closed form of
/// (q^{n/2} - q^{-n/2}) / (q^{1/2} - q^{-1/2}).
inline double q_integer(int n, int k) {
  if (k < 1) throw std::invalid_argument("q_integer: level must be >= 1");
  if (n < 0) throw std::invalid_argument("q_integer: n must be >= 0");
  const double step = std::numbers::pi / (k + 2);
  return std::sin(n * step) / std::sin(step);
}

/// [n]_q! = prod_{m=1..n} [m]_q. Arguments past k+1 would hit the vanishing
/// q-integer [k+2]_q; callers are required to stay inside the truncation.
inline double q_factorial(int n, int k) {
  if (n < 0 || n > k + 1) throw std::domain_error("q_factorial: argument outside [0, k+1]");
  double p = 1.0;
  for (int m = 2; m <= n; ++m) p *= q_integer(m, k);
  return p;
}

/// Triangle coefficient Delta(j1, j2, j3) for an admissible triple.
inline double triangle_delta(DoubledSpin j1, DoubledSpin j2, DoubledSpin j3, int k) {
  if (!is_admissible(j1, j2, j3, k))
    throw std::invalid_argument("triangle_delta: inadmissible triple");
  const int a = (-j1 + j2 + j3) / 2;
  const int b = (j1 - j2 + j3) / 2;
  const int c = (j1 + j2 - j3) / 2;
  const int d = (j1 + j2 + j3) / 2 + 1;
  return std::sqrt(q_factorial(a, k) * q_factorial(b, k) * q_factorial(c, k) / q_factorial(d, k));
}

/// Quantum 6j symbol {j1 j2 j12; j3 j j23}_q. Returns 0 whenever any of the
/// four triangles is fusion-forbidden, so callers may sweep full label grids.
inline double q_six_j(DoubledSpin j1, DoubledSpin j2, DoubledSpin j12, DoubledSpin j3,
                      DoubledSpin j, DoubledSpin j23, int k) {
  if (!is_admissible(j1, j2, j12, k) || !is_admissible(j12, j3, j, k) ||
      !is_admissible(j2, j3, j23, k) || !is_admissible(j1, j23, j, k))
    return 0.0;

  const double pref = triangle_delta(j1, j2, j12, k) * triangle_delta(j12, j3, j, k) *
                      triangle_delta(j2, j3, j23, k) * triangle_delta(j1, j23, j, k);

  // Triangle and quadrilateral sums in true spin units (exact integers).
  const int t1 = (j1 + j2 + j12) / 2;
  const int t2 = (j12 + j3 + j) / 2;
  const int t3 = (j2 + j3 + j23) / 2;
  const int t4 = (j1 + j23 + j) / 2;
  const int s1 = (j1 + j2 + j3 + j) / 2;
  const int s2 = (j1 + j12 + j3 + j23) / 2;
  const int s3 = (j2 + j12 + j + j23) / 2;

  const int z_min = std::max({t1, t2, t3, t4});
  const int z_max = std::min({s1, s2, s3});

  double sum = 0.0;
  for (int z = z_min; z <= z_max; ++z) {
    // [z+1]_q! vanishes once z+1 reaches k+2; those terms contribute nothing.
    if (z + 1 > k + 1) continue;
    const double num = q_factorial(z + 1, k);
    const double den = q_factorial(z - t1, k) * q_factorial(z - t2, k) *
                       q_factorial(z - t3, k) * q_factorial(z - t4, k) *
                       q_factorial(s1 - z, k) * q_factorial(s2 - z, k) *
                       q_factorial(s3 - z, k);
    sum += (z % 2 == 0 ? 1.0 : -1.0) * num / den;
  }
  return pref * sum;
}

/// Exact quarter-integer exponent of q; the phase is evaluated only once, so
/// no floating-point error accumulates while exponents are combined.
struct QExponent {
  std::int64_t quarters = 0;  // exponent of q in units of 1/4

  cplx phase(int k) const {
    const double angle = std::numbers::pi * double(quarters) / (2.0 * (k + 2));
    return {std::cos(angle), std::sin(angle)};
  }
};

/// Exponent of q in R^{j1 j2}_j = (-1)^{j-j1-j2} q^{[j(j+1)-j1(j1+1)-j2(j2+1)]/2},
/// held exactly: with doubled labels, j(j+1) = a(a+2)/4.
inline QExponent r_symbol_exponent(DoubledSpin j1, DoubledSpin j2, DoubledSpin j) {
  const std::int64_t n =
      std::int64_t(j) * (j + 2) - std::int64_t(j1) * (j1 + 2) - std::int64_t(j2) * (j2 + 2);
  // n is even for admissible triples, so n/2 is the exact quarter count.
  return QExponent{n / 2};
}

/// R-symbol: the phase acquired when anyons j1 and j2 exchange inside fusion
/// channel j.
inline cplx r_symbol(DoubledSpin j1, DoubledSpin j2, DoubledSpin j, int k) {
  if (!is_admissible(j1, j2, j, k)) throw std::invalid_argument("r_symbol: inadmissible triple");
  const int sign_exp = (j - j1 - j2) / 2;  // integer for admissible triples
  const double sign = (sign_exp % 2 == 0) ? 1.0 : -1.0;
  return sign * r_symbol_exponent(j1, j2, j).phase(k);
}

/// F-symbol [F^{j1 j2 j3}_j]_{j12, j23}; real in this gauge. Returns 0 for
/// fusion-forbidden label combinations.
inline double f_symbol(DoubledSpin j1, DoubledSpin j2, DoubledSpin j3, DoubledSpin j,
                       DoubledSpin j12, DoubledSpin j23, int k) {
  if (!is_admissible(j1, j2, j12, k) || !is_admissible(j12, j3, j, k) ||
      !is_admissible(j2, j3, j23, k) || !is_admissible(j1, j23, j, k))
    return 0.0;
  const int sign_exp = (j1 + j2 + j3 + j) / 2;
  const double sign = (sign_exp % 2 == 0) ? 1.0 : -1.0;
  return sign * std::sqrt(q_integer(j12 + 1, k) * q_integer(j23 + 1, k)) *
         q_six_j(j1, j2, j12, j3, j, j23, k);
}

/// Memoizing symbol store for one level. All entries are pure functions of
/// (k, labels); the cache only ever hands back the value it first computed,
/// and lookups are serialized, so concurrent readers always observe results
/// bit-identical to a fresh computation.
class SymbolTable {
 public:
  explicit SymbolTable(int level) : level_(level) {
    if (level < 1) throw std::invalid_argument("SymbolTable: level must be >= 1");
    q_int_.resize(std::size_t(level) + 3);
    q_fact_.resize(std::size_t(level) + 2);
    for (int n = 0; n <= level + 2; ++n) q_int_[std::size_t(n)] = qalgebra::q_integer(n, level);
    for (int n = 0; n <= level + 1; ++n) q_fact_[std::size_t(n)] = qalgebra::q_factorial(n, level);
  }

  int level() const { return level_; }

  double q_integer(int n) const {
    if (n >= 0 && n < int(q_int_.size())) return q_int_[std::size_t(n)];
    return qalgebra::q_integer(n, level_);
  }

  double q_factorial(int n) const {
    if (n < 0 || n > level_ + 1) throw std::domain_error("q_factorial: argument outside [0, k+1]");
    return q_fact_[std::size_t(n)];
  }

  double six_j(DoubledSpin j1, DoubledSpin j2, DoubledSpin j12, DoubledSpin j3, DoubledSpin j,
               DoubledSpin j23) const {
    const Key key{j1, j2, j12, j3, j, j23};
    std::scoped_lock lock(mutex_);
    auto it = six_j_.find(key);
    if (it == six_j_.end())
      it = six_j_.emplace(key, qalgebra::q_six_j(j1, j2, j12, j3, j, j23, level_)).first;
    return it->second;
  }

  double f_symbol(DoubledSpin j1, DoubledSpin j2, DoubledSpin j3, DoubledSpin j, DoubledSpin j12,
                  DoubledSpin j23) const {
    const Key key{j1, j2, j3, j, j12 + 64, j23 + 64};  // keyspace disjoint from six_j
    std::scoped_lock lock(mutex_);
    auto it = f_.find(key);
    if (it == f_.end())
      it = f_.emplace(key, qalgebra::f_symbol(j1, j2, j3, j, j12, j23, level_)).first;
    return it->second;
  }

  cplx r_symbol(DoubledSpin j1, DoubledSpin j2, DoubledSpin j) const {
    const std::array<int, 3> key{j1, j2, j};
    std::scoped_lock lock(mutex_);
    auto it = r_.find(key);
    if (it == r_.end()) it = r_.emplace(key, qalgebra::r_symbol(j1, j2, j, level_)).first;
    return it->second;
  }

 private:
  using Key = std::array<int, 6>;

  int level_;
  std::vector<double> q_int_;
  std::vector<double> q_fact_;
  mutable std::mutex mutex_;
  mutable std::map<Key, double> six_j_;
  mutable std::map<Key, double> f_;
  mutable std::map<std::array<int, 3>, cplx> r_;
};

}  // namespace su2k::qalgebra
