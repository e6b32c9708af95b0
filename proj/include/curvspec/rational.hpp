#pragma once

// Exact rational scalars, vectors and small dense matrices.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "curvspec/error.hpp"

// Boost 1.74 defines rational-vs-integer equality as a template that, under
// C++20 reversed comparison candidates, resolves to itself and recurses.
// Exact non-template overloads win overload resolution and break the cycle.
namespace boost {
#define CURVSPEC_RATIONAL_EQ(Int)                                                                         \
  inline bool operator==(const rational<std::int64_t>& a, Int b) { return a == rational<std::int64_t>(b); } \
  inline bool operator==(Int b, const rational<std::int64_t>& a) { return a == rational<std::int64_t>(b); }
CURVSPEC_RATIONAL_EQ(int)
CURVSPEC_RATIONAL_EQ(long)
CURVSPEC_RATIONAL_EQ(long long)
#undef CURVSPEC_RATIONAL_EQ
}  // namespace boost

namespace curvspec {

using Rational = boost::rational<std::int64_t>;
using RatVector = std::vector<Rational>;
using RatMatrix = std::vector<RatVector>;

/// Parses "p", "-p" or "p/q". Throws ParseError on malformed input or q == 0.
inline Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) -> std::int64_t {
    if (s.empty()) throw ParseError("malformed rational '" + std::string(text) + "'");
    std::size_t i = 0;
    bool negative = false;
    if (s[0] == '-' || s[0] == '+') {
      negative = s[0] == '-';
      i = 1;
    }
    if (i == s.size()) throw ParseError("malformed rational '" + std::string(text) + "'");
    std::int64_t value = 0;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9')
        throw ParseError("malformed rational '" + std::string(text) + "'");
      if (value > (INT64_MAX - 9) / 10)
        throw ParseError("rational out of range '" + std::string(text) + "'");
      value = value * 10 + (s[i] - '0');
    }
    return negative ? -value : value;
  };
  auto trimmed = text;
  while (!trimmed.empty() && trimmed.front() == ' ') trimmed.remove_prefix(1);
  while (!trimmed.empty() && trimmed.back() == ' ') trimmed.remove_suffix(1);
  auto slash = trimmed.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(trimmed));
  std::int64_t num = parse_int(trimmed.substr(0, slash));
  std::int64_t den = parse_int(trimmed.substr(slash + 1));
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline bool is_integer(const Rational& r) { return r.denominator() == 1; }

inline std::int64_t floor(const Rational& r) {
  std::int64_t q = r.numerator() / r.denominator();
  if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
  return q;
}

/// Representative of r mod 1 in [0, 1).
inline Rational frac(const Rational& r) { return r - Rational(floor(r)); }

/// Largest s >= 0 with s*s <= v.
inline std::int64_t isqrt(std::int64_t v) {
  if (v < 0) throw DomainError("isqrt of negative value");
  auto s = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(v)));
  while (s > 0 && s * s > v) --s;
  while ((s + 1) * (s + 1) <= v) ++s;
  return s;
}

inline RatMatrix identity_matrix(std::size_t n) {
  RatMatrix m(n, RatVector(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline RatMatrix transpose(const RatMatrix& a) {
  if (a.empty()) return {};
  RatMatrix t(a[0].size(), RatVector(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

inline RatMatrix multiply(const RatMatrix& a, const RatMatrix& b) {
  const std::size_t rows = a.size();
  const std::size_t inner = b.size();
  const std::size_t cols = inner ? b[0].size() : 0;
  RatMatrix c(rows, RatVector(cols, Rational(0)));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

inline RatVector multiply(const RatMatrix& a, const RatVector& v) {
  RatVector out(a.size(), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
  return out;
}

/// Row vector times matrix.
inline RatVector multiply(const RatVector& v, const RatMatrix& a) {
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  RatVector out(cols, Rational(0));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < cols; ++j) out[j] += v[i] * a[i][j];
  }
  return out;
}

inline Rational dot(const RatVector& a, const RatVector& b) {
  Rational s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline RatVector add(RatVector a, const RatVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

inline RatVector subtract(RatVector a, const RatVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

inline bool is_square(const RatMatrix& a) {
  for (const auto& row : a)
    if (row.size() != a.size()) return false;
  return true;
}

/// Gauss-Jordan inverse. Throws DomainError if singular.
inline RatMatrix inverse(RatMatrix a) {
  const std::size_t n = a.size();
  if (!is_square(a)) throw DomainError("inverse of a non-square matrix");
  RatMatrix inv = identity_matrix(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw DomainError("singular matrix");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    const Rational scale = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= scale;
      inv[col][j] /= scale;
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == 0) continue;
      const Rational f = a[row][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[row][j] -= f * a[col][j];
        inv[row][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

inline Rational determinant(RatMatrix a) {
  const std::size_t n = a.size();
  Rational det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return Rational(0);
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t row = col + 1; row < n; ++row) {
      if (a[row][col] == 0) continue;
      const Rational f = a[row][col] / a[col][col];
      for (std::size_t j = col; j < n; ++j) a[row][j] -= f * a[col][j];
    }
  }
  return det;
}

inline std::int64_t lcm_of_denominators(const RatMatrix& a) {
  std::int64_t l = 1;
  for (const auto& row : a)
    for (const auto& x : row) l = std::lcm(l, x.denominator());
  return l;
}

inline bool is_integral(const RatVector& v) {
  for (const auto& x : v)
    if (!is_integer(x)) return false;
  return true;
}

inline bool is_integral(const RatMatrix& a) {
  for (const auto& row : a)
    if (!is_integral(row)) return false;
  return true;
}

namespace detail {

// Integer row echelon basis (Hermite-style) of the Z-span of the rows.
inline std::vector<std::vector<std::int64_t>> integer_row_basis(
    std::vector<std::vector<std::int64_t>> rows, std::size_t cols) {
  std::vector<std::vector<std::int64_t>> basis;
  for (std::size_t col = 0; col < cols && !rows.empty(); ++col) {
    // Euclid on column `col` across the remaining rows.
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        if (best == rows.size() || std::llabs(rows[r][col]) < std::llabs(rows[best][col]))
          best = r;
      }
      if (best == rows.size()) break;
      bool reduced = false;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (r == best || rows[r][col] == 0) continue;
        const std::int64_t q = rows[r][col] / rows[best][col];
        for (std::size_t j = 0; j < cols; ++j) rows[r][j] -= q * rows[best][j];
        reduced = true;
      }
      bool others_zero = true;
      for (std::size_t r = 0; r < rows.size(); ++r)
        if (r != best && rows[r][col] != 0) others_zero = false;
      if (others_zero) {
        if (rows[best][col] < 0)
          for (auto& x : rows[best]) x = -x;
        basis.push_back(rows[best]);
        rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(best));
        break;
      }
      if (!reduced) break;
    }
  }
  return basis;
}

}  // namespace detail

/// Whether v lies in the Z-span of the given generator rows (exact).
inline bool in_integer_span(const RatMatrix& generators, const RatVector& v) {
  const std::size_t cols = v.size();
  RatMatrix all = generators;
  all.push_back(v);
  const std::int64_t scale = lcm_of_denominators(all);
  auto to_int = [&](const RatVector& row) {
    std::vector<std::int64_t> out(cols);
    for (std::size_t j = 0; j < cols; ++j) {
      const Rational x = row[j] * Rational(scale);
      out[j] = x.numerator();
    }
    return out;
  };
  std::vector<std::vector<std::int64_t>> rows;
  for (const auto& g : generators) rows.push_back(to_int(g));
  auto basis = detail::integer_row_basis(std::move(rows), cols);
  auto target = to_int(v);
  // Basis rows are in echelon form: reduce the target greedily.
  for (const auto& b : basis) {
    std::size_t lead = 0;
    while (lead < cols && b[lead] == 0) ++lead;
    if (target[lead] % b[lead] != 0) return false;
    const std::int64_t q = target[lead] / b[lead];
    for (std::size_t j = 0; j < cols; ++j) target[j] -= q * b[j];
  }
  for (auto x : target)
    if (x != 0) return false;
  return true;
}

}  // namespace curvspec
