#pragma once

// Root data for the orthogonal Lie algebras B_m = so(2m+1) and D_m = so(2m),
// highest-weight bookkeeping, Freudenthal weight multiplicities and characters.
//
// Weights are written in the orthonormal basis eps_1..eps_m of the Cartan
// subalgebra; with this normalization the Casimir eigenvalue of an irreducible
// representation with highest weight L is <L, L + 2 rho>, an integer.

#include <algorithm>
#include <bit>
#include <compare>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "curvspec/error.hpp"
#include "curvspec/rational.hpp"
#include "curvspec/tolerance.hpp"

namespace curvspec::liealg {

enum class Family { B, D };

struct RootSystem {
  Family family = Family::D;
  int rank = 1;

  RootSystem() = default;
  RootSystem(Family f, int m) : family(f), rank(m) {
    if (m < 1) throw DomainError("root system rank must be at least 1");
    if (f == Family::D && m < 2) throw DomainError("D_m requires m >= 2");
  }

  /// Root system of so(n): D_{n/2} for even n, B_{(n-1)/2} for odd n.
  static RootSystem of_so(int n) {
    if (n < 3) throw DomainError("so(n) needs n >= 3");
    return n % 2 == 0 ? RootSystem(Family::D, n / 2) : RootSystem(Family::B, (n - 1) / 2);
  }

  /// n such that this is the root system of so(n).
  int matrix_size() const { return family == Family::D ? 2 * rank : 2 * rank + 1; }

  std::string name() const { return (family == Family::D ? "D" : "B") + std::to_string(rank); }

  friend auto operator<=>(const RootSystem&, const RootSystem&) = default;
};

/// Integral weight in the eps-basis.
struct Weight {
  std::vector<int> coords;

  Weight() = default;
  explicit Weight(std::vector<int> c) : coords(std::move(c)) {}
  Weight(std::initializer_list<int> c) : coords(c) {}

  static Weight zero(int m) { return Weight(std::vector<int>(static_cast<std::size_t>(m), 0)); }

  std::size_t size() const { return coords.size(); }
  int operator[](std::size_t i) const { return coords[i]; }
  int& operator[](std::size_t i) { return coords[i]; }

  /// Same weight with the last coordinate negated.
  Weight conjugate() const {
    Weight w = *this;
    if (!w.coords.empty()) w.coords.back() = -w.coords.back();
    return w;
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(coords[i]);
    }
    return s + ")";
  }

  friend auto operator<=>(const Weight&, const Weight&) = default;
};

/// Label pi_{L,delta} of an irreducible representation of O(n).
/// delta = 0 stands for Ind(V_L) = V_L + V_conj(L) when the last coordinate
/// of L is positive (D family); otherwise delta = +-1.
struct IrrepLabelO {
  Weight weight;
  int delta = 1;

  friend auto operator<=>(const IrrepLabelO&, const IrrepLabelO&) = default;
};

/// Conjugacy data of an element of SO(2m) or SO(2m+1): rotation angles
/// 2*pi*a_j for the fractions a_j (taken mod 1). For the B family the
/// remaining eigenvalue is +1 and does not enter the torus coordinates.
struct RotationElement {
  RatVector angle_fractions;
  bool extra_fixed = false;

  RotationElement() = default;
  explicit RotationElement(RatVector fractions, bool extra = false)
      : angle_fractions(std::move(fractions)), extra_fixed(extra) {
    for (auto& a : angle_fractions) a = frac(a);
  }

  static RotationElement identity(int m, bool extra = false) {
    return RotationElement(RatVector(static_cast<std::size_t>(m), Rational(0)), extra);
  }

  bool is_identity() const {
    return std::all_of(angle_fractions.begin(), angle_fractions.end(),
                       [](const Rational& a) { return a == 0; });
  }

  friend bool operator==(const RotationElement&, const RotationElement&) = default;
};

inline int inner(const std::vector<int>& a, const std::vector<int>& b) {
  int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Positive roots, in eps-coordinates.
inline std::vector<std::vector<int>> positive_roots(const RootSystem& rs) {
  const int m = rs.rank;
  std::vector<std::vector<int>> roots;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      std::vector<int> minus(static_cast<std::size_t>(m), 0), plus(static_cast<std::size_t>(m), 0);
      minus[i] = 1;
      minus[j] = -1;
      plus[i] = 1;
      plus[j] = 1;
      roots.push_back(minus);
      roots.push_back(plus);
    }
  if (rs.family == Family::B)
    for (int i = 0; i < m; ++i) {
      std::vector<int> e(static_cast<std::size_t>(m), 0);
      e[i] = 1;
      roots.push_back(e);
    }
  return roots;
}

/// 2*rho, which is integral in both families.
inline std::vector<int> doubled_rho(const RootSystem& rs) {
  std::vector<int> r(static_cast<std::size_t>(rs.rank), 0);
  for (const auto& a : positive_roots(rs))
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += a[i];
  return r;
}

/// Half-sum of positive roots: (m-1, m-2, ..., 0) for D_m and
/// (m-1/2, ..., 1/2) for B_m.
inline RatVector rho(const RootSystem& rs) {
  RatVector r;
  for (int c : doubled_rho(rs)) r.emplace_back(c, 2);
  return r;
}

inline bool is_dominant(const Weight& w, const RootSystem& rs) {
  if (static_cast<int>(w.size()) != rs.rank) return false;
  const std::size_t m = w.size();
  for (std::size_t i = 0; i + 2 < m; ++i)
    if (w[i] < w[i + 1]) return false;
  if (rs.family == Family::D) {
    if (m >= 2 && w[m - 2] < std::abs(w[m - 1])) return false;
  } else {
    if (m >= 2 && w[m - 2] < w[m - 1]) return false;
    if (w[m - 1] < 0) return false;
  }
  return true;
}

inline void require_dominant(const Weight& w, const RootSystem& rs) {
  if (!is_dominant(w, rs))
    throw DomainError("weight " + w.to_string() + " is not dominant for " + rs.name());
}

/// <L, L + 2 rho>.
inline std::int64_t casimir_eigenvalue(const Weight& w, const RootSystem& rs) {
  require_dominant(w, rs);
  return inner(w.coords, w.coords) + inner(w.coords, doubled_rho(rs));
}

/// Weyl dimension formula: prod over positive roots of <L+rho,a>/<rho,a>.
inline std::int64_t weyl_dimension(const Weight& w, const RootSystem& rs) {
  require_dominant(w, rs);
  const auto two_rho = doubled_rho(rs);
  std::vector<int> shifted(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) shifted[i] = 2 * w[i] + two_rho[i];
  Rational dim(1);
  for (const auto& a : positive_roots(rs)) dim *= Rational(inner(shifted, a), inner(two_rho, a));
  if (!is_integer(dim)) throw IntegralityError("Weyl dimension is not an integer");
  return dim.numerator();
}

/// The dominant element of the Weyl orbit of an integral weight.
inline Weight dominant_conjugate(Weight w, const RootSystem& rs) {
  int negatives = 0;
  bool has_zero = false;
  for (auto& c : w.coords) {
    if (c < 0) ++negatives;
    if (c == 0) has_zero = true;
    c = std::abs(c);
  }
  std::sort(w.coords.begin(), w.coords.end(), std::greater<>());
  if (rs.family == Family::D && !has_zero && negatives % 2 == 1) w.coords.back() = -w.coords.back();
  return w;
}

/// Orbit of a dominant weight under the Weyl group (signed permutations,
/// with an even number of sign changes for D_m).
inline std::vector<Weight> weyl_orbit(const Weight& dominant, const RootSystem& rs) {
  std::vector<int> abs_sorted(dominant.size());
  std::transform(dominant.coords.begin(), dominant.coords.end(), abs_sorted.begin(),
                 [](int c) { return std::abs(c); });
  std::sort(abs_sorted.begin(), abs_sorted.end());
  const bool has_zero = std::find(abs_sorted.begin(), abs_sorted.end(), 0) != abs_sorted.end();
  const int required_parity = (!dominant.coords.empty() && dominant.coords.back() < 0) ? 1 : 0;
  std::vector<Weight> orbit;
  do {
    std::vector<std::size_t> nonzero;
    for (std::size_t i = 0; i < abs_sorted.size(); ++i)
      if (abs_sorted[i] != 0) nonzero.push_back(i);
    const std::size_t patterns = std::size_t{1} << nonzero.size();
    for (std::size_t mask = 0; mask < patterns; ++mask) {
      const int flips = std::popcount(mask);
      if (rs.family == Family::D && !has_zero && flips % 2 != required_parity) continue;
      Weight v(abs_sorted);
      for (std::size_t b = 0; b < nonzero.size(); ++b)
        if (mask & (std::size_t{1} << b)) v[nonzero[b]] = -v[nonzero[b]];
      orbit.push_back(std::move(v));
    }
  } while (std::next_permutation(abs_sorted.begin(), abs_sorted.end()));
  return orbit;
}

/// Weight multiplicities of the irreducible representation with a given
/// highest weight, computed once by Freudenthal's recursion. Immutable.
class WeightTable {
 public:
  WeightTable(const Weight& highest, const RootSystem& rs) : rs_(rs), highest_(highest) {
    require_dominant(highest, rs);
    build_dominant();
    for (const auto& [mu, mult] : dominant_)
      for (auto& w : weyl_orbit(mu, rs_)) all_.emplace_back(std::move(w), mult);
  }

  const RootSystem& root_system() const { return rs_; }
  const Weight& highest_weight() const { return highest_; }

  /// Dominant weights with their multiplicities.
  const std::map<Weight, std::int64_t>& dominant() const { return dominant_; }

  /// Every weight (orbit-expanded) with its multiplicity.
  const std::vector<std::pair<Weight, std::int64_t>>& all() const { return all_; }

  std::int64_t multiplicity(const Weight& w) const {
    auto it = dominant_.find(dominant_conjugate(w, rs_));
    return it == dominant_.end() ? 0 : it->second;
  }

  std::int64_t dimension() const {
    std::int64_t total = 0;
    for (const auto& [w, mult] : all_) total += mult;
    return total;
  }

 private:
  // Coordinates of highest - mu in the simple-root basis, or nothing if
  // highest - mu is not a nonnegative integral combination of simple roots.
  std::optional<std::vector<int>> simple_root_coordinates(const std::vector<int>& mu) const {
    const std::size_t m = mu.size();
    std::vector<int> d(m), partial(m);
    int run = 0;
    for (std::size_t i = 0; i < m; ++i) {
      d[i] = highest_[i] - mu[i];
      run += d[i];
      partial[i] = run;
    }
    std::vector<int> c(m);
    if (rs_.family == Family::B) {
      c = partial;
    } else {
      for (std::size_t i = 0; i + 2 < m; ++i) c[i] = partial[i];
      const int a = partial[m - 2] - d[m - 1];
      const int b = partial[m - 1];
      if (a % 2 != 0 || b % 2 != 0) return std::nullopt;
      c[m - 2] = a / 2;
      c[m - 1] = b / 2;
    }
    for (int x : c)
      if (x < 0) return std::nullopt;
    return c;
  }

  void enumerate_dominant(std::vector<int>& current, std::size_t pos,
                          std::vector<std::pair<int, Weight>>& out) const {
    const std::size_t m = current.size();
    if (pos == m) {
      if (auto c = simple_root_coordinates(current)) {
        const int height = std::accumulate(c->begin(), c->end(), 0);
        out.emplace_back(height, Weight(current));
      }
      return;
    }
    const int upper = pos == 0 ? highest_[0] : current[pos - 1];
    int lower = 0;
    if (pos == m - 1 && rs_.family == Family::D) lower = -upper;
    for (int v = upper; v >= lower; --v) {
      current[pos] = v;
      enumerate_dominant(current, pos + 1, out);
    }
  }

  void build_dominant() {
    const std::size_t m = highest_.size();
    std::vector<std::pair<int, Weight>> candidates;
    std::vector<int> current(m, 0);
    enumerate_dominant(current, 0, candidates);
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });

    const auto roots = positive_roots(rs_);
    const auto two_rho = doubled_rho(rs_);
    const int top = inner(highest_.coords, highest_.coords) + inner(highest_.coords, two_rho);

    for (const auto& [height, mu] : candidates) {
      if (height == 0) {
        dominant_[mu] = 1;
        continue;
      }
      const int denom = top - inner(mu.coords, mu.coords) - inner(mu.coords, two_rho);
      std::int64_t numer = 0;
      for (const auto& alpha : roots) {
        std::vector<int> nu = mu.coords;
        while (true) {
          for (std::size_t i = 0; i < m; ++i) nu[i] += alpha[i];
          auto it = dominant_.find(dominant_conjugate(Weight(nu), rs_));
          if (it == dominant_.end()) break;
          numer += it->second * inner(nu, alpha);
        }
      }
      numer *= 2;
      if (denom <= 0 || numer % denom != 0)
        throw IntegralityError("Freudenthal recursion produced a non-integral multiplicity");
      const std::int64_t mult = numer / denom;
      if (mult > 0) dominant_[mu] = mult;
    }
  }

  RootSystem rs_;
  Weight highest_;
  std::map<Weight, std::int64_t> dominant_;
  std::vector<std::pair<Weight, std::int64_t>> all_;
};

/// Shared, thread-safe memo of weight tables.
inline std::shared_ptr<const WeightTable> cached_weight_table(const Weight& highest,
                                                              const RootSystem& rs) {
  static std::mutex mutex;
  static std::map<std::pair<RootSystem, Weight>, std::shared_ptr<const WeightTable>> cache;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find({rs, highest});
    if (it != cache.end()) return it->second;
  }
  auto table = std::make_shared<const WeightTable>(highest, rs);
  std::lock_guard lock(mutex);
  return cache.emplace(std::make_pair(rs, highest), std::move(table)).first->second;
}

/// Full weight -> multiplicity table.
inline std::map<Weight, std::int64_t> weight_multiplicities(const Weight& w, const RootSystem& rs) {
  const auto table = cached_weight_table(w, rs);
  std::map<Weight, std::int64_t> out;
  for (const auto& [mu, mult] : table->all()) out[mu] += mult;
  return out;
}

/// Character sum_mu m_mu exp(2 pi i <mu, a>) of a weight table at a rotation.
inline std::complex<double> character(const WeightTable& table, const RotationElement& g) {
  const auto& fractions = g.angle_fractions;
  if (static_cast<int>(fractions.size()) != table.root_system().rank)
    throw DomainError("rotation element has the wrong number of angles");
  std::int64_t denom = 1;
  for (const auto& a : fractions) denom = std::lcm(denom, a.denominator());
  std::vector<std::int64_t> numer(fractions.size());
  for (std::size_t j = 0; j < fractions.size(); ++j)
    numer[j] = fractions[j].numerator() * (denom / fractions[j].denominator());
  // Histogram of phase indices, then one pass over the roots of unity.
  std::vector<std::int64_t> counts(static_cast<std::size_t>(denom), 0);
  for (const auto& [mu, mult] : table.all()) {
    std::int64_t idx = 0;
    for (std::size_t j = 0; j < numer.size(); ++j) idx += mu[j] * numer[j];
    idx %= denom;
    if (idx < 0) idx += denom;
    counts[static_cast<std::size_t>(idx)] += mult;
  }
  std::complex<double> sum = 0.0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] == 0) continue;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(denom);
    sum += static_cast<double>(counts[k]) * std::polar(1.0, angle);
  }
  return sum;
}

/// Character of the SO(n) representation with highest weight w.
inline std::complex<double> character_so(const Weight& w, const RotationElement& g,
                                         const RootSystem& rs) {
  return character(*cached_weight_table(w, rs), g);
}

inline void validate_label(const IrrepLabelO& label, const RootSystem& rs) {
  require_dominant(label.weight, rs);
  const int last = label.weight.coords.back();
  if (rs.family == Family::D) {
    if (last < 0)
      throw DomainError("O(2m) labels use a nonnegative last coordinate; got " +
                        label.weight.to_string());
    if (last > 0 && label.delta != 0)
      throw DomainError("delta must be 0 when the last coordinate is positive");
    if (last == 0 && label.delta != 1 && label.delta != -1)
      throw DomainError("delta must be +-1 when the last coordinate is zero");
  } else if (label.delta != 1 && label.delta != -1) {
    throw DomainError("delta must be +-1 for O(2m+1)");
  }
}

/// Character of pi_{L,delta} at an element of the identity component.
/// Elements outside SO(n) need the intertwiner sign convention, which is
/// not implemented.
inline std::complex<double> character_o(const IrrepLabelO& label, const RotationElement& g,
                                        bool in_identity_component, const RootSystem& rs) {
  if (!in_identity_component)
    throw UnsupportedError("characters at orientation-reversing elements are not supported");
  validate_label(label, rs);
  auto value = character_so(label.weight, g, rs);
  if (label.delta == 0) value += character_so(label.weight.conjugate(), g, rs);
  return value;
}

/// Dimension of pi_{L,delta}.
inline std::int64_t dimension_o(const IrrepLabelO& label, const RootSystem& rs) {
  validate_label(label, rs);
  const auto d = weyl_dimension(label.weight, rs);
  return label.delta == 0 ? 2 * d : d;
}

namespace detail {

// Newton's identities: elementary symmetric functions from power traces.
template <class Scalar, class Matrix>
std::vector<Scalar> elementary_from_matrix(const Matrix& b) {
  const std::size_t n = b.size();
  std::vector<Scalar> power_traces(n + 1, Scalar(0));
  Matrix power = b;
  for (std::size_t k = 1; k <= n; ++k) {
    Scalar t(0);
    for (std::size_t i = 0; i < n; ++i) t += power[i][i];
    power_traces[k] = t;
    if (k < n) {
      Matrix next(n, typename Matrix::value_type(n, Scalar(0)));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l) {
          if (power[i][l] == Scalar(0)) continue;
          for (std::size_t j = 0; j < n; ++j) next[i][j] += power[i][l] * b[l][j];
        }
      power = std::move(next);
    }
  }
  std::vector<Scalar> e(n + 1, Scalar(0));
  e[0] = Scalar(1);
  for (std::size_t k = 1; k <= n; ++k) {
    Scalar s(0);
    for (std::size_t i = 1; i <= k; ++i) {
      const Scalar term = e[k - i] * power_traces[i];
      if (i % 2 == 1)
        s += term;
      else
        s -= term;
    }
    e[k] = s / Scalar(static_cast<std::int64_t>(k));
  }
  return e;
}

}  // namespace detail

inline bool is_orthogonal(const RatMatrix& b) {
  if (!is_square(b)) return false;
  return multiply(transpose(b), b) == identity_matrix(b.size());
}

inline bool is_orthogonal(const std::vector<std::vector<double>>& b, double tol = 1e-9) {
  const std::size_t n = b.size();
  for (const auto& row : b)
    if (row.size() != n) return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += b[k][i] * b[k][j];
      if (std::abs(s - (i == j ? 1.0 : 0.0)) > tol) return false;
    }
  return true;
}

/// tr(Lambda^p B) for p = 0..n, i.e. the elementary symmetric functions of
/// the eigenvalues of an orthogonal matrix, exactly.
inline RatVector exterior_traces(const RatMatrix& b) {
  if (!is_orthogonal(b)) throw DomainError("exterior_trace needs an orthogonal matrix");
  return detail::elementary_from_matrix<Rational>(b);
}

inline Rational exterior_trace(const RatMatrix& b, int p) {
  if (p < 0 || p > static_cast<int>(b.size())) throw DomainError("degree out of range");
  return exterior_traces(b)[static_cast<std::size_t>(p)];
}

inline double exterior_trace(const std::vector<std::vector<double>>& b, int p) {
  if (!is_orthogonal(b)) throw DomainError("exterior_trace needs an orthogonal matrix");
  if (p < 0 || p > static_cast<int>(b.size())) throw DomainError("degree out of range");
  return detail::elementary_from_matrix<double>(b)[static_cast<std::size_t>(p)];
}

/// Degrees q with sigma_q inside the restriction of tau_p from O(n) to O(n-1).
inline std::vector<int> branch_taup(int n, int p) {
  if (p < 0 || p > n) throw DomainError("degree out of range");
  std::vector<int> out;
  if (p <= n - 1) out.push_back(p);
  if (p - 1 >= 0) out.push_back(p - 1);
  return out;
}

}  // namespace curvspec::liealg
