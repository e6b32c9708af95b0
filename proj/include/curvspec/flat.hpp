#pragma once

// Compact flat manifolds Gamma \ R^n for Bieberbach groups Gamma.
//
// A group is stored as its translation lattice L together with one
// representative (B, b) per element of the point group F, where (B, b) acts
// by x -> B(x + b). The multiplicity of the eigenvalue 4 pi^2 mu of the
// Hodge-Laplacian on p-forms is
//   d_mu(p) = |F|^-1 sum_{(B,b)} tr(Lambda^p B) sum_{v in L*, |v|^2 = mu, Bv = v} exp(-2 pi i v.b).
// All lattice algebra is exact; only the final phase sum is floating point.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "curvspec/error.hpp"
#include "curvspec/liealg.hpp"
#include "curvspec/rational.hpp"
#include "curvspec/tolerance.hpp"

namespace curvspec::flat {

/// Full-rank lattice spanned by the rows of a rational basis matrix.
class Lattice {
 public:
  explicit Lattice(RatMatrix basis) : basis_(std::move(basis)) {
    if (basis_.empty() || !is_square(basis_)) throw InvariantError("lattice basis must be square");
    if (determinant(basis_) == 0) throw InvariantError("lattice basis is singular");
    inverse_ = inverse(basis_);
  }

  static Lattice integer(std::size_t n) { return Lattice(identity_matrix(n)); }

  std::size_t dimension() const { return basis_.size(); }
  const RatMatrix& basis() const { return basis_; }

  /// Coordinates of v with respect to the basis rows.
  RatVector coordinates(const RatVector& v) const { return multiply(v, inverse_); }

  bool contains(const RatVector& v) const { return is_integral(coordinates(v)); }

  /// Representative of v mod L with lattice coordinates in [0, 1).
  RatVector reduce(const RatVector& v) const {
    RatVector c = coordinates(v);
    for (auto& x : c) x = frac(x);
    return multiply(c, basis_);
  }

  RatMatrix gram() const { return multiply(basis_, transpose(basis_)); }

  friend bool operator==(const Lattice& a, const Lattice& b) { return a.basis_ == b.basis_; }

 private:
  RatMatrix basis_;
  RatMatrix inverse_;
};

/// Basis of the dual lattice: rows d_j with <l_i, d_j> = delta_ij.
inline Lattice dual_lattice(const Lattice& lattice) {
  return Lattice(transpose(inverse(lattice.basis())));
}

/// One element (B, b) per point-group element; acts by x -> B(x + b).
struct Coset {
  RatMatrix rotation;
  RatVector translation;

  friend bool operator==(const Coset&, const Coset&) = default;
};

class BieberbachGroup {
 public:
  /// Takes a complete list of coset representatives and checks every group
  /// invariant: orthogonality, lattice preservation, closure mod L, and
  /// freeness of the action.
  static BieberbachGroup from_cosets(Lattice lattice, std::vector<Coset> cosets) {
    BieberbachGroup g(std::move(lattice));
    for (auto& c : cosets) g.cosets_.push_back(g.normalize(std::move(c)));
    g.validate();
    return g;
  }

  /// Closes a set of generators under composition mod L, then validates.
  static BieberbachGroup from_generators(Lattice lattice, const std::vector<Coset>& generators,
                                         std::size_t max_order = 4096) {
    BieberbachGroup g(std::move(lattice));
    const std::size_t n = g.dimension();
    std::vector<Coset> gens;
    for (auto c : generators) gens.push_back(g.normalize(std::move(c)));
    std::vector<Coset> elements{Coset{identity_matrix(n), RatVector(n, Rational(0))}};
    for (std::size_t i = 0; i < elements.size(); ++i)
      for (const auto& s : gens) {
        Coset next = g.normalize(g.compose(elements[i], s));
        bool known = false;
        for (const auto& e : elements)
          if (e.rotation == next.rotation) {
            if (e.translation != next.translation)
              throw InvariantError("two elements share a rotation part but differ by a non-lattice translation");
            known = true;
            break;
          }
        if (!known) {
          elements.push_back(std::move(next));
          if (elements.size() > max_order) throw InvariantError("point group is too large or infinite");
        }
      }
    g.cosets_ = std::move(elements);
    g.validate();
    return g;
  }

  const Lattice& lattice() const { return lattice_; }
  const Lattice& dual() const { return dual_; }
  const std::vector<Coset>& cosets() const { return cosets_; }
  std::size_t dimension() const { return lattice_.dimension(); }
  /// |F|.
  std::size_t holonomy_order() const { return cosets_.size(); }

  /// (B1, b1)(B2, b2) = (B1 B2, B2^T b1 + b2).
  Coset compose(const Coset& a, const Coset& b) const {
    return Coset{multiply(a.rotation, b.rotation),
                 add(multiply(transpose(b.rotation), a.translation), b.translation)};
  }

 private:
  explicit BieberbachGroup(Lattice lattice) : lattice_(std::move(lattice)), dual_(dual_lattice(lattice_)) {}

  Coset normalize(Coset c) const {
    const std::size_t n = dimension();
    if (c.rotation.size() != n || !is_square(c.rotation) || c.translation.size() != n)
      throw InvariantError("coset has the wrong dimension");
    c.translation = lattice_.reduce(c.translation);
    return c;
  }

  void validate() const {
    const std::size_t n = dimension();
    const RatMatrix id = identity_matrix(n);
    bool has_identity = false;
    std::set<RatMatrix> rotations;
    const RatMatrix& basis = lattice_.basis();
    const RatMatrix basis_inverse = inverse(basis);
    for (const auto& c : cosets_) {
      if (!liealg::is_orthogonal(c.rotation)) throw InvariantError("rotation part is not orthogonal");
      if (!is_integral(multiply(multiply(basis, transpose(c.rotation)), basis_inverse)))
        throw InvariantError("rotation part does not preserve the lattice");
      if (!rotations.insert(c.rotation).second)
        throw InvariantError("two cosets share a rotation part");
      if (c.rotation == id) {
        if (!lattice_.contains(c.translation))
          throw InvariantError("identity rotation with a non-lattice translation");
        has_identity = true;
      }
    }
    if (!has_identity) throw InvariantError("identity coset missing");
    for (const auto& a : cosets_)
      for (const auto& b : cosets_) {
        Coset prod = normalize(compose(a, b));
        const bool found = std::any_of(cosets_.begin(), cosets_.end(), [&](const Coset& c) {
          return c.rotation == prod.rotation && c.translation == prod.translation;
        });
        if (!found) throw InvariantError("cosets are not closed under composition mod the lattice");
      }
    for (const auto& c : cosets_) {
      if (c.rotation == id) continue;
      if (has_fixed_point(c))
        throw InvariantError("not torsion-free: an element with rotation part of order " +
                             std::to_string(order_of(c.rotation)) + " fixes a point");
    }
  }

  static std::size_t order_of(const RatMatrix& b) {
    const RatMatrix id = identity_matrix(b.size());
    RatMatrix power = b;
    for (std::size_t k = 1; k <= 1024; ++k) {
      if (power == id) return k;
      power = multiply(power, b);
    }
    throw InvariantError("rotation part has infinite or very large order");
  }

  // Some element B L_{b + l}, l in L, has a fixed point iff P(b) lies in P(L),
  // P the orthogonal projection onto ker(B - I).
  bool has_fixed_point(const Coset& c) const {
    const std::size_t n = dimension();
    const std::size_t r = order_of(c.rotation);
    RatMatrix projection(n, RatVector(n, Rational(0)));
    RatMatrix power = identity_matrix(n);
    for (std::size_t k = 0; k < r; ++k) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) projection[i][j] += power[i][j];
      power = multiply(power, c.rotation);
    }
    for (auto& row : projection)
      for (auto& x : row) x /= Rational(static_cast<std::int64_t>(r));
    RatMatrix projected_basis;
    for (const auto& row : lattice_.basis()) projected_basis.push_back(multiply(projection, row));
    return in_integer_span(projected_basis, multiply(projection, c.translation));
  }

  Lattice lattice_;
  Lattice dual_;
  std::vector<Coset> cosets_;
};

/// Dual-lattice vectors of squared norm mu.
struct DualShell {
  Rational mu;
  std::vector<RatVector> vectors;
};

/// Every vector of the lattice with squared norm <= mu_max, grouped by norm
/// (ascending). Exact box search in lattice coordinates.
inline std::vector<DualShell> shells(const Lattice& lattice, const Rational& mu_max) {
  if (mu_max < 0) throw DomainError("shell cutoff must be nonnegative");
  const std::size_t n = lattice.dimension();
  const RatMatrix gram = lattice.gram();
  const RatMatrix gram_inverse = inverse(gram);
  const std::int64_t scale = lcm_of_denominators(gram);
  std::vector<std::vector<std::int64_t>> scaled(n, std::vector<std::int64_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scaled[i][j] = (gram[i][j] * Rational(scale)).numerator();
  // x^T G x <= mu implies x_i^2 <= mu (G^-1)_ii.
  std::vector<std::int64_t> bound(n);
  for (std::size_t i = 0; i < n; ++i) bound[i] = isqrt(floor(mu_max * gram_inverse[i][i]));
  const Rational scaled_cutoff = mu_max * Rational(scale);
  const std::int64_t cutoff = floor(scaled_cutoff);

  std::map<std::int64_t, std::vector<std::vector<std::int64_t>>> by_norm;
  std::vector<std::int64_t> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = -bound[i];
  while (true) {
    std::int64_t norm = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      std::int64_t row = 0;
      for (std::size_t j = 0; j < n; ++j) row += scaled[i][j] * x[j];
      norm += x[i] * row;
    }
    if (norm <= cutoff) by_norm[norm].push_back(x);
    std::size_t i = 0;
    while (i < n && x[i] == bound[i]) {
      x[i] = -bound[i];
      ++i;
    }
    if (i == n) break;
    ++x[i];
  }

  std::vector<DualShell> out;
  for (auto& [norm, coords] : by_norm) {
    DualShell shell{Rational(norm, scale), {}};
    for (const auto& c : coords) {
      RatVector coeffs(c.begin(), c.end());
      shell.vectors.push_back(multiply(coeffs, lattice.basis()));
    }
    out.push_back(std::move(shell));
  }
  return out;
}

/// The shell of exact squared norm mu (possibly empty).
inline DualShell shell_at(const Lattice& lattice, const Rational& mu) {
  for (auto& s : shells(lattice, mu))
    if (s.mu == mu) return s;
  return DualShell{mu, {}};
}

/// e_{mu,gamma} = sum over B-fixed shell vectors of exp(-2 pi i v.b).
inline std::complex<double> e_mu_gamma(const Coset& coset, const DualShell& shell) {
  std::complex<double> sum = 0.0;
  for (const auto& v : shell.vectors) {
    if (multiply(coset.rotation, v) != v) continue;
    const Rational phase = frac(dot(v, coset.translation));
    sum += std::polar(1.0, -2.0 * std::numbers::pi * to_double(phase));
  }
  return sum;
}

inline std::complex<double> e_mu_gamma(const BieberbachGroup& group, const Coset& coset,
                                       const DualShell& shell) {
  (void)group;
  return e_mu_gamma(coset, shell);
}

namespace detail {

inline void require_degree(const BieberbachGroup& g, int p) {
  if (p < 0 || p > static_cast<int>(g.dimension())) throw DomainError("degree out of range");
}

// tr(Lambda^q B) for every coset and every q.
inline std::vector<RatVector> coset_traces(const BieberbachGroup& g) {
  std::vector<RatVector> traces;
  for (const auto& c : g.cosets()) traces.push_back(liealg::exterior_traces(c.rotation));
  return traces;
}

inline std::vector<std::complex<double>> shell_phases(const BieberbachGroup& g, const DualShell& shell) {
  std::vector<std::complex<double>> e;
  for (const auto& c : g.cosets()) e.push_back(e_mu_gamma(c, shell));
  return e;
}

// |F|^-1 sum_gamma weight(gamma) e_gamma, rounded.
inline std::int64_t average(const BieberbachGroup& g, const std::vector<std::complex<double>>& phases,
                            const std::vector<double>& weights, const std::string& what) {
  std::complex<double> sum = 0.0;
  for (std::size_t i = 0; i < phases.size(); ++i) sum += weights[i] * phases[i];
  sum /= static_cast<double>(g.holonomy_order());
  return round_integral(sum, what);
}

inline std::int64_t d_from_phases(const BieberbachGroup& g, const std::vector<RatVector>& traces,
                                  const std::vector<std::complex<double>>& phases, int p) {
  std::vector<double> w;
  for (const auto& t : traces) w.push_back(to_double(t[static_cast<std::size_t>(p)]));
  const auto d = average(g, phases, w, "d_lambda(p=" + std::to_string(p) + ")");
  if (d < 0) throw IntegralityError("negative eigenvalue multiplicity");
  return d;
}

// sum_{q<=p} (-1)^{p-q} tr_q(B) as the averaging weight.
inline std::int64_t sigma_from_phases(const BieberbachGroup& g, const std::vector<RatVector>& traces,
                                      const std::vector<std::complex<double>>& phases, int p) {
  if (p < 0) return 0;
  std::vector<double> w;
  for (const auto& t : traces) {
    Rational s(0);
    for (int q = 0; q <= p; ++q) {
      if ((p - q) % 2 == 0)
        s += t[static_cast<std::size_t>(q)];
      else
        s -= t[static_cast<std::size_t>(q)];
    }
    w.push_back(to_double(s));
  }
  const auto value = average(g, phases, w, "n_sigma(p=" + std::to_string(p) + ")");
  if (value < 0)
    throw InvariantError("negative multiplicity n(pi_sigma_" + std::to_string(p) +
                         "): inconsistent group data");
  return value;
}

}  // namespace detail

/// Multiplicity of the eigenvalue 4 pi^2 mu on p-forms.
inline std::int64_t d_lambda(const BieberbachGroup& g, int p, const Rational& mu) {
  detail::require_degree(g, p);
  if (mu < 0) throw DomainError("mu must be nonnegative");
  const auto shell = shell_at(g.dual(), mu);
  return detail::d_from_phases(g, detail::coset_traces(g), detail::shell_phases(g, shell), p);
}

/// beta_p = |F|^-1 sum tr(Lambda^p B).
inline std::int64_t betti(const BieberbachGroup& g, int p) {
  detail::require_degree(g, p);
  Rational sum(0);
  for (const auto& c : g.cosets()) sum += liealg::exterior_trace(c.rotation, p);
  sum /= Rational(static_cast<std::int64_t>(g.holonomy_order()));
  if (!is_integer(sum) || sum < 0) throw IntegralityError("Betti number is not a nonnegative integer");
  return sum.numerator();
}

inline bool is_orientable(const BieberbachGroup& g) {
  return std::all_of(g.cosets().begin(), g.cosets().end(),
                     [](const Coset& c) { return determinant(c.rotation) == 1; });
}

struct FlatSpectrum {
  int p = 0;
  std::map<Rational, std::int64_t> multiplicities;  // mu -> multiplicity of 4 pi^2 mu

  std::int64_t at(const Rational& mu) const {
    auto it = multiplicities.find(mu);
    return it == multiplicities.end() ? 0 : it->second;
  }

  friend bool operator==(const FlatSpectrum&, const FlatSpectrum&) = default;
};

struct FlatDiscrepancy {
  Rational mu;
  std::int64_t first = 0;
  std::int64_t second = 0;
};

struct FlatComparison {
  bool isospectral = true;
  std::optional<FlatDiscrepancy> discrepancy;
};

/// p-spectrum for mu <= mu_max (mu = 0 carries beta_p). Zero entries omitted.
inline FlatSpectrum spectrum(const BieberbachGroup& g, int p, const Rational& mu_max) {
  detail::require_degree(g, p);
  const auto traces = detail::coset_traces(g);
  FlatSpectrum s{p, {}};
  for (const auto& shell : shells(g.dual(), mu_max)) {
    const auto d = detail::d_from_phases(g, traces, detail::shell_phases(g, shell), p);
    if (d != 0) s.multiplicities[shell.mu] = d;
  }
  return s;
}

/// Spectra for every degree 0..n, sharing one shell enumeration.
inline std::vector<FlatSpectrum> all_spectra(const BieberbachGroup& g, const Rational& mu_max) {
  const int n = static_cast<int>(g.dimension());
  const auto traces = detail::coset_traces(g);
  std::vector<FlatSpectrum> out;
  for (int p = 0; p <= n; ++p) out.push_back(FlatSpectrum{p, {}});
  for (const auto& shell : shells(g.dual(), mu_max)) {
    const auto phases = detail::shell_phases(g, shell);
    for (int p = 0; p <= n; ++p) {
      const auto d = detail::d_from_phases(g, traces, phases, p);
      if (d != 0) out[static_cast<std::size_t>(p)].multiplicities[shell.mu] = d;
    }
  }
  return out;
}

inline FlatComparison compare_spectra(const FlatSpectrum& a, const FlatSpectrum& b) {
  std::set<Rational> keys;
  for (const auto& [mu, d] : a.multiplicities) keys.insert(mu);
  for (const auto& [mu, d] : b.multiplicities) keys.insert(mu);
  for (const auto& mu : keys) {
    const auto d1 = a.at(mu);
    const auto d2 = b.at(mu);
    if (d1 != d2) return FlatComparison{false, FlatDiscrepancy{mu, d1, d2}};
  }
  return FlatComparison{};
}

inline void require_same_dimension(const BieberbachGroup& a, const BieberbachGroup& b) {
  if (a.dimension() != b.dimension()) throw DomainError("groups act on spaces of different dimension");
}

inline FlatComparison compare(const BieberbachGroup& g1, const BieberbachGroup& g2, int p,
                              const Rational& mu_max) {
  require_same_dimension(g1, g2);
  return compare_spectra(spectrum(g1, p, mu_max), spectrum(g2, p, mu_max));
}

/// n_Gamma(pi_{sigma_p, sqrt(mu)}) = sum_{q<=p} (-1)^{p-q} d_mu(q), for mu > 0.
/// sigma_{-1} and sigma_n are zero.
inline std::int64_t n_sigma_multiplicity(const BieberbachGroup& g, int p, const Rational& mu) {
  if (p < -1 || p > static_cast<int>(g.dimension())) throw DomainError("degree out of range");
  if (mu <= 0) throw DomainError("mu must be positive");
  if (p == -1) return 0;
  const auto shell = shell_at(g.dual(), mu);
  return detail::sigma_from_phases(g, detail::coset_traces(g), detail::shell_phases(g, shell), p);
}

/// Nonzero norms of the dual-lattice shells of either group up to mu_max.
inline std::set<Rational> shell_norms(const BieberbachGroup& g1, const BieberbachGroup& g2,
                                      const Rational& mu_max) {
  std::set<Rational> norms;
  for (const auto* g : {&g1, &g2})
    for (const auto& s : shells(g->dual(), mu_max))
      if (s.mu > 0) norms.insert(s.mu);
  return norms;
}

/// Spectrum restricted to closed (n(pi_{sigma_{p-1}})) or coclosed
/// (n(pi_{sigma_p})) p-forms, positive eigenvalues only.
inline FlatSpectrum half_spectrum(const BieberbachGroup& g, int p, bool closed, const Rational& mu_max) {
  detail::require_degree(g, p);
  const auto traces = detail::coset_traces(g);
  FlatSpectrum s{p, {}};
  for (const auto& shell : shells(g.dual(), mu_max)) {
    if (shell.mu == 0) continue;
    const auto value =
        detail::sigma_from_phases(g, traces, detail::shell_phases(g, shell), closed ? p - 1 : p);
    if (value != 0) s.multiplicities[shell.mu] = value;
  }
  return s;
}

inline FlatComparison compare_half(const BieberbachGroup& g1, const BieberbachGroup& g2, int p,
                                   bool closed, const Rational& mu_max) {
  require_same_dimension(g1, g2);
  return compare_spectra(half_spectrum(g1, p, closed, mu_max), half_spectrum(g2, p, closed, mu_max));
}

/// tau_p-equivalence up to mu_max: equal beta_p and equal n(pi_{sigma_p,r}),
/// n(pi_{sigma_{p-1},r}) on every shell.
inline bool tau_equivalent(const BieberbachGroup& g1, const BieberbachGroup& g2, int p,
                           const Rational& mu_max) {
  require_same_dimension(g1, g2);
  detail::require_degree(g1, p);
  if (betti(g1, p) != betti(g2, p)) return false;
  const auto t1 = detail::coset_traces(g1);
  const auto t2 = detail::coset_traces(g2);
  for (const auto& mu : shell_norms(g1, g2, mu_max)) {
    const auto ph1 = detail::shell_phases(g1, shell_at(g1.dual(), mu));
    const auto ph2 = detail::shell_phases(g2, shell_at(g2.dual(), mu));
    for (int q : {p, p - 1})
      if (detail::sigma_from_phases(g1, t1, ph1, q) != detail::sigma_from_phases(g2, t2, ph2, q))
        return false;
  }
  return true;
}

}  // namespace curvspec::flat
