#pragma once

// Spherical space forms Gamma \ S^n with n = 2m - 1 odd.
//
// The Hodge-Laplace p-spectrum is read off from representation multiplicities
// n_Gamma(pi) = |Gamma|^-1 sum_g chi_pi(g). Every eigenvalue lambda of the
// p-form Laplacian lies in exactly one of the Casimir families E_p, E_{p+1},
//   E_q = { k^2 + k(n-1) + (q-1)(n-q) },
// and its multiplicity is n_Gamma of the single O(2m) representation with
// highest weight L_{k,q} = k eps_1 + eps_2 + ... + eps_j, j = min(q, n+1-q).
//
// Only orientation-preserving groups occur: an orientation-reversing
// orthogonal map of R^{2m} has eigenvalue +1 and so fixes a point of S^n.
// On SO(2m) the characters of pi_{L,+1} and pi_{L,-1} agree, so the
// O(2m)-label delta never has to be resolved.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "curvspec/error.hpp"
#include "curvspec/liealg.hpp"
#include "curvspec/rational.hpp"
#include "curvspec/tolerance.hpp"

namespace curvspec::spherical {

using liealg::IrrepLabelO;
using liealg::RootSystem;
using liealg::RotationElement;
using liealg::Weight;

struct LensDescriptor {
  std::int64_t modulus = 1;
  std::vector<std::int64_t> q;

  friend bool operator==(const LensDescriptor&, const LensDescriptor&) = default;
};

/// Finite fixed-point-free subgroup of SO(2m) lying in a maximal torus,
/// stored as its full list of elements in angle form.
class SphericalGroup {
 public:
  /// Validates closure (angle addition mod 1), presence of the identity and
  /// freeness (no element other than the identity has a zero angle).
  static SphericalGroup from_elements(std::vector<RotationElement> elements) {
    if (elements.empty()) throw InvariantError("group has no elements");
    const std::size_t m = elements.front().angle_fractions.size();
    if (m < 2) throw InvariantError("spherical groups need at least two rotation angles (n >= 3)");
    std::set<RatVector> seen;
    for (const auto& g : elements) {
      if (g.angle_fractions.size() != m)
        throw InvariantError("elements have inconsistent numbers of angles");
      if (g.extra_fixed)
        throw InvariantError("element has an eigenvalue +1 outside the rotation planes");
      if (!seen.insert(g.angle_fractions).second)
        throw InvariantError("duplicate group element");
      if (!g.is_identity())
        for (const auto& a : g.angle_fractions)
          if (a == 0) throw InvariantError("not fixed-point-free: a non-identity element has angle 0");
    }
    if (!seen.count(RatVector(m, Rational(0)))) throw InvariantError("identity element missing");
    for (const auto& a : elements)
      for (const auto& b : elements) {
        RatVector sum(m);
        for (std::size_t j = 0; j < m; ++j) sum[j] = frac(a.angle_fractions[j] + b.angle_fractions[j]);
        if (!seen.count(sum)) throw InvariantError("element list is not closed under composition");
      }
    SphericalGroup g;
    g.rank_ = static_cast<int>(m);
    g.elements_ = std::move(elements);
    return g;
  }

  /// Cyclic group generated by the block rotation with angles 2 pi q_j / N.
  static SphericalGroup lens_space(std::int64_t modulus, const std::vector<std::int64_t>& q) {
    if (modulus < 1) throw InvariantError("lens space modulus must be positive");
    if (q.size() < 2) throw InvariantError("lens spaces need at least two parameters q_j");
    for (auto qj : q)
      if (std::gcd(qj, modulus) != 1)
        throw InvariantError("not fixed-point-free: gcd(" + std::to_string(qj) + ", " +
                             std::to_string(modulus) + ") != 1");
    std::vector<RotationElement> elements;
    for (std::int64_t s = 0; s < modulus; ++s) {
      RatVector angles;
      for (auto qj : q) angles.emplace_back(s * qj, modulus);
      elements.emplace_back(angles);
    }
    SphericalGroup g = from_elements(std::move(elements));
    g.lens_ = LensDescriptor{modulus, q};
    return g;
  }

  int rank() const { return rank_; }
  /// Dimension n = 2m - 1 of the sphere.
  int dimension() const { return 2 * rank_ - 1; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<RotationElement>& elements() const { return elements_; }
  const std::optional<LensDescriptor>& lens() const { return lens_; }
  RootSystem root_system() const { return RootSystem(liealg::Family::D, rank_); }

 private:
  SphericalGroup() = default;

  int rank_ = 2;
  std::vector<RotationElement> elements_;
  std::optional<LensDescriptor> lens_;
};

struct EigenvalueFamily {
  int p = 0;
  std::vector<std::pair<std::int64_t, std::int64_t>> entries;  // (k, lambda)
};

struct Spectrum {
  int p = 0;
  std::map<std::int64_t, std::int64_t> multiplicities;  // lambda -> d_lambda

  std::int64_t at(std::int64_t lambda) const {
    auto it = multiplicities.find(lambda);
    return it == multiplicities.end() ? 0 : it->second;
  }

  friend bool operator==(const Spectrum&, const Spectrum&) = default;
};

struct Discrepancy {
  std::int64_t eigenvalue = 0;
  std::int64_t first = 0;
  std::int64_t second = 0;
};

struct Comparison {
  bool isospectral = true;
  std::optional<Discrepancy> discrepancy;
};

inline void require_odd_dimension(int n) {
  if (n < 3 || n % 2 == 0) throw DomainError("sphere dimension must be odd and >= 3");
}

/// k^2 + k(n-1) + (q-1)(n-q).
inline std::int64_t family_eigenvalue(int n, int q, std::int64_t k) {
  return k * k + k * (n - 1) + static_cast<std::int64_t>(q - 1) * (n - q);
}

/// Highest weight L_{k,q} = k eps_1 + eps_2 + ... + eps_j, j = min(q, n+1-q).
inline Weight lambda_kq(int m, std::int64_t k, int q) {
  const int n = 2 * m - 1;
  if (q < 1 || q > n) throw DomainError("family index out of range");
  const int ones = std::min(q, n + 1 - q);
  if (ones >= 2 && k < 1) throw DomainError("L_{k,q} needs k >= 1 for 2 <= q <= n-1");
  if (k < 0) throw DomainError("k must be nonnegative");
  Weight w = Weight::zero(m);
  w[0] = static_cast<int>(k);
  for (int i = 1; i < ones; ++i) w[static_cast<std::size_t>(i)] = 1;
  return w;
}

/// O(2m) label with highest weight L_{k,q}; delta = 0 when the last
/// coordinate is positive, otherwise the common value +1.
inline IrrepLabelO label_kq(int m, std::int64_t k, int q) {
  Weight w = lambda_kq(m, k, q);
  const int delta = w.coords.back() > 0 ? 0 : 1;
  return IrrepLabelO{std::move(w), delta};
}

/// Members of E_p with lambda <= lambda_max. E_0 = E_{n+1} is empty; E_1 and
/// E_n include k = 0.
inline EigenvalueFamily eigenvalue_family(int n, int p, std::int64_t lambda_max) {
  require_odd_dimension(n);
  if (p < 0 || p > n + 1) throw DomainError("degree out of range");
  EigenvalueFamily family{p, {}};
  if (p == 0 || p == n + 1) return family;
  const std::int64_t k_min = (p == 1 || p == n) ? 0 : 1;
  for (std::int64_t k = k_min;; ++k) {
    const auto lambda = family_eigenvalue(n, p, k);
    if (lambda > lambda_max) break;
    family.entries.emplace_back(k, lambda);
  }
  return family;
}

/// Inverts lambda = k^2 + k(n-1) + (p-1)(n-p) when lambda lies in E_p.
inline std::optional<std::int64_t> k_from_lambda(std::int64_t lambda, int p, int n) {
  require_odd_dimension(n);
  if (lambda < 0) throw DomainError("eigenvalue must be nonnegative");
  if (p < 1 || p > n) return std::nullopt;
  const std::int64_t half = (n - 1) / 2;  // m - 1
  const std::int64_t disc = half * half + lambda - static_cast<std::int64_t>(p - 1) * (n - p);
  if (disc < 0) return std::nullopt;
  const std::int64_t root = isqrt(disc);
  if (root * root != disc) return std::nullopt;
  const std::int64_t k = root - half;
  const std::int64_t k_min = (p == 1 || p == n) ? 0 : 1;
  if (k < k_min) return std::nullopt;
  return k;
}

/// Multiplicity of pi_{L,delta} in L^2(Gamma \ SO(2m)) by character averaging.
inline std::int64_t n_gamma(const SphericalGroup& group, const IrrepLabelO& label) {
  const RootSystem rs = group.root_system();
  liealg::validate_label(label, rs);
  const auto table = liealg::cached_weight_table(label.weight, rs);
  std::shared_ptr<const liealg::WeightTable> conj_table;
  if (label.delta == 0) conj_table = liealg::cached_weight_table(label.weight.conjugate(), rs);
  std::complex<double> sum = 0.0;
  for (const auto& g : group.elements()) {
    sum += liealg::character(*table, g);
    if (conj_table) sum += liealg::character(*conj_table, g);
  }
  sum /= static_cast<double>(group.order());
  const auto value = round_integral(sum, "n_Gamma" + label.weight.to_string());
  if (value < 0) throw IntegralityError("negative representation multiplicity");
  return value;
}

namespace detail {

inline void require_degree(const SphericalGroup& g, int p) {
  if (p < 0 || p > g.dimension()) throw DomainError("degree out of range");
}

// Adds n_Gamma(L_{k,q}) for members of E_q with k >= k_min and lambda in (.., lambda_max].
inline void add_family(const SphericalGroup& g, int q, std::int64_t k_min, std::int64_t lambda_max,
                       std::map<std::int64_t, std::int64_t>& out) {
  const int n = g.dimension();
  if (q < 1 || q > n) return;
  for (std::int64_t k = k_min;; ++k) {
    const auto lambda = family_eigenvalue(n, q, k);
    if (lambda > lambda_max) break;
    const auto mult = n_gamma(g, label_kq(g.rank(), k, q));
    if (mult != 0) out[lambda] += mult;
  }
}

}  // namespace detail

/// Multiplicities of the Hodge-Laplace operator on p-forms up to lambda_max.
/// Zero multiplicities are omitted.
inline Spectrum p_spectrum(const SphericalGroup& g, int p, std::int64_t lambda_max) {
  detail::require_degree(g, p);
  const int n = g.dimension();
  Spectrum s{p, {}};
  // Closed forms: E_p; the k = 0 member is the harmonic n-form.
  detail::add_family(g, p, p == n ? 0 : 1, lambda_max, s.multiplicities);
  // Coclosed forms: E_{p+1}; the k = 0 member is the constant function.
  detail::add_family(g, p + 1, p == 0 ? 0 : 1, lambda_max, s.multiplicities);
  return s;
}

/// Spectrum on closed (E_p) or coclosed (E_{p+1}) p-forms, positive eigenvalues only.
inline Spectrum half_spectrum(const SphericalGroup& g, int p, bool closed, std::int64_t lambda_max) {
  detail::require_degree(g, p);
  Spectrum s{p, {}};
  detail::add_family(g, closed ? p : p + 1, 1, lambda_max, s.multiplicities);
  return s;
}

inline Comparison compare_spectra(const Spectrum& a, const Spectrum& b) {
  std::set<std::int64_t> keys;
  for (const auto& [l, d] : a.multiplicities) keys.insert(l);
  for (const auto& [l, d] : b.multiplicities) keys.insert(l);
  for (auto l : keys) {
    const auto d1 = a.at(l);
    const auto d2 = b.at(l);
    if (d1 != d2) return Comparison{false, Discrepancy{l, d1, d2}};
  }
  return Comparison{};
}

inline void require_same_sphere(const SphericalGroup& a, const SphericalGroup& b) {
  if (a.dimension() != b.dimension()) throw DomainError("groups act on spheres of different dimension");
}

inline Comparison compare(const SphericalGroup& g1, const SphericalGroup& g2, int p,
                          std::int64_t lambda_max) {
  require_same_sphere(g1, g2);
  return compare_spectra(p_spectrum(g1, p, lambda_max), p_spectrum(g2, p, lambda_max));
}

inline Comparison compare_half(const SphericalGroup& g1, const SphericalGroup& g2, int p, bool closed,
                               std::int64_t lambda_max) {
  require_same_sphere(g1, g2);
  return compare_spectra(half_spectrum(g1, p, closed, lambda_max),
                         half_spectrum(g2, p, closed, lambda_max));
}

/// Labels of hat G_{tau_p} (as (k, q) pairs) with k <= k_max.
inline std::vector<std::pair<std::int64_t, int>> tau_p_labels(int n, int p, std::int64_t k_max) {
  std::vector<std::pair<std::int64_t, int>> labels;
  for (int q : {p, p + 1}) {
    if (q < 1 || q > n) continue;
    const std::int64_t k_min = ((q == p && p == n) || (q == p + 1 && p == 0)) ? 0 : 1;
    for (std::int64_t k = k_min; k <= k_max; ++k) labels.emplace_back(k, q);
  }
  return labels;
}

/// Whether n_Gamma agrees on every pi in hat G_{tau_p} with k <= k_max.
inline bool tau_equivalent(const SphericalGroup& g1, const SphericalGroup& g2, int p,
                           std::int64_t k_max) {
  require_same_sphere(g1, g2);
  detail::require_degree(g1, p);
  for (const auto& [k, q] : tau_p_labels(g1.dimension(), p, k_max)) {
    const auto label = label_kq(g1.rank(), k, q);
    if (n_gamma(g1, label) != n_gamma(g2, label)) return false;
  }
  return true;
}

/// Largest k such that every label of hat G_{tau_p} whose eigenvalue is at
/// most lambda_max has index <= k.
inline std::int64_t k_max_for_cutoff(int n, int p, std::int64_t lambda_max) {
  std::int64_t best = 0;
  for (int q : {p, p + 1}) {
    if (q < 1 || q > n) continue;
    for (std::int64_t k = 0; family_eigenvalue(n, q, k) <= lambda_max; ++k) best = std::max(best, k);
  }
  return best;
}

struct CasimirCollision {
  Weight first;
  Weight second;
  std::int64_t casimir = 0;
};

/// Highest weights L of SO(2m) whose restriction to SO(2m-1) contains the
/// representation with highest weight mu (interlacing
/// L_1 >= mu_1 >= L_2 >= ... >= mu_{m-1} >= |L_m|), with L_1 <= k_max and the
/// last coordinate taken nonnegative (L and its conjugate give one O(2m) label).
inline std::vector<Weight> branching_weights(const Weight& mu, std::int64_t k_max) {
  const std::size_t m = mu.size() + 1;
  std::vector<Weight> out;
  Weight current = Weight::zero(static_cast<int>(m));
  auto recurse = [&](auto&& self, std::size_t pos) -> void {
    if (pos == m) {
      out.push_back(current);
      return;
    }
    int lo = 0, hi = 0;
    if (pos == 0) {
      lo = mu[0];
      hi = static_cast<int>(k_max);
    } else if (pos + 1 < m) {
      lo = mu[pos];
      hi = mu[pos - 1];
    } else {
      lo = 0;
      hi = mu[pos - 1];
    }
    for (int v = lo; v <= hi; ++v) {
      current[pos] = v;
      self(self, pos + 1);
    }
  };
  recurse(recurse, 0);
  return out;
}

/// Distinct weights of the branching family of tau_mu with equal Casimir
/// eigenvalue. Supports mu_1 <= 2 and mu = 3 eps_1.
inline std::vector<CasimirCollision> casimir_collision_scan(const Weight& mu, std::int64_t k_max) {
  if (mu.size() < 1) throw DomainError("mu needs at least one coordinate (m >= 2)");
  const RootSystem small(liealg::Family::B, static_cast<int>(mu.size()));
  if (!liealg::is_dominant(mu, small)) throw DomainError("mu " + mu.to_string() + " is not dominant");
  bool supported = mu[0] <= 2;
  if (mu[0] == 3) {
    supported = true;
    for (std::size_t i = 1; i < mu.size(); ++i)
      if (mu[i] != 0) supported = false;
  }
  if (!supported) throw UnsupportedError("collision scan supports mu_1 <= 2 and mu = 3 eps_1 only");
  const RootSystem rs(liealg::Family::D, static_cast<int>(mu.size() + 1));
  std::map<std::int64_t, std::vector<Weight>> by_casimir;
  for (auto& w : branching_weights(mu, k_max)) by_casimir[liealg::casimir_eigenvalue(w, rs)].push_back(w);
  std::vector<CasimirCollision> collisions;
  for (const auto& [c, weights] : by_casimir)
    for (std::size_t i = 0; i < weights.size(); ++i)
      for (std::size_t j = i + 1; j < weights.size(); ++j)
        collisions.push_back(CasimirCollision{weights[i], weights[j], c});
  return collisions;
}

}  // namespace curvspec::spherical
