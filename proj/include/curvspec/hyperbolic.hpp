#pragma once

// Spectral dictionary for compact hyperbolic manifolds Gamma \ H^n.
//
// No multiplicities n_Gamma are computed here. The module maps an eigenvalue
// lambda of the p-form Laplacian to the representations of SO(n,1) whose
// multiplicities add up to d_lambda(tau_p, Gamma), using
//   lambda(C, pi_{sigma_p, nu}) = -nu^2 + rho_p^2,  rho_p = (n-1)/2 - min(p, n-1-p).

#include <algorithm>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "curvspec/error.hpp"
#include "curvspec/rational.hpp"

namespace curvspec::hyperbolic {

/// Exact spectral parameter nu, stored through nu^2 (rational):
/// nu = sqrt(nu^2) >= 0 when nu^2 >= 0, nu = i sqrt(-nu^2) otherwise.
class Nu {
 public:
  static Nu real(const Rational& r) {
    if (r < 0) throw DomainError("real nu must be nonnegative");
    return Nu(r * r);
  }
  static Nu imaginary(const Rational& t) {
    if (t < 0) throw DomainError("imaginary part of nu must be nonnegative");
    return Nu(-(t * t));
  }
  static Nu from_square(const Rational& square) { return Nu(square); }

  const Rational& square() const { return square_; }
  /// Purely imaginary (including nu = 0, the start of the unitary axis).
  bool is_imaginary() const { return square_ <= 0; }

  /// |nu| as an exact rational when |nu|^2 is a rational square.
  std::optional<Rational> exact_magnitude() const {
    const Rational a = square_ < 0 ? -square_ : square_;
    const auto num = isqrt(a.numerator());
    const auto den = isqrt(a.denominator());
    if (num * num != a.numerator() || den * den != a.denominator()) return std::nullopt;
    return Rational(num, den);
  }

  std::complex<double> to_complex() const {
    const double mag = std::sqrt(std::abs(to_double(square_)));
    return square_ < 0 ? std::complex<double>(0.0, mag) : std::complex<double>(mag, 0.0);
  }

  /// "1/2", "i", "3i/2", "sqrt(2)", "i*sqrt(7/4)".
  std::string to_string() const {
    if (square_ == 0) return "0";
    const bool imag = square_ < 0;
    if (auto mag = exact_magnitude()) {
      if (!imag) return curvspec::to_string(*mag);
      if (*mag == 1) return "i";
      if (mag->denominator() == 1) return std::to_string(mag->numerator()) + "i";
      return std::to_string(mag->numerator()) + "i/" + std::to_string(mag->denominator());
    }
    const std::string root = "sqrt(" + curvspec::to_string(imag ? -square_ : square_) + ")";
    return imag ? "i*" + root : root;
  }

  friend bool operator==(const Nu&, const Nu&) = default;

 private:
  explicit Nu(Rational square) : square_(square) {}
  Rational square_;
};

enum class TermKind { principal, complementary, langlands, discrete_pair };

inline std::string to_string(TermKind k) {
  switch (k) {
    case TermKind::principal: return "principal";
    case TermKind::complementary: return "complementary";
    case TermKind::langlands: return "langlands";
    case TermKind::discrete_pair: return "discrete_pair";
  }
  return "?";
}

/// One representation (or, for hat_G_taup, one family) of SO(n,1):
/// pi_{sigma_q, nu}, the Langlands quotient J_{sigma_q, rho_q}, or the sum
/// D^+ + D^- of the two discrete series at q = n/2.
struct HyperbolicTerm {
  TermKind kind = TermKind::principal;
  int sigma_degree = 0;
  Rational rho;
  std::optional<Nu> nu;  // absent for families and for the discrete pair

  friend bool operator==(const HyperbolicTerm&, const HyperbolicTerm&) = default;
};

inline void require_dimension(int n) {
  if (n < 2) throw DomainError("hyperbolic dimension must be at least 2");
}

/// rho_p = (n-1)/2 - min(p, n-1-p), for sigma_p on O(n-1), 0 <= p <= n-1.
inline Rational rho_p(int n, int p) {
  require_dimension(n);
  if (p < 0 || p > n - 1) throw DomainError("sigma_p needs 0 <= p <= n-1");
  return Rational(n - 1, 2) - Rational(std::min(p, n - 1 - p));
}

/// lambda(C, pi_{sigma_p, nu}) = -nu^2 + rho_p^2, exactly.
inline Rational casimir(int n, int p, const Nu& nu) {
  const Rational r = rho_p(n, p);
  return r * r - nu.square();
}

/// Same, for a floating-point complex nu (real part of -nu^2 + rho_p^2).
inline double casimir(int n, int p, std::complex<double> nu) {
  const double r = to_double(rho_p(n, p));
  return (-(nu * nu) + r * r).real();
}

/// nu = sqrt(rho_p^2 - lambda): real in (0, rho_p] below rho_p^2, else on i R_{>=0}.
inline Nu nu_from_lambda(int n, int p, const Rational& lambda) {
  if (lambda < 0) throw DomainError("eigenvalue must be nonnegative");
  const Rational r = rho_p(n, p);
  return Nu::from_square(r * r - lambda);
}

namespace detail {

// sigma_q with q in {p, p-1} that exist on O(n-1).
inline std::vector<int> sigma_degrees(int n, int p) {
  std::vector<int> out;
  if (p >= 0 && p <= n - 1) out.push_back(p);
  if (p - 1 >= 0 && p - 1 <= n - 1) out.push_back(p - 1);
  return out;
}

inline bool is_middle_degree(int n, int p) { return n % 2 == 0 && p == n / 2; }

}  // namespace detail

/// Families making up hat G_{tau_p}: for each sigma_q, q in {p, p-1}, the
/// unitary principal series, the complementary series on (0, rho_q) and the
/// Langlands quotient at rho_q. At p = n/2 the endpoint is replaced by
/// D^+ + D^-. A complementary family is omitted when rho_q = 0.
inline std::vector<HyperbolicTerm> hat_G_taup(int n, int p) {
  require_dimension(n);
  if (p < 0 || p > n) throw DomainError("degree out of range");
  std::vector<HyperbolicTerm> out;
  const bool middle = detail::is_middle_degree(n, p);
  for (int q : detail::sigma_degrees(n, p)) {
    const Rational r = rho_p(n, q);
    out.push_back(HyperbolicTerm{TermKind::principal, q, r, std::nullopt});
    if (r > 0) out.push_back(HyperbolicTerm{TermKind::complementary, q, r, std::nullopt});
    if (!middle) out.push_back(HyperbolicTerm{TermKind::langlands, q, r, Nu::real(r)});
  }
  if (middle) out.push_back(HyperbolicTerm{TermKind::discrete_pair, n / 2, Rational(1, 2), std::nullopt});
  return out;
}

/// Representations whose n_Gamma add up to d_lambda(tau_p, Gamma).
inline std::vector<HyperbolicTerm> multiplicity_decomposition(int n, int p, const Rational& lambda) {
  require_dimension(n);
  if (p < 0 || p > n) throw DomainError("degree out of range");
  if (lambda < 0) throw DomainError("eigenvalue must be nonnegative");
  std::vector<HyperbolicTerm> out;
  if (lambda == 0) {
    if (detail::is_middle_degree(n, p)) {
      out.push_back(HyperbolicTerm{TermKind::discrete_pair, n / 2, Rational(1, 2), std::nullopt});
      return out;
    }
    for (int q : detail::sigma_degrees(n, p)) {
      const Rational r = rho_p(n, q);
      out.push_back(HyperbolicTerm{TermKind::langlands, q, r, Nu::real(r)});
    }
    return out;
  }
  for (int q : detail::sigma_degrees(n, p)) {
    const Nu nu = nu_from_lambda(n, q, lambda);
    const TermKind kind = nu.is_imaginary() ? TermKind::principal : TermKind::complementary;
    out.push_back(HyperbolicTerm{kind, q, rho_p(n, q), nu});
  }
  return out;
}

namespace detail {

inline std::string subscript(int v) {
  static const char* digits[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
  std::string s = v < 0 ? "₋" : "";
  for (char c : std::to_string(v < 0 ? -v : v)) s += digits[c - '0'];
  return s;
}

}  // namespace detail

/// "π_{σ₀, i}", "J_{σ₂, 3/2}", "D₂⁺⊕D₂⁻".
inline std::string term_label(const HyperbolicTerm& t) {
  const std::string sigma = "σ" + detail::subscript(t.sigma_degree);
  switch (t.kind) {
    case TermKind::discrete_pair:
      return "D" + detail::subscript(t.sigma_degree) + "⁺⊕D" + detail::subscript(t.sigma_degree) + "⁻";
    case TermKind::langlands:
      return "J_{" + sigma + ", " + curvspec::to_string(t.rho) + "}";
    case TermKind::principal:
    case TermKind::complementary:
      return "π_{" + sigma + ", " + (t.nu ? t.nu->to_string() : std::string("ν")) + "}";
  }
  return "?";
}

/// "n_Γ(a) + n_Γ(b)".
inline std::string decomposition_label(const std::vector<HyperbolicTerm>& terms) {
  std::string s;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) s += " + ";
    s += "n_Γ(" + term_label(terms[i]) + ")";
  }
  return s.empty() ? "0" : s;
}

}  // namespace curvspec::hyperbolic
