#pragma once

// Reference computations that share no code path with the library beyond
// the group data they are handed.

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

namespace oracle {

using Q = boost::rational<std::int64_t>;
using QMatrix = std::vector<std::vector<Q>>;
using QVector = std::vector<Q>;

/// (2k+n-1)(k+n-2)! / (k!(n-1)!): dimension of degree-k harmonic polynomials on S^n.
inline boost::multiprecision::cpp_int sphere_harmonics(int n, int k) {
  using boost::multiprecision::cpp_int;
  auto fact = [](int v) {
    cpp_int f = 1;
    for (int i = 2; i <= v; ++i) f *= i;
    return f;
  };
  return cpp_int(2 * k + n - 1) * fact(k + n - 2) / (fact(k) * fact(n - 1));
}

struct Element {
  QMatrix rotation;  // acts by x -> B(x + b)
  QVector translation;
};

namespace detail {

inline std::vector<std::vector<int>> subsets(int n, int p) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == p) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

inline double minor_det(const QMatrix& b, const std::vector<int>& rows, const std::vector<int>& cols) {
  const int p = static_cast<int>(rows.size());
  if (p == 0) return 1.0;
  Eigen::MatrixXd m(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) m(i, j) = boost::rational_cast<double>(b[rows[i]][cols[j]]);
  return m.determinant();
}

}  // namespace detail

/// Dimension of the space of Gamma-invariant p-forms sum_v sum_I c_{v,I} e^{2 pi i v.x} dx_I
/// with |v|^2 = mu, for the group generated by `elements` over the lattice
/// whose dual has basis rows `dual_basis`. Builds the pullback action of each
/// element on the finite mode space and returns the dimension of the joint
/// fixed space (common kernel of the A_g - I).
inline int invariant_fourier_modes(const QMatrix& dual_basis, const std::vector<Element>& elements, int p,
                                   const Q& mu, int box = 8) {
  const int n = static_cast<int>(dual_basis.size());
  std::vector<QVector> shell;
  std::vector<int> coeff(n, -box);
  while (true) {
    QVector v(n, Q(0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) v[j] += Q(coeff[i]) * dual_basis[i][j];
    Q norm = 0;
    for (const auto& x : v) norm += x * x;
    if (norm == mu) shell.push_back(v);
    int i = 0;
    while (i < n && ++coeff[i] > box) coeff[i++] = -box;
    if (i == n) break;
  }
  const auto forms = detail::subsets(n, p);
  const int dim = static_cast<int>(shell.size() * forms.size());
  if (dim == 0) return 0;

  auto index_of = [&](const QVector& v) {
    for (std::size_t i = 0; i < shell.size(); ++i)
      if (shell[i] == v) return static_cast<int>(i);
    return -1;
  };

  // Kernel of the stacked A_g - I equals the kernel of sum_g (A_g - I)^H (A_g - I).
  Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t e = 0; e < elements.size(); ++e) {
    const auto& b = elements[e].rotation;
    QVector bb(n, Q(0));  // B b
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) bb[i] += b[i][j] * elements[e].translation[j];
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t s = 0; s < shell.size(); ++s) {
      const auto& v = shell[s];
      // e^{2 pi i v.B(x+b)} = e^{2 pi i v.Bb} e^{2 pi i (B^T v).x}
      QVector btv(n, Q(0));
      Q phase = 0;
      for (int i = 0; i < n; ++i) {
        phase += v[i] * bb[i];
        for (int j = 0; j < n; ++j) btv[j] += b[i][j] * v[i];
      }
      const int target = index_of(btv);
      if (target < 0) return -1;  // shell not preserved: malformed input
      const double angle = 2.0 * 3.14159265358979323846 * boost::rational_cast<double>(phase);
      const std::complex<double> ph(std::cos(angle), std::sin(angle));
      for (std::size_t f = 0; f < forms.size(); ++f)
        for (std::size_t g = 0; g < forms.size(); ++g) {
          const double c = detail::minor_det(b, forms[f], forms[g]);
          if (c != 0.0)
            a(static_cast<int>(target * forms.size() + g), static_cast<int>(s * forms.size() + f)) += ph * c;
        }
    }
    a -= Eigen::MatrixXcd::Identity(dim, dim);
    gram += a.adjoint() * a;
  }
  // Absolute cutoff: the matrix may vanish up to rounding.
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram, Eigen::EigenvaluesOnly);
  int kernel = 0;
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) kernel += eig.eigenvalues()(i) < 1e-8;
  return kernel;
}

}  // namespace oracle
