#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "curvspec/spherical.hpp"
#include "oracles.hpp"

using namespace curvspec;
using namespace curvspec::spherical;
using liealg::Weight;

namespace {

SphericalGroup trivial_s3() { return SphericalGroup::lens_space(1, {1, 1}); }
SphericalGroup rp3() { return SphericalGroup::lens_space(2, {1, 1}); }

std::vector<std::int64_t> coprime_residues(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t q = 1; q < n; ++q)
    if (std::gcd(q, n) == 1) out.push_back(q);
  return out;
}

}  // namespace

TEST(SphereLensSpace, Construction) {
  EXPECT_EQ(trivial_s3().order(), 1u);
  EXPECT_EQ(rp3().order(), 2u);
  EXPECT_EQ(rp3().dimension(), 3);
  EXPECT_THROW(SphericalGroup::lens_space(4, {1, 2}), InvariantError);
  EXPECT_THROW(SphericalGroup::lens_space(0, {1, 1}), InvariantError);
}

TEST(SphereElementList, AcceptsClosedFreeGroups) {
  std::vector<liealg::RotationElement> els;
  for (int j = 0; j < 3; ++j) els.emplace_back(RatVector{Rational(j, 3), Rational(2 * j, 3)});
  const auto g = SphericalGroup::from_elements(els);
  EXPECT_EQ(g.order(), 3u);
  EXPECT_EQ(p_spectrum(g, 0, 60), p_spectrum(SphericalGroup::lens_space(3, {1, 2}), 0, 60));
}

TEST(SphereElementList, RejectsBrokenGroups) {
  using E = liealg::RotationElement;
  // not closed
  EXPECT_THROW(SphericalGroup::from_elements({E(RatVector{Rational(0), Rational(0)}),
                                              E(RatVector{Rational(1, 3), Rational(1, 3)})}),
               InvariantError);
  // fixed points: angle 0 in a non-identity element
  EXPECT_THROW(SphericalGroup::from_elements({E(RatVector{Rational(0), Rational(0)}),
                                              E(RatVector{Rational(1, 2), Rational(0)})}),
               InvariantError);
}

TEST(SphereNGamma, TrivialGroupGivesDimension) {
  for (int k = 0; k <= 6; ++k)
    EXPECT_EQ(n_gamma(trivial_s3(), liealg::IrrepLabelO{Weight{k, 0}, 1}), (k + 1) * (k + 1));
}

TEST(SphereNGamma, ProjectiveSpaceKillsOddDegrees) {
  for (int k = 1; k <= 9; k += 2) EXPECT_EQ(n_gamma(rp3(), liealg::IrrepLabelO{Weight{k, 0}, 1}), 0);
  EXPECT_EQ(n_gamma(rp3(), liealg::IrrepLabelO{Weight{2, 0}, 1}), 9);
}

TEST(SphereNGamma, IntegralAndNonnegativeOnRandomLensPairs) {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 500; ++trial) {
    const int m = 2 + static_cast<int>(rng() % 2);
    const std::int64_t n = 2 + static_cast<std::int64_t>(rng() % 12);
    const auto units = coprime_residues(n);
    std::vector<std::int64_t> q;
    for (int j = 0; j < m; ++j) q.push_back(units[rng() % units.size()]);
    const auto g = SphericalGroup::lens_space(n, q);
    const int k = static_cast<int>(rng() % 6);
    const int n_dim = 2 * m - 1;
    const int q_index = 1 + static_cast<int>(rng() % static_cast<unsigned>(n_dim));
    const auto label = label_kq(m, std::max(k, q_index == 1 || q_index == n_dim ? 0 : 1), q_index);
    EXPECT_GE(n_gamma(g, label), 0);  // integrality is asserted inside
  }
}

TEST(SphereEigenvalueFamily, KnownValues) {
  const auto f1 = eigenvalue_family(3, 1, 10);
  EXPECT_EQ(f1.entries, (std::vector<std::pair<std::int64_t, std::int64_t>>{{0, 0}, {1, 3}, {2, 8}}));
  const auto f2 = eigenvalue_family(3, 2, 10);
  EXPECT_EQ(f2.entries, (std::vector<std::pair<std::int64_t, std::int64_t>>{{1, 4}, {2, 9}}));
  EXPECT_TRUE(eigenvalue_family(5, 0, 100).entries.empty());
  EXPECT_TRUE(eigenvalue_family(5, 6, 100).entries.empty());
}

TEST(SphereEigenvalueFamily, ConsecutiveFamiliesAreDisjoint) {
  for (int n = 3; n <= 11; n += 2)
    for (int p = 0; p <= n; ++p) {
      std::set<std::int64_t> a;
      for (const auto& [k, l] : eigenvalue_family(n, p, 10000).entries) a.insert(l);
      for (const auto& [k, l] : eigenvalue_family(n, p + 1, 10000).entries) EXPECT_FALSE(a.count(l)) << n << " " << p;
    }
}

TEST(SphereKFromLambda, InvertsTheFamily) {
  EXPECT_EQ(k_from_lambda(8, 1, 3), 2);
  EXPECT_EQ(k_from_lambda(0, 1, 3), 0);
  EXPECT_FALSE(k_from_lambda(5, 1, 3).has_value());
  for (int n = 3; n <= 9; n += 2)
    for (int p = 1; p <= n; ++p)
      for (const auto& [k, l] : eigenvalue_family(n, p, 2000).entries) EXPECT_EQ(k_from_lambda(l, p, n), k);
}

TEST(SphereLambdaKq, CasimirMatchesClosedForm) {
  for (int m = 2; m <= 5; ++m) {
    const int n = 2 * m - 1;
    const liealg::RootSystem rs(liealg::Family::D, m);
    for (int q = 1; q <= n; ++q)
      for (int k = (q == 1 || q == n) ? 0 : 1; k <= 8; ++k)
        EXPECT_EQ(liealg::casimir_eigenvalue(lambda_kq(m, k, q), rs), family_eigenvalue(n, q, k))
            << "m=" << m << " q=" << q << " k=" << k;
  }
}

TEST(SpherePSpectrum, SphereExamples) {
  EXPECT_EQ(p_spectrum(trivial_s3(), 0, 8).at(8), 9);
  EXPECT_EQ(p_spectrum(trivial_s3(), 0, 8).at(0), 1);
  EXPECT_EQ(p_spectrum(rp3(), 0, 8).at(3), 0);
}

TEST(SpherePSpectrum, CoclosedOneFormsOnS3) {
  // Coclosed 1-forms: eigenvalue (k+1)^2 with multiplicity 2k(k+2).
  const auto s = half_spectrum(trivial_s3(), 1, false, 100);
  for (int k = 1; (k + 1) * (k + 1) <= 100; ++k) EXPECT_EQ(s.at((k + 1) * (k + 1)), 2 * k * (k + 2));
}

TEST(SpherePSpectrum, TrivialGroupMatchesHarmonicPolynomials) {
  for (int m = 2; m <= 4; ++m) {
    const int n = 2 * m - 1;
    const auto g = SphericalGroup::lens_space(1, std::vector<std::int64_t>(static_cast<std::size_t>(m), 1));
    const auto s = p_spectrum(g, 0, 15 * (15 + n - 1));
    for (int k = 0; k <= 15; ++k)
      EXPECT_EQ(boost::multiprecision::cpp_int(s.at(k * (k + n - 1))), oracle::sphere_harmonics(n, k)) << n << " " << k;
  }
}

TEST(SpherePSpectrum, PoincareDuality) {
  for (const auto& g : {rp3(), SphericalGroup::lens_space(5, {1, 2}), SphericalGroup::lens_space(7, {1, 2, 3})})
    for (int p = 0; p <= g.dimension(); ++p)
      EXPECT_EQ(p_spectrum(g, p, 120).multiplicities, p_spectrum(g, g.dimension() - p, 120).multiplicities);
}

TEST(SphereHalfSpectrum, SplitsTheSpectrum) {
  const auto g = SphericalGroup::lens_space(5, {1, 2});
  for (int p = 0; p <= 3; ++p) {
    auto whole = p_spectrum(g, p, 150).multiplicities;
    whole.erase(0);
    auto closed = half_spectrum(g, p, true, 150).multiplicities;
    for (const auto& [l, d] : half_spectrum(g, p, false, 150).multiplicities) closed[l] += d;
    EXPECT_EQ(closed, whole) << p;
    if (p < 3) EXPECT_EQ(half_spectrum(g, p, false, 150).multiplicities, half_spectrum(g, p + 1, true, 150).multiplicities);
  }
  EXPECT_EQ(half_spectrum(trivial_s3(), 0, false, 3).at(3), 4);
}

TEST(SphereCompare, Examples) {
  EXPECT_TRUE(compare(trivial_s3(), trivial_s3(), 0, 50).isospectral);
  const auto c = compare(trivial_s3(), rp3(), 0, 50);
  ASSERT_FALSE(c.isospectral);
  EXPECT_EQ(c.discrepancy->eigenvalue, 3);
  EXPECT_EQ(c.discrepancy->first, 4);
  EXPECT_EQ(c.discrepancy->second, 0);
  EXPECT_THROW(compare(trivial_s3(), SphericalGroup::lens_space(1, {1, 1, 1}), 0, 10), DomainError);
}

TEST(SphereTauEquivalence, Examples) {
  EXPECT_TRUE(tau_equivalent(rp3(), rp3(), 1, 10));
  EXPECT_FALSE(tau_equivalent(trivial_s3(), rp3(), 0, 10));
}

TEST(SphereTauEquivalence, ImpliesIsospectrality) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const std::int64_t n = 3 + static_cast<std::int64_t>(rng() % 9);
    const auto units = coprime_residues(n);
    auto pick = [&] { return units[rng() % units.size()]; };
    const auto g1 = SphericalGroup::lens_space(n, {1, pick(), pick()});
    const auto g2 = SphericalGroup::lens_space(n, {1, pick(), pick()});
    for (int p = 0; p <= 5; ++p)
      if (tau_equivalent(g1, g2, p, k_max_for_cutoff(5, p, 120))) EXPECT_TRUE(compare(g1, g2, p, 120).isospectral);
  }
}

TEST(SphereCollisionScan, Examples) {
  EXPECT_TRUE(casimir_collision_scan(Weight{2, 2, 0}, 20).empty());
  EXPECT_TRUE(casimir_collision_scan(Weight{0, 0}, 20).empty());
  for (int m = 2; m <= 4; ++m) {
    Weight mu = Weight::zero(m - 1);
    mu[0] = 3;
    const auto hits = casimir_collision_scan(mu, 20);
    ASSERT_EQ(hits.size(), 1u);
    Weight a = Weight::zero(m), b = Weight::zero(m);
    a[0] = 2 * m - 1;
    a[1] = 3;
    b[0] = 2 * m;
    EXPECT_EQ(hits[0].casimir, 2 * (2 * m - 1) * (2 * m));
    EXPECT_TRUE((hits[0].first == a && hits[0].second == b) || (hits[0].first == b && hits[0].second == a));
  }
  EXPECT_THROW(casimir_collision_scan(Weight{4, 0}, 10), UnsupportedError);
  EXPECT_THROW(casimir_collision_scan(Weight{3, 1}, 10), UnsupportedError);
}
