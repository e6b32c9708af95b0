#pragma once

// Named Bieberbach groups: two Klein bottles, two 4-dimensional manifolds
// that are 1- but not 0-isospectral, the pair M24 / M25 with holonomy
// Z2 x Z2, and two pairs of 8-dimensional manifolds with holonomy Z4.

#include <string>
#include <utility>
#include <vector>

#include "curvspec/error.hpp"
#include "curvspec/flat.hpp"
#include "curvspec/rational.hpp"

namespace curvspec::flat {

namespace detail {

inline RatMatrix block_diagonal(const std::vector<RatMatrix>& blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.size();
  RatMatrix m(n, RatVector(n, Rational(0)));
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) m[offset + i][offset + j] = b[i][j];
    offset += b.size();
  }
  return m;
}

inline RatMatrix scalar_block(int v) { return RatMatrix{{Rational(v)}}; }

inline RatMatrix diagonal(const std::vector<int>& entries) {
  std::vector<RatMatrix> blocks;
  for (int e : entries) blocks.push_back(scalar_block(e));
  return block_diagonal(blocks);
}

// Rotation by a quarter turn, [[0, 1], [-1, 0]].
inline RatMatrix quarter_turn() { return RatMatrix{{Rational(0), Rational(1)}, {Rational(-1), Rational(0)}}; }

// Coordinate swap, [[0, 1], [1, 0]].
inline RatMatrix swap_block() { return RatMatrix{{Rational(0), Rational(1)}, {Rational(1), Rational(0)}}; }

inline RatVector translation(std::size_t n, const std::vector<std::pair<std::size_t, Rational>>& entries) {
  RatVector b(n, Rational(0));
  for (const auto& [i, v] : entries) b[i] = v;
  return b;
}

}  // namespace detail

/// Klein bottle with lattice Z e1 + c Z e2 and generator diag(1,-1) L_{e1/2}.
inline BieberbachGroup klein_a(const Rational& c = Rational(2)) {
  Lattice lattice(RatMatrix{{Rational(1), Rational(0)}, {Rational(0), c}});
  return BieberbachGroup::from_generators(
      lattice, {Coset{detail::diagonal({1, -1}), detail::translation(2, {{0, Rational(1, 2)}})}});
}

/// Klein bottle with lattice Z e1 + c Z e2 and generator diag(-1,1) L_{c e2/2}.
inline BieberbachGroup klein_b(const Rational& c = Rational(2)) {
  Lattice lattice(RatMatrix{{Rational(1), Rational(0)}, {Rational(0), c}});
  return BieberbachGroup::from_generators(
      lattice, {Coset{detail::diagonal({-1, 1}), detail::translation(2, {{1, c / Rational(2)}})}});
}

inline BieberbachGroup flat4_a() {
  return BieberbachGroup::from_generators(
      Lattice::integer(4),
      {Coset{detail::diagonal({1, 1, -1, -1}), detail::translation(4, {{0, Rational(1, 2)}})}});
}

inline BieberbachGroup flat4_b() {
  using namespace detail;
  return BieberbachGroup::from_generators(
      Lattice::integer(4),
      {Coset{block_diagonal({scalar_block(1), swap_block(), scalar_block(-1)}),
             translation(4, {{0, Rational(1, 2)}})}});
}

inline BieberbachGroup flat4_m24() {
  using namespace detail;
  const Rational half(1, 2);
  return BieberbachGroup::from_generators(
      Lattice::integer(4), {Coset{diagonal({-1, -1, 1, 1}), translation(4, {{3, half}})},
                            Coset{diagonal({1, -1, -1, 1}), translation(4, {{1, half}, {3, half}})}});
}

inline BieberbachGroup flat4_m25() {
  using namespace detail;
  const Rational half(1, 2);
  return BieberbachGroup::from_generators(
      Lattice::integer(4), {Coset{diagonal({-1, -1, 1, 1}), translation(4, {{3, half}})},
                            Coset{diagonal({1, -1, -1, 1}), translation(4, {{0, half}, {1, half}})}});
}

namespace detail {

inline BieberbachGroup flat8(const RatMatrix& tail, const std::vector<std::pair<std::size_t, Rational>>& b) {
  const RatMatrix rotation = block_diagonal({quarter_turn(), quarter_turn(), tail});
  return BieberbachGroup::from_generators(Lattice::integer(8), {Coset{rotation, translation(8, b)}});
}

}  // namespace detail

inline BieberbachGroup flat8_a() {
  return detail::flat8(detail::diagonal({1, 1, -1, -1}), {{4, Rational(1, 4)}});
}

inline BieberbachGroup flat8_b() {
  return detail::flat8(detail::diagonal({1, 1, -1, -1}), {{4, Rational(1, 4)}, {5, Rational(1, 2)}});
}

inline BieberbachGroup flat8_c() {
  return detail::flat8(detail::diagonal({1, 1, -1, -1}), {{4, Rational(1, 4)}, {5, Rational(1, 4)}});
}

inline BieberbachGroup flat8_d() {
  using namespace detail;
  return flat8(block_diagonal({swap_block(), scalar_block(1), scalar_block(-1)}), {{4, Rational(1, 2)}});
}

inline const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names{"klein_a",   "klein_b",   "flat4_a", "flat4_b",
                                              "flat4_m24", "flat4_m25", "flat8_a", "flat8_b",
                                              "flat8_c",   "flat8_d"};
  return names;
}

/// Pairs compared against each other.
inline const std::vector<std::pair<std::string, std::string>>& fixture_pairs() {
  static const std::vector<std::pair<std::string, std::string>> pairs{
      {"klein_a", "klein_b"}, {"flat4_a", "flat4_b"}, {"flat4_m24", "flat4_m25"},
      {"flat8_a", "flat8_b"}, {"flat8_c", "flat8_d"}};
  return pairs;
}

inline bool is_fixture(const std::string& name) {
  for (const auto& n : fixture_names())
    if (n == name) return true;
  return false;
}

inline BieberbachGroup fixture(const std::string& name) {
  if (name == "klein_a") return klein_a();
  if (name == "klein_b") return klein_b();
  if (name == "flat4_a") return flat4_a();
  if (name == "flat4_b") return flat4_b();
  if (name == "flat4_m24") return flat4_m24();
  if (name == "flat4_m25") return flat4_m25();
  if (name == "flat8_a") return flat8_a();
  if (name == "flat8_b") return flat8_b();
  if (name == "flat8_c") return flat8_c();
  if (name == "flat8_d") return flat8_d();
  throw ParseError("unknown fixture '" + name + "'");
}

inline std::vector<std::pair<std::string, BieberbachGroup>> fixtures() {
  std::vector<std::pair<std::string, BieberbachGroup>> out;
  for (const auto& name : fixture_names()) out.emplace_back(name, fixture(name));
  return out;
}

}  // namespace curvspec::flat
