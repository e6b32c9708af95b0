#pragma once

// JSON group descriptions.
//
// Flat:
//   {"space": "flat",
//    "lattice": [["1","0"],["0","2"]],                       rows are basis vectors
//    "cosets": [{"rotation": [[...]], "translation": [...]}]  or "generators": [...]}
// Spherical:
//   {"space": "spherical", "lens": {"N": 5, "q": [1, 2]}}
//   {"space": "spherical", "elements": [{"angles": ["1/5", "2/5"]}, ...]}
// Either space: {"space": "flat", "fixture": "klein_a"}.
//
// Rationals are strings "p/q" or JSON integers; floating-point numbers are
// rejected. A coset (B, b) acts by x -> B(x + b).

#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "curvspec/error.hpp"
#include "curvspec/fixtures.hpp"
#include "curvspec/flat.hpp"
#include "curvspec/rational.hpp"
#include "curvspec/spherical.hpp"

namespace curvspec::io {

using json = nlohmann::json;

using Group = std::variant<flat::BieberbachGroup, spherical::SphericalGroup>;

inline bool is_flat(const Group& g) { return std::holds_alternative<flat::BieberbachGroup>(g); }

inline int dimension(const Group& g) {
  if (const auto* f = std::get_if<flat::BieberbachGroup>(&g)) return static_cast<int>(f->dimension());
  return std::get<spherical::SphericalGroup>(g).dimension();
}

namespace detail {

inline Rational rational_from_json(const json& j, const std::string& where) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  throw ParseError(where + ": expected a rational string or an integer");
}

inline RatVector vector_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array");
  RatVector v;
  for (const auto& x : j) v.push_back(rational_from_json(x, where));
  return v;
}

inline RatMatrix matrix_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of rows");
  RatMatrix m;
  for (const auto& row : j) m.push_back(vector_from_json(row, where));
  return m;
}

inline json to_json(const Rational& r) { return curvspec::to_string(r); }

inline json to_json(const RatVector& v) {
  json j = json::array();
  for (const auto& x : v) j.push_back(to_json(x));
  return j;
}

inline json to_json(const RatMatrix& m) {
  json j = json::array();
  for (const auto& row : m) j.push_back(to_json(row));
  return j;
}

inline std::int64_t integer_from_json(const json& j, const std::string& where) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_string()) {
    const Rational r = parse_rational(j.get<std::string>());
    if (is_integer(r)) return r.numerator();
  }
  throw ParseError(where + ": expected an integer");
}

inline void require_exclusive(const json& j, std::initializer_list<const char*> keys) {
  int present = 0;
  std::string names;
  for (const char* k : keys) {
    if (j.contains(k)) ++present;
    names += std::string(names.empty() ? "" : ", ") + k;
  }
  if (present != 1) throw ParseError("exactly one of {" + names + "} must be given");
}

inline flat::BieberbachGroup flat_from_json(const json& j) {
  if (j.contains("fixture")) {
    if (j.contains("lattice") || j.contains("cosets") || j.contains("generators"))
      throw ParseError("'fixture' excludes explicit group content");
    if (!j["fixture"].is_string()) throw ParseError("fixture: expected a name");
    return flat::fixture(j["fixture"].get<std::string>());
  }
  if (!j.contains("lattice")) throw ParseError("flat group needs a 'lattice'");
  require_exclusive(j, {"cosets", "generators"});
  const RatMatrix basis = matrix_from_json(j["lattice"], "lattice");
  const bool generators = j.contains("generators");
  const json& list = generators ? j["generators"] : j["cosets"];
  if (!list.is_array()) throw ParseError("cosets: expected an array");
  std::vector<flat::Coset> cosets;
  for (const auto& c : list) {
    if (!c.is_object() || !c.contains("rotation") || !c.contains("translation"))
      throw ParseError("each coset needs 'rotation' and 'translation'");
    cosets.push_back(flat::Coset{matrix_from_json(c["rotation"], "rotation"),
                                 vector_from_json(c["translation"], "translation")});
  }
  flat::Lattice lattice(basis);
  return generators ? flat::BieberbachGroup::from_generators(std::move(lattice), cosets)
                    : flat::BieberbachGroup::from_cosets(std::move(lattice), std::move(cosets));
}

inline spherical::SphericalGroup spherical_from_json(const json& j) {
  if (j.contains("fixture")) throw ParseError("unknown spherical fixture");
  require_exclusive(j, {"lens", "elements"});
  if (j.contains("lens")) {
    const json& lens = j["lens"];
    if (!lens.is_object() || !lens.contains("N") || !lens.contains("q"))
      throw ParseError("lens needs 'N' and 'q'");
    const auto modulus = integer_from_json(lens["N"], "lens.N");
    if (!lens["q"].is_array()) throw ParseError("lens.q: expected an array");
    std::vector<std::int64_t> q;
    for (const auto& x : lens["q"]) q.push_back(integer_from_json(x, "lens.q"));
    return spherical::SphericalGroup::lens_space(modulus, q);
  }
  if (!j["elements"].is_array()) throw ParseError("elements: expected an array");
  std::vector<liealg::RotationElement> elements;
  for (const auto& e : j["elements"]) {
    if (!e.is_object() || !e.contains("angles")) throw ParseError("each element needs 'angles'");
    elements.emplace_back(vector_from_json(e["angles"], "angles"));
  }
  return spherical::SphericalGroup::from_elements(std::move(elements));
}

}  // namespace detail

/// Builds a group from its description. ParseError for malformed input,
/// InvariantError when the described group violates a group invariant.
inline Group group_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("group description must be a JSON object");
  if (!j.contains("space") || !j["space"].is_string()) throw ParseError("missing 'space'");
  const auto space = j["space"].get<std::string>();
  if (space == "flat") return detail::flat_from_json(j);
  if (space == "spherical") return detail::spherical_from_json(j);
  throw ParseError("unknown space '" + space + "'");
}

inline Group group_from_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return group_from_json(j);
}

inline Group group_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return group_from_text(buffer.str());
}

inline json to_json(const flat::BieberbachGroup& g) {
  json cosets = json::array();
  for (const auto& c : g.cosets())
    cosets.push_back({{"rotation", detail::to_json(c.rotation)}, {"translation", detail::to_json(c.translation)}});
  return {{"space", "flat"}, {"lattice", detail::to_json(g.lattice().basis())}, {"cosets", cosets}};
}

inline json to_json(const spherical::SphericalGroup& g) {
  if (const auto& lens = g.lens()) return {{"space", "spherical"}, {"lens", {{"N", lens->modulus}, {"q", lens->q}}}};
  json elements = json::array();
  for (const auto& e : g.elements()) elements.push_back({{"angles", detail::to_json(e.angle_fractions)}});
  return {{"space", "spherical"}, {"elements", elements}};
}

inline json to_json(const Group& g) {
  return std::visit([](const auto& x) { return to_json(x); }, g);
}

}  // namespace curvspec::io
