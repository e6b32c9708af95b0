// curvspec: spectra and isospectrality checks for spherical and flat space forms.
//
// Exit codes: 0 equal / success, 1 unequal, 2 parse or domain error,
// 3 group invariant or integrality failure, 4 space or dimension mismatch.

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "curvspec/curvspec.hpp"

namespace {

using namespace curvspec;

constexpr int kEqual = 0;
constexpr int kUnequal = 1;
constexpr int kParse = 2;
constexpr int kInvariant = 3;
constexpr int kMismatch = 4;

struct Mismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

// A group argument is a JSON file, a fixture name, or "lens:N:q1,q2,...".
io::Group load_group(const std::string& arg) {
  if (std::filesystem::exists(arg)) return io::group_from_file(arg);
  if (flat::is_fixture(arg)) return flat::fixture(arg);
  if (arg.rfind("lens:", 0) == 0) {
    const auto rest = arg.substr(5);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) throw ParseError("lens shorthand is lens:N:q1,q2,...");
    io::json q = io::json::array();
    std::stringstream list(rest.substr(colon + 1));
    for (std::string item; std::getline(list, item, ',');) q.push_back(item);
    return io::group_from_json({{"space", "spherical"}, {"lens", {{"N", rest.substr(0, colon)}, {"q", q}}}});
  }
  throw ParseError("'" + arg + "' is neither a file nor a fixture name");
}

// "all", "3" or "1..4", clipped to 0..n.
std::vector<int> parse_degrees(const std::string& spec, int n) {
  auto to_int = [&](const std::string& s) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError("bad degree '" + spec + "'");
    return v;
  };
  int lo = 0;
  int hi = n;
  if (spec != "all") {
    const auto dots = spec.find("..");
    if (dots == std::string::npos) {
      lo = hi = to_int(spec);
    } else {
      lo = to_int(spec.substr(0, dots));
      hi = to_int(spec.substr(dots + 2));
    }
  }
  if (lo < 0 || hi > n || lo > hi) throw DomainError("degree range " + spec + " outside 0.." + std::to_string(n));
  std::vector<int> out;
  for (int p = lo; p <= hi; ++p) out.push_back(p);
  return out;
}

Rational flat_cutoff(const std::optional<std::string>& cutoff) {
  const Rational c = cutoff ? parse_rational(*cutoff) : Rational(2);
  if (c < 0) throw DomainError("cutoff must be nonnegative");
  return c;
}

std::int64_t spherical_cutoff(const std::optional<std::string>& cutoff) {
  const Rational c = cutoff ? parse_rational(*cutoff) : Rational(100);
  if (c < 0) throw DomainError("cutoff must be nonnegative");
  return floor(c);
}

struct Row {
  int p;
  std::string exact;
  double value;
  std::int64_t multiplicity;
};

void print_rows(const std::vector<Row>& rows, const std::string& format) {
  if (format == "csv") {
    std::cout << "p,eigenvalue_exact,eigenvalue,multiplicity\n";
    for (const auto& r : rows)
      std::cout << r.p << ',' << r.exact << ',' << format_double(r.value) << ',' << r.multiplicity << '\n';
    return;
  }
  std::cout << "p  eigenvalue_exact  eigenvalue  multiplicity\n";
  for (const auto& r : rows)
    std::cout << r.p << "  " << r.exact << "  " << format_double(r.value) << "  " << r.multiplicity << '\n';
}

std::string flat_exact(const Rational& mu, bool ascii) {
  if (mu == 0) return "0";
  return (ascii ? "4pi^2*" : "4π²·") + to_string(mu);
}

int cmd_spectrum(const std::string& group_arg, const std::string& degrees,
                 const std::optional<std::string>& cutoff, const std::string& format) {
  const io::Group group = load_group(group_arg);
  const int n = io::dimension(group);
  std::vector<Row> rows;
  for (int p : parse_degrees(degrees, n)) {
    if (const auto* g = std::get_if<flat::BieberbachGroup>(&group)) {
      const auto s = flat::spectrum(*g, p, flat_cutoff(cutoff));
      for (const auto& [mu, mult] : s.multiplicities)
        rows.push_back({p, flat_exact(mu, format == "csv"), 4 * M_PI * M_PI * to_double(mu), mult});
    } else {
      const auto s = spherical::p_spectrum(std::get<spherical::SphericalGroup>(group), p, spherical_cutoff(cutoff));
      for (const auto& [lambda, mult] : s.multiplicities)
        rows.push_back({p, std::to_string(lambda), static_cast<double>(lambda), mult});
    }
  }
  print_rows(rows, format);
  return kEqual;
}

void require_comparable(const io::Group& a, const io::Group& b) {
  if (io::is_flat(a) != io::is_flat(b)) throw Mismatch("groups live on different spaces");
  if (io::dimension(a) != io::dimension(b))
    throw Mismatch("dimension mismatch: " + std::to_string(io::dimension(a)) + " vs " +
                   std::to_string(io::dimension(b)));
}

// One line per degree; returns whether the degree agrees.
bool compare_degree(const io::Group& a, const io::Group& b, int p, const std::string& mode,
                    const std::optional<std::string>& cutoff) {
  std::ostringstream line;
  line << "p=" << p << ": ";
  bool equal = true;
  if (io::is_flat(a)) {
    const auto& g1 = std::get<flat::BieberbachGroup>(a);
    const auto& g2 = std::get<flat::BieberbachGroup>(b);
    const Rational mu_max = flat_cutoff(cutoff);
    if (mode == "tau") {
      equal = flat::tau_equivalent(g1, g2, p, mu_max);
      line << (equal ? "tau-equivalent" : "not tau-equivalent");
    } else {
      const auto c = mode == "spec" ? flat::compare(g1, g2, p, mu_max)
                                    : flat::compare_half(g1, g2, p, mode == "half-closed", mu_max);
      equal = c.isospectral;
      if (equal) line << "equal";
      else
        line << "differs at " << flat_exact(c.discrepancy->mu, false) << " (" << c.discrepancy->first << " vs "
             << c.discrepancy->second << ")";
    }
  } else {
    const auto& g1 = std::get<spherical::SphericalGroup>(a);
    const auto& g2 = std::get<spherical::SphericalGroup>(b);
    const std::int64_t lambda_max = spherical_cutoff(cutoff);
    if (mode == "tau") {
      equal = spherical::tau_equivalent(g1, g2, p, spherical::k_max_for_cutoff(g1.dimension(), p, lambda_max));
      line << (equal ? "tau-equivalent" : "not tau-equivalent");
    } else {
      const auto c = mode == "spec" ? spherical::compare(g1, g2, p, lambda_max)
                                    : spherical::compare_half(g1, g2, p, mode == "half-closed", lambda_max);
      equal = c.isospectral;
      if (equal) line << "equal";
      else
        line << "differs at " << c.discrepancy->eigenvalue << " (" << c.discrepancy->first << " vs "
             << c.discrepancy->second << ")";
    }
  }
  std::cout << line.str() << '\n';
  return equal;
}

int cmd_compare(const std::string& first, const std::string& second, const std::string& degrees,
                const std::optional<std::string>& cutoff, const std::string& mode) {
  const io::Group a = load_group(first);
  const io::Group b = load_group(second);
  require_comparable(a, b);
  bool all_equal = true;
  for (int p : parse_degrees(degrees, io::dimension(a))) all_equal = compare_degree(a, b, p, mode, cutoff) && all_equal;
  return all_equal ? kEqual : kUnequal;
}

int cmd_betti(const std::string& group_arg, const std::string& degrees) {
  const io::Group group = load_group(group_arg);
  for (int p : parse_degrees(degrees, io::dimension(group))) {
    std::int64_t b = 0;
    if (const auto* g = std::get_if<flat::BieberbachGroup>(&group)) b = flat::betti(*g, p);
    else b = spherical::p_spectrum(std::get<spherical::SphericalGroup>(group), p, 0).at(0);
    std::cout << "b" << p << " = " << b << '\n';
  }
  return kEqual;
}

int cmd_dict(int n, int p, const std::string& lambda_text) {
  const Rational lambda = parse_rational(lambda_text);
  const auto terms = hyperbolic::multiplicity_decomposition(n, p, lambda);
  std::cout << "d_" << to_string(lambda) << "(tau_" << p << ") = " << hyperbolic::decomposition_label(terms) << '\n';
  for (const auto& t : terms) {
    std::cout << "  " << hyperbolic::term_label(t) << "  kind=" << hyperbolic::to_string(t.kind)
              << "  rho=" << to_string(t.rho);
    if (t.nu) std::cout << "  nu=" << t.nu->to_string();
    std::cout << '\n';
  }
  return kEqual;
}

int cmd_fixtures(const std::optional<std::string>& dump) {
  if (dump) {
    std::cout << io::to_json(flat::fixture(*dump)).dump(2) << '\n';
    return kEqual;
  }
  for (const auto& [name, g] : flat::fixtures())
    std::cout << name << "  n=" << g.dimension() << "  |F|=" << g.holonomy_order()
              << (flat::is_orientable(g) ? "  orientable" : "  non-orientable") << '\n';
  return kEqual;
}

void apply_tolerance_from_env() {
  const char* env = std::getenv("CURVSPEC_TOL");
  if (!env) return;
  const std::string text(env);
  double tol = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), tol);
  if (ec != std::errc() || ptr != text.data() + text.size()) throw ParseError("CURVSPEC_TOL is not a number");
  try {
    set_integrality_tolerance(tol);
  } catch (const Error& e) {
    throw ParseError(std::string("CURVSPEC_TOL: ") + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hodge-Laplace spectra of spherical and flat space forms"};
  app.require_subcommand(1);

  std::string group, group2, degrees = "all", format = "table", mode = "spec", lambda;
  std::optional<std::string> cutoff, dump;
  int n = 0, p = 0;

  auto* spectrum = app.add_subcommand("spectrum", "p-spectrum of a group up to a cutoff");
  spectrum->add_option("group", group, "JSON file, fixture name or lens:N:q1,...")->required();
  spectrum->add_option("--p", degrees, "degree: N, all, or a..b");
  spectrum->add_option("--cutoff", cutoff, "mu_max (flat, default 2) or lambda_max (spherical, default 100)");
  spectrum->add_option("--format", format)->check(CLI::IsMember({"table", "csv"}));

  auto* compare = app.add_subcommand("compare", "compare two groups degree by degree");
  compare->add_option("first", group)->required();
  compare->add_option("second", group2)->required();
  compare->add_option("--p", degrees, "degree: N, all, or a..b");
  compare->add_option("--cutoff", cutoff);
  compare->add_option("--mode", mode)->check(CLI::IsMember({"spec", "tau", "half-closed", "half-coclosed"}));

  auto* betti = app.add_subcommand("betti", "Betti numbers");
  betti->add_option("group", group)->required();
  betti->add_option("--p", degrees);

  auto* dict = app.add_subcommand("dict", "hyperbolic eigenvalue to representation dictionary");
  dict->add_option("--n", n)->required();
  dict->add_option("--p", p)->required();
  dict->add_option("--lambda", lambda)->required();

  auto* fixtures = app.add_subcommand("fixtures", "list built-in flat manifolds");
  fixtures->add_option("--dump", dump, "print a fixture as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  try {
    apply_tolerance_from_env();
    if (*spectrum) return cmd_spectrum(group, degrees, cutoff, format);
    if (*compare) return cmd_compare(group, group2, degrees, cutoff, mode);
    if (*betti) return cmd_betti(group, degrees);
    if (*dict) return cmd_dict(n, p, lambda);
    if (*fixtures) return cmd_fixtures(dump);
  } catch (const Mismatch& e) {
    std::cerr << "mismatch: " << e.what() << '\n';
    return kMismatch;
  } catch (const InvariantError& e) {
    std::cerr << "invariant violated: " << e.what() << '\n';
    return kInvariant;
  } catch (const IntegralityError& e) {
    std::cerr << "integrality check failed: " << e.what() << '\n';
    return kInvariant;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParse;
  }
  return kParse;
}
