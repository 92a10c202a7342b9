// Acceptance run: one line per criterion. `acceptance N` runs only criterion N.
// Worked-example references come from data/golden (exact arithmetic, see
// tools/gen_golden.py), not from the library.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "charfock/equiv.hpp"
#include "charfock/io.hpp"
#include "charfock/lifting.hpp"
#include "charfock/proptest.hpp"
#include "charfock/rowcon.hpp"

using namespace charfock;

namespace {

constexpr std::uint64_t kSeed = 20240611;

struct Outcome {
  bool pass = false;
  std::string detail;
};

Json golden(const std::string& name) { return read_json_file(std::string(CHARFOCK_GOLDEN_DIR) + "/" + name + ".json"); }

double matrix_gap(const ComplexMatrix& m, const ComplexMatrix& expected) {
  if (m.rows() != expected.rows() || m.cols() != expected.cols()) return std::numeric_limits<double>::infinity();
  return (m - expected).cwiseAbs().maxCoeff();
}

double scalar_gap(const ComplexMatrix& m, const Json& expected) {
  if (m.rows() != 1 || m.cols() != 1) return std::numeric_limits<double>::infinity();
  return std::abs(m(0, 0) - complex_from_json(expected));
}

// Deviation of entry (0, col) of every coefficient from a list of scalars.
double entry_gap(const NCSeries& s, Index col, const Json& coeffs) {
  if (static_cast<int>(coeffs.size()) != s.degree() + 1) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (int n = 0; n <= s.degree(); ++n) {
    worst = std::max(worst, std::abs(s.coeff(n)(0, col) - complex_from_json(coeffs[static_cast<std::size_t>(n)])));
  }
  return worst;
}

NCSeries scalar_series(const Json& coeffs) {
  NCSeries s(1, 1, 1, static_cast<int>(coeffs.size()) - 1);
  for (std::size_t n = 0; n < coeffs.size(); ++n) {
    s.set_coeff(static_cast<Index>(n), ComplexMatrix::Constant(1, 1, complex_from_json(coeffs[n])));
  }
  return s;
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome from_properties(const std::vector<PropertyResult>& props, double elapsed, double budget) {
  Outcome o{elapsed < budget, {}};
  for (const PropertyResult& p : props) {
    o.pass = o.pass && p.ok();
    o.detail += p.name + " " + std::to_string(p.passed) + "/" + std::to_string(p.cases) + " worst " +
                fmt("%.2e", p.worst);
    if (p.unknown) o.detail += " unknown " + std::to_string(p.unknown);
    if (p.refuted) o.detail += " refuted " + std::to_string(p.refuted);
    o.detail += "; ";
  }
  o.detail += fmt("%.1fs", elapsed);
  return o;
}

Outcome timed_properties(const std::vector<std::function<PropertyResult()>>& runs, double budget) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<PropertyResult> props;
  for (const auto& f : runs) props.push_back(f());
  return from_properties(props, seconds_since(t0), budget);
}

// nilpotent extension: link, D_E and both ambient entries
Outcome criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  const Json g = golden("nilpotent_extension");
  const Lifting e = lifting_from_json(g["lifting"]);
  const double link = scalar_gap(extract_gamma(e).link, g["gamma"]);
  const double de = matrix_gap(defects(e.assembled()).defect, matrix_from_json(g["D_E"]));
  const NCSeries theta = lifting_char_ambient(e, g["theta_degree"].get<int>());
  const double first = entry_gap(theta, 0, g["theta"][0]);
  const double second = entry_gap(theta, 1, g["theta"][1]);
  const double worst = std::max({link, de, first, second});
  const double elapsed = seconds_since(t0);
  return {worst < 1e-12 && elapsed < 1.0, "worst " + fmt("%.2e", worst) + ", " + fmt("%.3fs", elapsed)};
}

// half extension: theta D_E against the displayed closed forms
Outcome criterion_2() {
  const auto t0 = std::chrono::steady_clock::now();
  const Json g = golden("half_extension");
  const Lifting e = lifting_from_json(g["lifting"]);
  const GammaData link = extract_gamma(e);
  const double structure = std::max({scalar_gap(link.link, g["gamma"]), scalar_gap(link.link_defect, g["link_defect"]),
                                     matrix_gap(defects(e.assembled()).defect, matrix_from_json(g["D_E_displayed"])),
                                     matrix_gap(sigma_map(e).block_map, matrix_from_json(g["sigma_D_E"]))});
  const NCSeries theta = lifting_char_ambient(e, g["theta_degree"].get<int>(), true);
  const double first = entry_gap(theta, 0, g["theta_D_E_first"]);
  const double displayed = entry_gap(theta, 1, g["theta_D_E_second_displayed"]);
  const double with_defect = entry_gap(theta, 1, g["theta_D_E_second_with_defect"]);
  const double elapsed = seconds_since(t0);
  const bool pass = std::max({structure, first, displayed}) < 1e-10 && elapsed < 1.0;
  return {pass, "gamma/D_E/sigma " + fmt("%.2e", structure) + ", first entry " + fmt("%.2e", first) +
                    ", second entry as displayed " + fmt("%.2e", displayed) +
                    " (with the D_A factor restored: " + fmt("%.2e", with_defect) + "), " + fmt("%.3fs", elapsed)};
}

// Blaschke liftings: structure and equivalence to the Blaschke factor at degree 20
Outcome criterion_3() {
  Outcome o{true, {}};
  for (const char* name : {"blaschke_alpha_0.3", "blaschke_alpha_0.5i"}) {
    const Json g = golden(name);
    const Lifting e = lifting_from_json(g["lifting"]);
    const GammaData link = extract_gamma(e);
    const double structure =
        std::max({scalar_gap(e.coupling()[0], g["B"]), scalar_gap(link.link, g["gamma"]),
                  link.link_defect.size() ? link.link_defect.norm() : 0.0,
                  matrix_gap(defects(e.assembled()).defect, matrix_from_json(g["D_E"]))});
    const NCSeries target = scalar_series(g["blaschke"]);
    const EquivalenceResult eq = equivalence_solve(lifting_char_decomposed(e, target.degree()), target);
    const bool pass = structure < 1e-12 && eq.status == Verdict::Confirmed && eq.residual < 1e-8;
    o.pass = o.pass && pass;
    o.detail += std::string(name) + ": structure " + fmt("%.2e", structure) + ", " + to_string(eq.status) +
                " residual " + fmt("%.2e", eq.residual) + "; ";
  }
  return o;
}

Outcome criterion_4() {
  return timed_properties({[] { return prop_char_oracle(200, kSeed); }, [] { return prop_transfer_oracle(200, kSeed); }},
                          60.0);
}

Outcome criterion_5() {
  return timed_properties(
      {[] { return prop_popescu_colligation(200, kSeed); }, [] { return prop_lifting_colligation(200, kSeed); }}, 120.0);
}

Outcome criterion_6() { return timed_properties({[] { return prop_lifting_identity(200, kSeed); }}, 120.0); }

Outcome criterion_7() { return timed_properties({[] { return prop_coincidence(100, kSeed); }}, 120.0); }

Outcome criterion_8() { return timed_properties({[] { return prop_lifting_equivalence(100, kSeed); }}, 120.0); }

Outcome criterion_9() {
  return timed_properties(
      {[] { return prop_defect_bounds(200, kSeed); }, [] { return prop_defect_constrained(12, kSeed); }}, 120.0);
}

Outcome criterion_10() { return timed_properties({[] { return prop_structure_round_trip(100, kSeed); }}, 120.0); }

Outcome criterion_11() { return timed_properties({[] { return prop_norm_bound(100, kSeed); }}, 120.0); }

Outcome criterion_12() { return timed_properties({[] { return prop_mobius_lifting(50, kSeed); }}, 60.0); }

Outcome criterion_13() { return timed_properties({[] { return prop_cnc_bruteforce(100, kSeed); }}, 120.0); }

struct Criterion {
  const char* title;
  Outcome (*run)();
};

const Criterion kCriteria[] = {
    {"nilpotent extension link, defect and symbol", criterion_1},
    {"half extension symbol times defect", criterion_2},
    {"Blaschke liftings equivalent to the Blaschke factor", criterion_3},
    {"symbol and transfer function oracles", criterion_4},
    {"Popescu and lifting colligations realize the symbols", criterion_5},
    {"decomposed and direct lifting symbols agree", criterion_6},
    {"coincidence solver on conjugated row contractions", criterion_7},
    {"equivalent lifting symbols give a unitary equivalence", criterion_8},
    {"defect dimension bounds and extremal constructions", criterion_9},
    {"structure theorem round trip", criterion_10},
    {"norm bound from the link", criterion_11},
    {"Moebius transform of liftings", criterion_12},
    {"cnc subspace against brute force", criterion_13},
};

}  // namespace

int main(int argc, char** argv) {
  const int count = static_cast<int>(std::size(kCriteria));
  int only = 0;
  if (argc > 1) {
    only = std::atoi(argv[1]);
    if (only < 1 || only > count) {
      std::fprintf(stderr, "criterion must be 1..%d\n", count);
      return 2;
    }
  }
  bool all_pass = true;
  for (int k = 1; k <= count; ++k) {
    if (only && k != only) continue;
    Outcome o;
    try {
      o = kCriteria[k - 1].run();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    all_pass = all_pass && o.pass;
    std::printf("[%s] criterion %d: %s (%s)\n", o.pass ? "PASS" : "FAIL", k, kCriteria[k - 1].title, o.detail.c_str());
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}
