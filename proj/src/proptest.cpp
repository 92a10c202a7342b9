#include "charfock/proptest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "charfock/colligation.hpp"
#include "charfock/equiv.hpp"
#include "charfock/error.hpp"
#include "charfock/lifting.hpp"
#include "charfock/mobius.hpp"
#include "charfock/random.hpp"
#include "charfock/rowcon.hpp"

namespace charfock {

bool PropertyResult::ok() const {
  if (refuted > 0) return false;
  if (cases == 0) return true;
  return passed >= static_cast<int>(std::ceil(required_fraction * cases - 1e-9));
}

bool SuiteReport::ok() const {
  return std::all_of(properties.begin(), properties.end(), [](const PropertyResult& p) { return p.ok(); });
}

namespace {

enum class Outcome { Pass, Fail, Unknown, Refuted };

struct Case {
  Outcome outcome = Outcome::Fail;
  double residual = 0.0;
};

Case judged(double residual, double limit, bool extra = true) {
  return {residual <= limit && extra ? Outcome::Pass : Outcome::Fail, residual};
}

// Tags keep the streams of different properties apart under the same master seed.
enum Tag : std::uint64_t {
  kCharOracle = 1,
  kPopescu,
  kCncBrute,
  kDefectBounds,
  kDefectConstrained,
  kTransferOracle,
  kUnobservable,
  kStructure,
  kLiftingIdentity,
  kLiftingColligation,
  kGammaRoundTrip,
  kNormBound,
  kCoincidence,
  kRowconEquiv,
  kLiftingEquivalence,
  kRefutation,
  kMobiusLifting,
  kMobiusContraction,
};

PropertyResult run_cases(const std::string& name, int cases, std::uint64_t seed, Tag tag, double limit,
                         const std::function<Case(Rng&, int)>& body, double required_fraction = 1.0) {
  PropertyResult r;
  r.name = name;
  r.cases = std::max(cases, 0);
  r.limit = limit;
  r.required_fraction = required_fraction;
  r.worst = r.cases > 0 ? -std::numeric_limits<double>::infinity() : 0.0;
  const std::uint64_t stream = derive_seed(seed, tag);
  for (int i = 0; i < r.cases; ++i) {
    Rng rng(derive_seed(stream, static_cast<std::uint64_t>(i)));
    Case c;
    try {
      c = body(rng, i);
    } catch (const Error& ex) {
      c.outcome = Outcome::Fail;
      c.residual = std::numeric_limits<double>::infinity();
      if (r.note.empty()) r.note = "case " + std::to_string(i) + ": " + ex.what();
    }
    r.worst = std::max(r.worst, c.residual);
    switch (c.outcome) {
      case Outcome::Pass: ++r.passed; break;
      case Outcome::Unknown: ++r.unknown; break;
      case Outcome::Refuted: ++r.refuted; break;
      case Outcome::Fail: break;
    }
  }
  return r;
}

double projector_gap(const OrthonormalBasis& a, const OrthonormalBasis& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  if (a.empty()) return 0.0;
  return spectral_norm(a.projector() - b.projector());
}

Complex random_point(Rng& rng, double radius) {
  const double r = radius * rng.uniform();
  const double phi = 2.0 * std::numbers::pi * rng.uniform();
  return std::polar(r, phi);
}

// Runs a unitary search and escalates the restart budget once before giving up.
EquivalenceResult search_with_escalation(const std::function<EquivalenceResult(const SolverOptions&)>& solve,
                                         std::uint64_t seed) {
  SolverOptions opts;
  opts.seed = seed;
  EquivalenceResult res = solve(opts);
  if (res.status == Verdict::Unknown) {
    opts.restarts = 64;
    opts.seed = derive_seed(seed, 1);
    res = solve(opts);
  }
  return res;
}

Case verdict_case(const EquivalenceResult& res, double limit, double extra_residual = 0.0) {
  switch (res.status) {
    case Verdict::Confirmed: {
      const double r = std::max(res.residual, extra_residual);
      return {r <= limit ? Outcome::Pass : Outcome::Fail, r};
    }
    case Verdict::Unknown: return {Outcome::Unknown, 0.0};
    case Verdict::RefutedByInvariant: return {Outcome::Refuted, 0.0};
  }
  return {};
}

std::string verdict_note(const PropertyResult& r) {
  return "unknown " + std::to_string(r.unknown) + ", refuted " + std::to_string(r.refuted);
}

}  // namespace

PropertyResult prop_char_oracle(int cases, std::uint64_t seed) {
  return run_cases("char_symbol_vs_fock_oracle", cases, seed, kCharOracle, 1e-10, [](Rng& rng, int) {
    const RowContraction t = random_mixed_row_contraction(rng, rng.integer(1, 5), rng.integer(1, 3));
    return judged(max_coeff_deviation(char_symbol(t, 6), char_symbol_oracle(t, 6)), 1e-10);
  });
}

PropertyResult prop_popescu_colligation(int cases, std::uint64_t seed) {
  return run_cases("popescu_colligation_coisometric_observable", cases, seed, kPopescu, 1e-10, [](Rng& rng, int) {
    const RowContraction t = random_cnc_row_contraction(rng, rng.integer(1, 4), rng.integer(1, 3));
    const Colligation w = popescu_colligation(t);
    const ResidualCheck co = is_coisometric(w, 1e-10);
    const bool observable = unobservable_subspace(w).empty();
    const double dev = max_coeff_deviation(transfer_symbol(w, 4), char_symbol(t, 4));
    return judged(std::max(co.residual, dev), 1e-10, co.ok && observable);
  });
}

PropertyResult prop_cnc_bruteforce(int cases, std::uint64_t seed) {
  return run_cases("cnc_exact_vs_norm_scan", cases, seed, kCncBrute, 1e-6, [](Rng& rng, int) {
    const RowContraction t = random_mixed_row_contraction(rng, rng.integer(1, 4), rng.integer(1, 2));
    return judged(projector_gap(cnc_subspace(t), cnc_subspace_bruteforce(t, 20)), 1e-6);
  });
}

PropertyResult prop_defect_bounds(int cases, std::uint64_t seed) {
  return run_cases("defect_dimension_bounds", cases, seed, kDefectBounds, 0.0, [](Rng& rng, int) {
    const Index n = rng.integer(1, 5);
    const int d = rng.integer(1, 3);
    const RowContraction t = random_mixed_row_contraction(rng, n, d);
    const bool ok = defect_dim_admissible(n, d, defects(t).basis.size());
    return Case{ok ? Outcome::Pass : Outcome::Fail, ok ? 0.0 : 1.0};
  });
}

PropertyResult prop_defect_constrained(int cases, std::uint64_t seed) {
  return run_cases("defect_constrained_constructor", cases, seed, kDefectConstrained, 0.0, [](Rng&, int i) {
    const Index n = 1 + i % 4;
    const int d = 1 + (i / 4) % 3;
    bool ok = true;
    for (Index k = n * (d - 1); k <= n * d; ++k) {
      const RowContraction t = make_defect_constrained(n, d, k);
      ok = ok && validate(t).is_contraction && defects(t).basis.size() == k;
    }
    return Case{ok ? Outcome::Pass : Outcome::Fail, ok ? 0.0 : 1.0};
  });
}

PropertyResult prop_transfer_oracle(int cases, std::uint64_t seed) {
  return run_cases("transfer_symbol_vs_fock_oracle", cases, seed, kTransferOracle, 1e-10, [](Rng& rng, int) {
    const Colligation w = random_colligation(rng, rng.integer(1, 5), rng.integer(1, 3), rng.integer(1, 3),
                                             rng.integer(1, 3), 0.3 + 0.7 * rng.uniform());
    return judged(max_coeff_deviation(transfer_symbol(w, 6), transfer_oracle(w, 6)), 1e-10);
  });
}

PropertyResult prop_unobservable_krylov(int cases, std::uint64_t seed) {
  return run_cases("unobservable_subspace_vs_krylov", cases, seed, kUnobservable, 1e-8, [](Rng& rng, int) {
    const Index n = rng.integer(1, 5);
    Colligation w = random_colligation(rng, n, rng.integer(1, 2), 1, rng.integer(1, 2), 0.9);
    // Thin output maps and block-triangular state operators make the kernel nontrivial.
    if (rng.uniform() < 0.6 && n > 1) {
      const Index keep = rng.integer(1, static_cast<int>(n) - 1);
      const ComplexMatrix u = random_unitary(rng, n);
      for (auto& a : w.state_ops) {
        ComplexMatrix local = u.adjoint() * a * u;
        local.topRightCorner(keep, n - keep).setZero();
        a = u * local * u.adjoint();
      }
      ComplexMatrix c = w.output_map * u;
      c.rightCols(n - keep).setZero();
      w.output_map = c * u.adjoint();
    }
    return judged(projector_gap(unobservable_subspace(w), unobservable_subspace_krylov(w)), 1e-8);
  });
}

PropertyResult prop_structure_round_trip(int cases, std::uint64_t seed) {
  return run_cases("structure_construct_then_recover", cases, seed, kStructure, 1e-8, [](Rng& rng, int) {
    const RowContraction basic = random_cnc_row_contraction(rng, rng.integer(1, 4), rng.integer(1, 2));
    const DefectPair dp = defects(basic);
    const ComplexMatrix link = random_unitary(rng, dp.basis_star.size());
    const ComplexMatrix input = random_unitary(rng, dp.basis.size());
    const Colligation w = structure_reconstruct(basic, link, input);
    const StructureDecomposition s = structure_decompose(w);
    const double gap = std::max({s.reconstruction_residual, (s.link - link).norm(), (s.input_unitary - input).norm()});
    return judged(gap, 1e-8);
  });
}

PropertyResult prop_lifting_identity(int cases, std::uint64_t seed) {
  return run_cases("lifting_direct_vs_decomposed_vs_transfer", cases, seed, kLiftingIdentity, 1e-9, [](Rng& rng, int) {
    const Lifting e = random_minimal_lifting(rng, rng.integer(1, 3), rng.integer(1, 3), rng.integer(1, 2));
    const NCSeries decomposed = lifting_char_decomposed(e, 6);
    const double direct = max_coeff_deviation(lifting_char_direct(e, 6), decomposed);
    const double transfer = max_coeff_deviation(transfer_symbol(lifting_colligation(e), 6), decomposed);
    return judged(std::max(direct, transfer), 1e-9);
  });
}

PropertyResult prop_lifting_colligation(int cases, std::uint64_t seed) {
  return run_cases("lifting_colligation_coisometric_observable", cases, seed, kLiftingColligation, 1e-10,
                   [](Rng& rng, int) {
                     const Lifting e =
                         random_minimal_lifting(rng, rng.integer(1, 3), rng.integer(1, 3), rng.integer(1, 2));
                     const Colligation v = lifting_colligation(e);
                     const ResidualCheck co = is_coisometric(v, 1e-10);
                     return judged(co.residual, 1e-10, co.ok && unobservable_subspace(v).empty());
                   });
}

PropertyResult prop_gamma_round_trip(int cases, std::uint64_t seed) {
  return run_cases("link_build_then_extract", cases, seed, kGammaRoundTrip, 1e-9, [](Rng& rng, int) {
    const int d = rng.integer(1, 2);
    const RowContraction base = random_mixed_row_contraction(rng, rng.integer(1, 3), d);
    const RowContraction ext = random_cnc_row_contraction(rng, rng.integer(1, 3), d);
    const ComplexMatrix link = random_link(rng, defects(base).basis.size(), defects(ext).basis_star.size());
    const GammaData g = extract_gamma(build_lifting(base, ext, link));
    return judged(link.size() ? spectral_norm(g.link - link) : 0.0, 1e-9);
  });
}

PropertyResult prop_norm_bound(int cases, std::uint64_t seed) {
  return run_cases("norm_bound_single_variable", cases, seed, kNormBound, 1e-8, [](Rng& rng, int) {
    const Lifting e = random_minimal_lifting(rng, rng.integer(1, 3), rng.integer(1, 3), 1);
    double deficit = 0.0;
    bool ok = true;
    for (Complex lambda : {Complex(0.0), Complex(0.4), Complex(-0.4), Complex(0.0, 0.3)}) {
      const NormBoundReport nb = norm_bound_check(e, lambda);
      deficit = std::max(deficit, -nb.slack);
      ok = ok && nb.ok;
    }
    return judged(deficit, 1e-8, ok);
  });
}

PropertyResult prop_coincidence(int cases, std::uint64_t seed) {
  PropertyResult r = run_cases(
      "coincidence_round_trip", cases, seed, kCoincidence, 1e-8,
      [](Rng& rng, int i) {
        const Index n = rng.integer(1, 4);
        const RowContraction t = random_cnc_row_contraction(rng, n, rng.integer(1, 2));
        const RowContraction moved = conjugate(t, random_unitary(rng, n));
        const NCSeries s1 = char_symbol(t, 6);
        const NCSeries s2 = char_symbol(moved, 6);
        const EquivalenceResult res = search_with_escalation(
            [&](const SolverOptions& o) { return coincidence_solve(s1, s2, o); }, static_cast<std::uint64_t>(i));
        return verdict_case(res, 1e-8);
      },
      0.95);
  r.note = verdict_note(r);
  return r;
}

PropertyResult prop_rowcon_equiv(int cases, std::uint64_t seed) {
  PropertyResult r = run_cases(
      "row_contraction_unitary_equivalence", cases, seed, kRowconEquiv, 1e-8,
      [](Rng& rng, int i) {
        const Index n = rng.integer(1, 4);
        const RowContraction t = random_cnc_row_contraction(rng, n, rng.integer(1, 2));
        const RowContraction moved = conjugate(t, random_unitary(rng, n));
        const EquivalenceResult res = search_with_escalation(
            [&](const SolverOptions& o) { return rowcon_unitary_equiv(t, moved, o); }, static_cast<std::uint64_t>(i));
        double check = 0.0;
        if (res.status == Verdict::Confirmed) {
          const ComplexMatrix& u = res.unitaries.front();
          for (int k = 0; k < t.arity(); ++k) check = std::max(check, spectral_norm(u * t.block(k) - moved.block(k) * u));
        }
        return verdict_case(res, 1e-8, check);
      },
      0.95);
  r.note = verdict_note(r);
  return r;
}

PropertyResult prop_lifting_equivalence(int cases, std::uint64_t seed) {
  return run_cases("lifting_equivalence_and_block_equations", cases, seed, kLiftingEquivalence, 1e-8,
                   [](Rng& rng, int) {
                     const Lifting e =
                         random_minimal_lifting(rng, rng.integer(1, 3), rng.integer(1, 3), rng.integer(1, 2));
                     const Lifting moved = conjugate_extension(e, random_unitary(rng, e.ext_dim()));
                     const EquivalenceResult res =
                         equivalence_solve(lifting_char_decomposed(e, 6), lifting_char_decomposed(moved, 6));
                     if (res.status != Verdict::Confirmed) return verdict_case(res, 1e-8);
                     const LiftingUnitaryReport rec = reconstruct_lifting_unitary(e, moved, res.unitaries.front());
                     return verdict_case(res, 1e-8, rec.worst());
                   });
}

PropertyResult prop_refutation_sound(int cases, std::uint64_t seed) {
  return run_cases("distinct_symbols_never_confirmed", cases, seed, kRefutation, 0.0, [](Rng& rng, int i) {
    const Index n = rng.integer(1, 3);
    const int d = rng.integer(1, 2);
    const RowContraction t = random_row_contraction(rng, n, d, 0.8);
    const RowContraction other = random_row_contraction(rng, n, d, 0.4);
    SolverOptions opts;
    opts.seed = static_cast<std::uint64_t>(i);
    const EquivalenceResult res = coincidence_solve(char_symbol(t, 4), char_symbol(other, 4), opts);
    const bool ok = res.status != Verdict::Confirmed;
    return Case{ok ? Outcome::Pass : Outcome::Fail, ok ? 0.0 : 1.0};
  });
}

PropertyResult prop_mobius_lifting(int cases, std::uint64_t seed) {
  PropertyResult r = run_cases("mobius_lifting_relations", cases, seed, kMobiusLifting, 0.0, [](Rng& rng, int) {
    const Lifting e = random_minimal_lifting(rng, rng.integer(1, 3), rng.integer(1, 3), 1);
    const Complex a = random_point(rng, 0.5);
    const LiftingCfReport rep = verify_lifting_cf(e, a, default_samples(), 40);
    // Pointwise excess over the truncation bound; negative when everything holds.
    const double excess = std::max(rep.conjugation.worst_excess, rep.factored.worst_excess);
    return Case{rep.ok ? Outcome::Pass : Outcome::Fail, excess};
  });
  return r;
}

PropertyResult prop_mobius_contraction(int cases, std::uint64_t seed) {
  return run_cases("mobius_contraction_relation", cases, seed, kMobiusContraction, 0.0, [](Rng& rng, int) {
    const RowContraction t = random_mixed_row_contraction(rng, rng.integer(1, 4), 1);
    const CfRelationReport rep = verify_cf_relation(t.block(0), random_point(rng, 0.5), default_samples(), 40);
    return Case{rep.ok ? Outcome::Pass : Outcome::Fail, rep.worst_excess};
  });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"rowcon", "colligation", "lifting", "equiv", "mobius", "all"};
  return names;
}

SuiteReport run_suite(const std::string& suite, int cases, std::uint64_t seed) {
  if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end()) {
    throw Error(ErrorCode::BadParameter, "unknown suite '" + suite + "'");
  }
  if (cases < 0) throw Error(ErrorCode::BadParameter, "case count must be nonnegative");
  SuiteReport r{suite, cases, seed, {}};
  auto want = [&](const char* name) { return suite == "all" || suite == name; };
  auto& p = r.properties;
  if (want("rowcon")) {
    p.push_back(prop_char_oracle(cases, seed));
    p.push_back(prop_popescu_colligation(cases, seed));
    p.push_back(prop_cnc_bruteforce(cases, seed));
    p.push_back(prop_defect_bounds(cases, seed));
    p.push_back(prop_defect_constrained(cases, seed));
  }
  if (want("colligation")) {
    p.push_back(prop_transfer_oracle(cases, seed));
    p.push_back(prop_unobservable_krylov(cases, seed));
    p.push_back(prop_structure_round_trip(cases, seed));
  }
  if (want("lifting")) {
    p.push_back(prop_lifting_identity(cases, seed));
    p.push_back(prop_lifting_colligation(cases, seed));
    p.push_back(prop_gamma_round_trip(cases, seed));
    p.push_back(prop_norm_bound(cases, seed));
  }
  if (want("equiv")) {
    p.push_back(prop_coincidence(cases, seed));
    p.push_back(prop_rowcon_equiv(cases, seed));
    p.push_back(prop_lifting_equivalence(cases, seed));
    p.push_back(prop_refutation_sound(cases, seed));
  }
  if (want("mobius")) {
    p.push_back(prop_mobius_lifting(cases, seed));
    p.push_back(prop_mobius_contraction(cases, seed));
  }
  return r;
}

namespace {

std::string sci(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

}  // namespace

Json report_to_json(const SuiteReport& r) {
  Json props = Json::array();
  for (const auto& p : r.properties) {
    props.push_back({{"name", p.name},
                     {"cases", p.cases},
                     {"passed", p.passed},
                     {"unknown", p.unknown},
                     {"refuted", p.refuted},
                     {"worst", sci(p.worst)},
                     {"limit", sci(p.limit)},
                     {"required_fraction", p.required_fraction},
                     {"ok", p.ok()},
                     {"note", p.note}});
  }
  return {{"suite", r.suite}, {"cases", r.cases}, {"seed", r.seed}, {"ok", r.ok()}, {"properties", props}};
}

std::string report_to_text(const SuiteReport& r) {
  std::ostringstream out;
  out << "suite " << r.suite << "  cases " << r.cases << "  seed " << r.seed << "\n";
  for (const auto& p : r.properties) {
    out << "  " << (p.ok() ? "ok  " : "FAIL") << "  " << p.name << "  " << p.passed << "/" << p.cases
        << "  worst " << sci(p.worst) << "  limit " << sci(p.limit);
    if (!p.note.empty()) out << "  (" << p.note << ")";
    out << "\n";
  }
  out << (r.ok() ? "all properties hold" : "some properties failed") << "\n";
  return out.str();
}

}  // namespace charfock
