#pragma once

// Seeded property suites. Every case draws from its own generator seeded by
// derive_seed(property seed, case index), so reports depend only on
// (suite, cases, seed).

#include <cstdint>
#include <string>
#include <vector>

#include "charfock/io.hpp"

namespace charfock {

struct PropertyResult {
  std::string name;
  int cases = 0;
  int passed = 0;
  double worst = 0.0;  // largest residual seen (or largest deficit for bounds)
  double limit = 0.0;
  /// Fraction of cases that must pass; 1 unless the property is a search.
  double required_fraction = 1.0;
  int unknown = 0;  // solver searches that ended without a verdict
  int refuted = 0;  // solver refutations of a true relation (always a failure)
  std::string note;

  bool ok() const;
};

struct SuiteReport {
  std::string suite;
  int cases = 0;
  std::uint64_t seed = 0;
  std::vector<PropertyResult> properties;

  bool ok() const;
};

// rowcon
PropertyResult prop_char_oracle(int cases, std::uint64_t seed);
PropertyResult prop_popescu_colligation(int cases, std::uint64_t seed);
PropertyResult prop_cnc_bruteforce(int cases, std::uint64_t seed);
PropertyResult prop_defect_bounds(int cases, std::uint64_t seed);
/// Case i covers every admissible k for the i-th (n, d) with n <= 4, d <= 3.
PropertyResult prop_defect_constrained(int cases, std::uint64_t seed);

// colligation
PropertyResult prop_transfer_oracle(int cases, std::uint64_t seed);
PropertyResult prop_unobservable_krylov(int cases, std::uint64_t seed);
PropertyResult prop_structure_round_trip(int cases, std::uint64_t seed);

// lifting
PropertyResult prop_lifting_identity(int cases, std::uint64_t seed);
PropertyResult prop_lifting_colligation(int cases, std::uint64_t seed);
PropertyResult prop_gamma_round_trip(int cases, std::uint64_t seed);
PropertyResult prop_norm_bound(int cases, std::uint64_t seed);

// equiv
PropertyResult prop_coincidence(int cases, std::uint64_t seed);
PropertyResult prop_rowcon_equiv(int cases, std::uint64_t seed);
PropertyResult prop_lifting_equivalence(int cases, std::uint64_t seed);
PropertyResult prop_refutation_sound(int cases, std::uint64_t seed);

// mobius
PropertyResult prop_mobius_lifting(int cases, std::uint64_t seed);
PropertyResult prop_mobius_contraction(int cases, std::uint64_t seed);

const std::vector<std::string>& suite_names();

/// Throws BadParameter for an unknown suite or a negative case count.
SuiteReport run_suite(const std::string& suite, int cases, std::uint64_t seed);

Json report_to_json(const SuiteReport& r);
std::string report_to_text(const SuiteReport& r);

}  // namespace charfock
