#pragma once

// Deciders for equivalence (one input unitary), coincidence (input and output
// unitaries) of symbols, and unitary equivalence of row contractions.
// Verdicts are three-valued: a failed search is never reported as a refutation.

#include <cstdint>
#include <string>
#include <vector>

#include "charfock/fockseries.hpp"
#include "charfock/lifting.hpp"
#include "charfock/rowcon.hpp"

namespace charfock {

enum class Verdict { Confirmed, RefutedByInvariant, Unknown };

const char* to_string(Verdict v);

struct EquivalenceResult {
  Verdict status = Verdict::Unknown;
  /// equivalence: {v}; coincidence: {U (input), U~ (output)}; row contractions: {U}.
  std::vector<ComplexMatrix> unitaries;
  double residual = 0.0;
  double tol = 0.0;
  std::string certificate;  // reason for a refutation
  int restarts_used = 0;
  /// Largest increase of the objective over any half-step (should be <= rounding).
  double max_objective_increase = 0.0;
};

struct SolverOptions {
  int restarts = 16;
  int iters = 500;
  std::uint64_t seed = 0;
  double tol = -1.0;  // negative: 1e-8 * (1 + sum of coefficient norms)
};

/// s1 = s2 v for a unitary v from the input space of s1 to that of s2.
EquivalenceResult equivalence_solve(const NCSeries& s1, const NCSeries& s2, double tol = -1.0);

/// U~ c1_w = c2_w U for every word, U and U~ unitary.
EquivalenceResult coincidence_solve(const NCSeries& s1, const NCSeries& s2, const SolverOptions& options = {});

/// U T_i = T2_i U for every i.
EquivalenceResult rowcon_unitary_equiv(const RowContraction& t1, const RowContraction& t2,
                                       const SolverOptions& options = {});

/// Default tolerance 1e-8 * (1 + sum_w |c_w|).
double default_symbol_tol(const NCSeries& s);

struct LiftingUnitaryReport {
  ComplexMatrix unitary;          // H_A -> H_A'
  double unitarity_residual = 0.0;
  double state_residual = 0.0;    // |A'_i* U - U A_i*| over i
  double output_residual = 0.0;   // |C' U - C|
  double input_residual = 0.0;    // |B' v - (+U) B|
  double feedthrough_residual = 0.0;  // |D' v - D|
  double coupling_residual = 0.0; // |U B_i - B'_i| on the liftings
  double extension_residual = 0.0;  // |U A_i - A'_i U| on the liftings
  double worst() const;
};

/// Given liftings of the same base with symbols related by s1 = s2 v, recovers the
/// unitary between the extension spaces from the observability maps of their
/// lifting colligations and reports every block equation.
LiftingUnitaryReport reconstruct_lifting_unitary(const Lifting& e1, const Lifting& e2, const ComplexMatrix& v,
                                                 double rank_tol = kDefaultRankTol);

}  // namespace charfock
