#pragma once

// Colligations [[A, B], [C, D]] : state (+) input -> d-fold state (+) output,
// their transfer symbols and the structure theorem for co-isometric,
// observable colligations.

#include <string>
#include <vector>

#include "charfock/fockseries.hpp"
#include "charfock/numlin.hpp"
#include "charfock/rowcon.hpp"

namespace charfock {

struct Colligation {
  int arity = 0;
  Index state_dim = 0;
  Index in_dim = 0;
  Index out_dim = 0;
  std::vector<ComplexMatrix> state_ops;  // A_i, state_dim x state_dim
  ComplexMatrix input_map;               // B, (arity*state_dim) x in_dim
  ComplexMatrix output_map;              // C, out_dim x state_dim
  ComplexMatrix feedthrough;             // D, out_dim x in_dim

  /// Infers dimensions from the blocks and checks every shape.
  static Colligation from_blocks(std::vector<ComplexMatrix> a, ComplexMatrix b, ComplexMatrix c,
                                 ComplexMatrix d);

  /// j-th block of B (0-based), state_dim x in_dim.
  ComplexMatrix input_block(int j) const;
  /// The full operator, (arity*state_dim + out_dim) x (state_dim + in_dim).
  ComplexMatrix matrix() const;
  void check_shapes() const;
};

/// Coefficients D and C A_{k_m}...A_{k_1} B_j for the word (j, k_1, ..., k_m).
NCSeries transfer_symbol(const Colligation& w, int degree);

/// The same symbol through explicit truncated Fock-space operators.
NCSeries transfer_oracle(const Colligation& w, int degree);

struct ResidualCheck {
  bool ok = false;
  double residual = 0.0;
};

ResidualCheck is_coisometric(const Colligation& w, double tol = 1e-10);

/// Common kernel of C A_alpha over all words; empty iff W is observable.
OrthonormalBasis unobservable_subspace(const Colligation& w, double rank_tol = kDefaultRankTol);

/// Reference: kernel of the stacked matrices C A_w, |w| <= state_dim.
OrthonormalBasis unobservable_subspace_krylov(const Colligation& w, double rank_tol = kDefaultRankTol);

struct StructureReport {
  bool coisometric = false;
  double coisometry_residual = 0.0;
  bool observable = false;
  Index input_dim = 0;
  Index defect_dim = 0;  // dim of the defect space of the recovered row contraction
  bool output_dim_hypothesis = false;  // n(d-1) <= dim output <= nd for some n
  std::vector<std::string> notes;
};

struct StructureDecomposition {
  RowContraction basic;       // row contraction whose adjoint is the basic operator
  DefectPair basic_defects;
  ComplexMatrix link;         // out_dim x q, from defect_star coordinates
  ComplexMatrix input_unitary;  // p x in_dim, input -> defect coordinates
  double link_coisometry_residual = 0.0;
  double input_unitarity_residual = 0.0;
  double feedthrough_residual = 0.0;
  double reconstruction_residual = 0.0;
  StructureReport report;
};

/// Splits a co-isometric observable colligation into a link co-isometry and an
/// input unitary around the defect colligation of its basic operator.
StructureDecomposition structure_decompose(const Colligation& w, double rank_tol = kDefaultRankTol,
                                           double tol = 1e-8);

/// Rebuilds [[I,0],[0,link]] [[A*, D_A u], [D_{*,A}, -A u]] in the given coordinates.
Colligation structure_reconstruct(const RowContraction& basic, const ComplexMatrix& link,
                                  const ComplexMatrix& input_unitary, double rank_tol = kDefaultRankTol);

/// (P_m, 0, ..., 0) with m = nd - k, whose defect space has dimension k.
RowContraction make_defect_constrained(Index n, int d, Index k);

/// Integer bounds n(d-1) <= k <= nd on the defect dimension.
bool defect_dim_admissible(Index n, int d, Index k);

}  // namespace charfock
