#pragma once

// Block lower-triangular liftings E_i = [[C_i, 0], [B_i, A_i]] of a row
// contraction C by a row contraction A, and their characteristic symbols.
//
// Coordinates: the link contraction maps defect_star(A) coordinates to
// defect(C) coordinates. The lifted defect space is ordered as the d-fold sum
// of (H_C + H_A); block formulas are written in the order (H_C^d) + (H_A^d)
// and interleave_permutation() converts between the two.

#include <vector>

#include "charfock/colligation.hpp"
#include "charfock/fockseries.hpp"
#include "charfock/rowcon.hpp"

namespace charfock {

class Lifting {
 public:
  Lifting(RowContraction base, RowContraction extension, std::vector<ComplexMatrix> coupling);

  /// Splits an assembled row operator at `split`; the upper-right blocks must vanish.
  static Lifting from_assembled(const RowContraction& lifted, Index split, double zero_tol = 0.0);

  const RowContraction& base() const { return base_; }
  const RowContraction& extension() const { return extension_; }
  const std::vector<ComplexMatrix>& coupling() const { return coupling_; }
  int arity() const { return base_.arity(); }
  Index base_dim() const { return base_.dim(); }
  Index ext_dim() const { return extension_.dim(); }

  /// [B_1 ... B_d], ext_dim x (d * base_dim).
  ComplexMatrix coupling_row() const;
  /// The assembled row contraction on H_C + H_A.
  RowContraction assembled() const;

 private:
  RowContraction base_;
  RowContraction extension_;
  std::vector<ComplexMatrix> coupling_;
};

struct GammaData {
  DefectPair base_defects;
  DefectPair ext_defects;
  ComplexMatrix link;                 // p_C x q_A
  ComplexMatrix link_defect;          // (I - link link*)^{1/2}, p_C x p_C
  OrthonormalBasis link_defect_basis; // range of link_defect inside C^{p_C}
  double residual = 0.0;              // of the defining factorization of B*
};

/// Lifting whose coupling satisfies B* = D_C link D_{*,A} in ambient form.
Lifting build_lifting(const RowContraction& base, const RowContraction& extension, const ComplexMatrix& link,
                      double rank_tol = kDefaultRankTol);

GammaData extract_gamma(const Lifting& e, double rank_tol = kDefaultRankTol);

struct ResolvingReport {
  bool resolving = false;
  OrthonormalBasis link_kernel;     // largest A*-invariant subspace of ker(link D_{*,A})
  OrthonormalBasis defect_kernel;   // largest A*-invariant subspace of ker(D_{*,A})
  ComplexVector witness;            // in link_kernel, orthogonal to defect_kernel; empty if resolving
};

ResolvingReport resolving_check(const Lifting& e, double rank_tol = kDefaultRankTol);

/// True iff the smallest E-invariant subspace containing H_C is everything.
bool minimality_check(const Lifting& e, double rank_tol = kDefaultRankTol);

/// Permutation P with (H_C^d + H_A^d)-ordered vector = P * (sum_i (H_C + H_A))-ordered vector.
ComplexMatrix interleave_permutation(Index base_dim, Index ext_dim, int arity);

struct SigmaMap {
  GammaData gamma;
  DefectPair lifted_defects;
  ComplexMatrix sigma;        // (r + p_A) x p_E: lifted defect coords -> link-defect + ext-defect coords
  Index link_part = 0;        // r = dim of the link defect space
  Index ext_part = 0;         // p_A
  ComplexMatrix block_map;    // the displayed block operator composed with the permutation
  double consistency_residual = 0.0;  // |(M P)*(M P) - D_E^2|
  double unitarity_residual = 0.0;

  ComplexMatrix link_rows() const { return sigma.topRows(link_part); }
  ComplexMatrix ext_rows() const { return sigma.bottomRows(ext_part); }
};

/// Throws NotWellDefined when |M v| != |D_E v| beyond tolerance.
SigmaMap sigma_map(const Lifting& e, double rank_tol = kDefaultRankTol);

/// Characteristic symbol of the lifting, lifted defect coords -> defect(C) coords,
/// assembled from the link defect, the link and the symbol of A through sigma.
NCSeries lifting_char_decomposed(const Lifting& e, int degree, double rank_tol = kDefaultRankTol);

/// The same symbol assembled term by term from D_C, D_{*,A}, B and powers of A*.
NCSeries lifting_char_direct(const Lifting& e, int degree, double rank_tol = kDefaultRankTol);

/// Colligation with state H_A whose transfer symbol is the lifting symbol.
Colligation lifting_colligation(const Lifting& e, double rank_tol = kDefaultRankTol);

/// Lifting symbol moved to ambient spaces: H_E^d (interleaved order) -> H_C^d.
/// With `times_defect`, the result is composed with D_E on the right.
NCSeries lifting_char_ambient(const Lifting& e, int degree, bool times_defect = false,
                              double rank_tol = kDefaultRankTol);

struct NormBoundReport {
  double lhs = 0.0;       // |theta(lambda)|
  double link_term = 0.0; // |D_{*,gamma}|
  double mobius_term = 0.0;  // |(A - lambda)(I - conj(lambda) A)^{-1}|
  double tail = 0.0;
  double slack = 0.0;     // link_term + mobius_term + tail - lhs
  bool ok = false;
};

/// Single-variable norm bound at lambda; left side by truncated evaluation.
NormBoundReport norm_bound_check(const Lifting& e, Complex lambda, int degree = 40,
                                 double rank_tol = kDefaultRankTol);

}  // namespace charfock
