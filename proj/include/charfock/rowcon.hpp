#pragma once

// Row contractions, their defect data, the c.n.c. test and the
// characteristic symbol in defect coordinates.

#include <vector>

#include "charfock/fockseries.hpp"
#include "charfock/numlin.hpp"

namespace charfock {

struct Colligation;

inline constexpr double kContractionTol = 1e-10;

/// d square n x n blocks viewed as one operator from the d-fold sum to C^n.
class RowContraction {
 public:
  /// Checks shapes only; use validate() for the contraction condition.
  explicit RowContraction(std::vector<ComplexMatrix> blocks);

  Index dim() const { return dim_; }
  int arity() const { return static_cast<int>(blocks_.size()); }
  /// 0-based block access.
  const ComplexMatrix& block(int i) const { return blocks_[static_cast<size_t>(i)]; }
  const std::vector<ComplexMatrix>& blocks() const { return blocks_; }
  /// The n x nd row matrix [T_1 ... T_d].
  ComplexMatrix row() const;
  /// Adjoints of every block, in order.
  std::vector<ComplexMatrix> adjoints() const;

  static RowContraction scalar(std::vector<Complex> values);

 private:
  Index dim_ = 0;
  std::vector<ComplexMatrix> blocks_;
};

struct ContractionReport {
  bool is_contraction = false;
  double norm = 0.0;
};

ContractionReport validate(const RowContraction& t, double tol = kContractionTol);

/// Throws NotContraction when validate() fails.
void require_contraction(const RowContraction& t, double tol = kContractionTol);

struct DefectPair {
  ComplexMatrix defect;       // (I - T*T)^{1/2} on the d-fold sum
  ComplexMatrix defect_star;  // (I - TT*)^{1/2} on H
  OrthonormalBasis basis;       // range of `defect`
  OrthonormalBasis basis_star;  // range of `defect_star`
  double rank_tol = kDefaultRankTol;
};

DefectPair defects(const RowContraction& t, double rank_tol = kDefaultRankTol);

/// Largest subspace of ker D_{*,T} invariant under every T_i*. Empty iff T is c.n.c.
OrthonormalBasis cnc_subspace(const RowContraction& t, double rank_tol = kDefaultRankTol);
bool is_cnc(const RowContraction& t, double rank_tol = kDefaultRankTol);

/// Reference computation of the same subspace from the norm equalities:
/// the common kernel of I - Phi^n(I), n = 1..depth, with Phi(X) = sum T_i X T_i*.
/// <Phi^n(I) h, h> is exactly the sum of |T_alpha* h|^2 over words of length n.
OrthonormalBasis cnc_subspace_bruteforce(const RowContraction& t, int depth = 20,
                                         double rank_tol = 1e-9);

/// Characteristic symbol in defect coordinates, from the closed-form coefficients.
/// Input coordinates follow defects(t).basis, output coordinates defects(t).basis_star.
NCSeries char_symbol(const RowContraction& t, int degree, double rank_tol = kDefaultRankTol);

/// The same symbol evaluated through explicit truncated Fock-space operators.
NCSeries char_symbol_oracle(const RowContraction& t, int degree, double rank_tol = kDefaultRankTol);

/// Co-isometric colligation whose transfer function is the characteristic symbol.
Colligation popescu_colligation(const RowContraction& t, double rank_tol = kDefaultRankTol);

/// Symbol of the Fock-space expression D + C (I - X)^{-1} Y on the vacuum, where
/// X = sum R_i (x) state_ops[i] and Y = sum R_j (x) input_maps[j]. Shared by both oracles.
NCSeries fock_neumann_symbol(const std::vector<ComplexMatrix>& state_ops,
                             const std::vector<ComplexMatrix>& input_maps, const ComplexMatrix& output_map,
                             const ComplexMatrix& feedthrough, int degree);

}  // namespace charfock
