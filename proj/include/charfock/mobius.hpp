#pragma once

// Blaschke-factor transforms of single contractions and of liftings (arity 1):
// T_a = (T - a)(I - conj(a) T)^{-1}, the scaling S_T and the unitaries Z
// identifying the defect spaces of T_a with those of T.

#include <vector>

#include "charfock/lifting.hpp"
#include "charfock/numlin.hpp"

namespace charfock {

/// (T - a)(I - conj(a) T)^{-1}.
ComplexMatrix mobius_contraction(const ComplexMatrix& t, Complex a, double tol = kContractionTol);

/// (1 - |a|^2)^{1/2} (I - conj(a) T)^{-1}.
ComplexMatrix mobius_scaling(const ComplexMatrix& t, Complex a);

/// mu = (lambda + a) / (1 + conj(a) lambda).
Complex mobius_point(Complex lambda, Complex a);

struct MobiusData {
  Complex a;
  ComplexMatrix moved;          // T_a
  ComplexMatrix scaling;        // S_T
  DefectPair original;          // defects of T
  DefectPair transformed;       // defects of T_a
  ComplexMatrix defect_unitary;       // Z_T, transformed.basis coords -> original.basis coords
  ComplexMatrix defect_star_unitary;  // Z_{*T}, transformed.basis_star coords -> original.basis_star coords
  double defect_relation_residual = 0.0;       // |Z_T D_{T_a} - D_T S_T|
  double defect_star_relation_residual = 0.0;  // |Z_{*T} D_{*,T_a} - D_{*,T} S_T*|
  double unitarity_residual = 0.0;
};

MobiusData z_unitaries(const ComplexMatrix& t, Complex a, double rank_tol = kDefaultRankTol);

struct MobiusLifting {
  Lifting lifting;              // blocks C_a, S_A B S_C, A_a
  double block_residual = 0.0;  // against the transform of the assembled operator
  bool minimal = false;
};

MobiusLifting mobius_lifting(const Lifting& e, Complex a, double rank_tol = kDefaultRankTol);

/// Default evaluation points, all of modulus <= 0.5.
std::vector<Complex> default_samples();

struct PointResidual {
  Complex lambda;
  Complex mu;
  double residual = 0.0;
  double bound = 0.0;
  bool ok = false;
};

struct CfRelationReport {
  std::vector<PointResidual> points;
  bool ok = false;
  double worst_excess = 0.0;  // max(residual - bound), negative when everything holds
};

/// Z_{*T} theta_{T_a}(lambda) Z_T^{-1} = theta_T(mu) at every sample.
CfRelationReport verify_cf_relation(const ComplexMatrix& t, Complex a, const std::vector<Complex>& samples,
                                    int degree = 40, double rank_tol = kDefaultRankTol);

struct LiftingCfReport {
  CfRelationReport conjugation;       // symbol of E_a against the conjugated symbol of E at mu
  CfRelationReport factored;          // factored form with D_A in the lower-right entry
  std::vector<double> factored_as_displayed;  // same with D_{A_a}; informational only
  double link_relation_residual = 0.0;  // |gamma_a - Z_C* gamma Z_{*A}|
  double block_residual = 0.0;
  double involution_residual = 0.0;     // |(E_a)_{-a} - E|
  bool minimal = false;
  bool ok = false;
};

LiftingCfReport verify_lifting_cf(const Lifting& e, Complex a, const std::vector<Complex>& samples,
                                  int degree = 40, double rank_tol = kDefaultRankTol);

}  // namespace charfock
