#include "charfock/mobius.hpp"

#include <cmath>

#include "charfock/error.hpp"

namespace charfock {

namespace {

void check_point(Complex a) {
  if (!(std::abs(a) < 1.0)) throw Error(ErrorCode::BadParameter, "|a| must be below 1");
}

ComplexMatrix inverse_shift(const ComplexMatrix& t, Complex a) {
  const Index n = t.rows();
  return (ComplexMatrix::Identity(n, n) - std::conj(a) * t).partialPivLu().inverse();
}

double worst_excess(const std::vector<PointResidual>& points) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& p : points) worst = std::max(worst, p.residual - p.bound);
  return points.empty() ? 0.0 : worst;
}

PointResidual make_point(Complex lambda, Complex mu, double residual, int degree, double extra_radius = 0.0) {
  PointResidual p;
  p.lambda = lambda;
  p.mu = mu;
  p.residual = residual;
  const double r = std::max({std::abs(lambda), std::abs(mu), extra_radius});
  p.bound = 2.0 * series_tail_bound(degree, r) + 1e-8;
  p.ok = residual <= p.bound;
  return p;
}

double norm_or_zero(const ComplexMatrix& m) { return m.size() ? spectral_norm(m) : 0.0; }

}  // namespace

ComplexMatrix mobius_contraction(const ComplexMatrix& t, Complex a, double tol) {
  if (t.rows() != t.cols()) throw Error(ErrorCode::NotSquare, "mobius_contraction");
  check_point(a);
  if (t.size() && spectral_norm(t) > 1.0 + tol) throw Error(ErrorCode::NotContraction, "mobius_contraction");
  const Index n = t.rows();
  return (t - a * ComplexMatrix::Identity(n, n)) * inverse_shift(t, a);
}

ComplexMatrix mobius_scaling(const ComplexMatrix& t, Complex a) {
  check_point(a);
  return std::sqrt(1.0 - std::norm(a)) * inverse_shift(t, a);
}

Complex mobius_point(Complex lambda, Complex a) { return (lambda + a) / (1.0 + std::conj(a) * lambda); }

MobiusData z_unitaries(const ComplexMatrix& t, Complex a, double rank_tol) {
  MobiusData z;
  z.a = a;
  z.moved = mobius_contraction(t, a);
  z.scaling = mobius_scaling(t, a);
  z.original = defects(RowContraction({t}), rank_tol);
  z.transformed = defects(RowContraction({z.moved}), rank_tol);
  const DefectPair& o = z.original;
  const DefectPair& m = z.transformed;
  if (o.basis.size() != m.basis.size() || o.basis_star.size() != m.basis_star.size()) {
    throw Error(ErrorCode::DefectRankMismatch, "defect ranks of T and T_a differ at this rank tolerance");
  }
  z.defect_unitary = o.basis.vectors.adjoint() * o.defect * z.scaling * pinv(m.defect, rank_tol) * m.basis.vectors;
  z.defect_star_unitary = o.basis_star.vectors.adjoint() * o.defect_star * z.scaling.adjoint() *
                          pinv(m.defect_star, rank_tol) * m.basis_star.vectors;
  z.defect_relation_residual = norm_or_zero(o.basis.vectors * z.defect_unitary * m.basis.vectors.adjoint() * m.defect -
                                            o.defect * z.scaling);
  z.defect_star_relation_residual =
      norm_or_zero(o.basis_star.vectors * z.defect_star_unitary * m.basis_star.vectors.adjoint() * m.defect_star -
                   o.defect_star * z.scaling.adjoint());
  z.unitarity_residual = 0.0;
  if (z.defect_unitary.size()) z.unitarity_residual = unitarity_residual(z.defect_unitary);
  if (z.defect_star_unitary.size()) {
    z.unitarity_residual = std::max(z.unitarity_residual, unitarity_residual(z.defect_star_unitary));
  }
  if (z.unitarity_residual > 1e-8) {
    throw Error(ErrorCode::ResidualTooLarge, "Z maps are not unitary (residual " +
                                                 std::to_string(z.unitarity_residual) + ")");
  }
  return z;
}

MobiusLifting mobius_lifting(const Lifting& e, Complex a, double rank_tol) {
  if (e.arity() != 1) throw Error(ErrorCode::ArityNotOne, "mobius_lifting");
  const ComplexMatrix& c = e.base().block(0);
  const ComplexMatrix& x = e.extension().block(0);
  const ComplexMatrix coupling = mobius_scaling(x, a) * e.coupling()[0] * mobius_scaling(c, a);
  MobiusLifting out{Lifting(RowContraction({mobius_contraction(c, a)}), RowContraction({mobius_contraction(x, a)}),
                            {coupling}),
                    0.0, false};
  const ComplexMatrix whole = mobius_contraction(e.assembled().block(0), a);
  out.block_residual = norm_or_zero(whole - out.lifting.assembled().block(0));
  out.minimal = minimality_check(out.lifting, rank_tol);
  return out;
}

std::vector<Complex> default_samples() {
  return {{0.0, 0.0}, {0.3, 0.0}, {-0.3, 0.0}, {0.0, 0.2}, {0.0, -0.2}, {0.25, 0.25}};
}

CfRelationReport verify_cf_relation(const ComplexMatrix& t, Complex a, const std::vector<Complex>& samples,
                                    int degree, double rank_tol) {
  check_point(a);
  for (Complex l : samples) check_point(l);
  const MobiusData z = z_unitaries(t, a, rank_tol);
  const NCSeries symbol = char_symbol(RowContraction({t}), degree, rank_tol);
  const NCSeries moved = char_symbol(RowContraction({z.moved}), degree, rank_tol);
  CfRelationReport rep;
  for (Complex lambda : samples) {
    const Complex mu = mobius_point(lambda, a);
    const ComplexMatrix lhs =
        z.defect_star_unitary * series_eval_scalar(moved, lambda) * z.defect_unitary.adjoint();
    rep.points.push_back(make_point(lambda, mu, norm_or_zero(lhs - series_eval_scalar(symbol, mu)), degree));
  }
  rep.worst_excess = worst_excess(rep.points);
  rep.ok = rep.worst_excess <= 0.0;
  return rep;
}

LiftingCfReport verify_lifting_cf(const Lifting& e, Complex a, const std::vector<Complex>& samples, int degree,
                                  double rank_tol) {
  if (e.arity() != 1) throw Error(ErrorCode::ArityNotOne, "verify_lifting_cf");
  check_point(a);
  for (Complex l : samples) check_point(l);
  LiftingCfReport rep;
  const MobiusLifting ml = mobius_lifting(e, a, rank_tol);
  const Lifting& ea = ml.lifting;
  rep.block_residual = ml.block_residual;
  rep.minimal = ml.minimal;
  rep.involution_residual =
      norm_or_zero(mobius_contraction(ea.assembled().block(0), -a) - e.assembled().block(0));

  const SigmaMap s = sigma_map(e, rank_tol);
  const SigmaMap sa = sigma_map(ea, rank_tol);
  const GammaData& g = s.gamma;
  const GammaData& ga = sa.gamma;
  const MobiusData zc = z_unitaries(e.base().block(0), a, rank_tol);
  const MobiusData za = z_unitaries(e.extension().block(0), a, rank_tol);
  const ComplexMatrix& z_base = zc.defect_unitary;
  const ComplexMatrix& z_ext = za.defect_unitary;
  const ComplexMatrix& z_ext_star = za.defect_star_unitary;

  rep.link_relation_residual = norm_or_zero(ga.link - z_base.adjoint() * g.link * z_ext_star);

  const NCSeries symbol = lifting_char_decomposed(e, degree, rank_tol);
  const NCSeries moved = lifting_char_decomposed(ea, degree, rank_tol);
  const ComplexMatrix link_defect_map =
      g.link_defect_basis.vectors.adjoint() * z_base * ga.link_defect_basis.vectors;
  const ComplexMatrix input_map = s.sigma.adjoint() * direct_sum(link_defect_map, z_ext) * sa.sigma;

  // Factored form in ambient coordinates (arity 1, so no interleaving).
  const DefectPair& dc = g.base_defects;
  const DefectPair& da = g.ext_defects;
  const DefectPair lifted_a = defects(ea.assembled(), rank_tol);
  const DefectPair base_a = defects(ea.base(), rank_tol);
  const DefectPair ext_a = defects(ea.extension(), rank_tol);
  const NCSeries ext_symbol = char_symbol(e.extension(), degree, rank_tol);
  const ComplexMatrix z_base_adj_amb = base_a.basis.vectors * z_base.adjoint() * dc.basis.vectors.adjoint();
  const ComplexMatrix link_defect_amb = dc.basis.vectors * g.link_defect * dc.basis.vectors.adjoint();
  const ComplexMatrix link_amb = dc.basis.vectors * g.link * da.basis_star.vectors.adjoint();
  const ComplexMatrix ext_at_a =
      da.basis.vectors * series_eval_scalar(ext_symbol, a).adjoint() * da.basis_star.vectors.adjoint();
  const Index nc = e.base_dim();
  const Index na = e.ext_dim();
  auto middle = [&](const ComplexMatrix& corner) {
    ComplexMatrix m = ComplexMatrix::Zero(nc + na, nc + na);
    m.topLeftCorner(nc, nc) = link_defect_amb * dc.defect;
    m.bottomLeftCorner(na, nc) = ext_at_a * link_amb.adjoint() * dc.defect;
    m.bottomRightCorner(na, na) = corner;
    return m;
  };
  const ComplexMatrix scalings =
      direct_sum(mobius_scaling(e.base().block(0), a), mobius_scaling(e.extension().block(0), a));
  const ComplexMatrix mid_corrected = middle(da.defect) * scalings;
  const ComplexMatrix mid_displayed = middle(ext_a.defect) * scalings;

  for (Complex lambda : samples) {
    const Complex mu = mobius_point(lambda, a);
    const ComplexMatrix lhs = series_eval_scalar(moved, lambda);
    const ComplexMatrix rhs = z_base.adjoint() * series_eval_scalar(symbol, mu) * input_map;
    rep.conjugation.points.push_back(make_point(lambda, mu, norm_or_zero(lhs - rhs), degree));

    const ComplexMatrix lhs_amb =
        base_a.basis.vectors * lhs * lifted_a.basis.vectors.adjoint() * lifted_a.defect;
    ComplexMatrix head(nc, nc + na);
    head << link_defect_amb, link_amb * da.basis_star.vectors * series_eval_scalar(ext_symbol, mu) *
                                 da.basis.vectors.adjoint();
    const ComplexMatrix rhs_corrected = z_base_adj_amb * head * mid_corrected;
    const ComplexMatrix rhs_displayed = z_base_adj_amb * head * mid_displayed;
    rep.factored.points.push_back(
        make_point(lambda, mu, norm_or_zero(lhs_amb - rhs_corrected), degree, std::abs(a)));
    rep.factored_as_displayed.push_back(norm_or_zero(lhs_amb - rhs_displayed));
  }
  rep.conjugation.worst_excess = worst_excess(rep.conjugation.points);
  rep.conjugation.ok = rep.conjugation.worst_excess <= 0.0;
  rep.factored.worst_excess = worst_excess(rep.factored.points);
  rep.factored.ok = rep.factored.worst_excess <= 0.0;
  rep.ok = rep.conjugation.ok && rep.factored.ok && rep.link_relation_residual <= 1e-9 &&
           rep.block_residual <= 1e-10 && rep.involution_residual <= 1e-10 && rep.minimal;
  return rep;
}

}  // namespace charfock
