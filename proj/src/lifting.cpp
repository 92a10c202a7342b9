#include "charfock/lifting.hpp"

#include <cmath>

#include "charfock/error.hpp"

namespace charfock {

Lifting::Lifting(RowContraction base, RowContraction extension, std::vector<ComplexMatrix> coupling)
    : base_(std::move(base)), extension_(std::move(extension)), coupling_(std::move(coupling)) {
  if (base_.arity() != extension_.arity() || static_cast<int>(coupling_.size()) != base_.arity()) {
    throw Error(ErrorCode::ShapeMismatch, "lifting arity");
  }
  for (const auto& b : coupling_) {
    if (b.rows() != extension_.dim() || b.cols() != base_.dim()) {
      throw Error(ErrorCode::ShapeMismatch, "lifting coupling block");
    }
  }
}

Lifting Lifting::from_assembled(const RowContraction& lifted, Index split, double zero_tol) {
  const Index n = lifted.dim();
  if (split < 0 || split > n) throw Error(ErrorCode::OutOfRange, "split outside 0..dim");
  const Index m = n - split;
  std::vector<ComplexMatrix> base, ext, coupling;
  for (const auto& e : lifted.blocks()) {
    if (split > 0 && m > 0 && e.topRightCorner(split, m).cwiseAbs().maxCoeff() > zero_tol) {
      throw Error(ErrorCode::InvalidInput, "assembled operator is not block lower triangular");
    }
    base.push_back(e.topLeftCorner(split, split));
    ext.push_back(e.bottomRightCorner(m, m));
    coupling.push_back(e.bottomLeftCorner(m, split));
  }
  return Lifting(RowContraction(std::move(base)), RowContraction(std::move(ext)), std::move(coupling));
}

ComplexMatrix Lifting::coupling_row() const { return hstack(coupling_, ext_dim()); }

RowContraction Lifting::assembled() const {
  const Index nc = base_dim();
  const Index n = nc + ext_dim();
  std::vector<ComplexMatrix> blocks;
  for (int i = 0; i < arity(); ++i) {
    ComplexMatrix e = ComplexMatrix::Zero(n, n);
    e.topLeftCorner(nc, nc) = base_.block(i);
    e.bottomLeftCorner(ext_dim(), nc) = coupling_[static_cast<size_t>(i)];
    e.bottomRightCorner(ext_dim(), ext_dim()) = extension_.block(i);
    blocks.push_back(std::move(e));
  }
  return RowContraction(std::move(blocks));
}

Lifting build_lifting(const RowContraction& base, const RowContraction& extension, const ComplexMatrix& link,
                      double rank_tol) {
  if (base.arity() != extension.arity()) throw Error(ErrorCode::ShapeMismatch, "build_lifting arity");
  const DefectPair dc = defects(base, rank_tol);
  const DefectPair da = defects(extension, rank_tol);
  if (link.rows() != dc.basis.size() || link.cols() != da.basis_star.size()) {
    throw Error(ErrorCode::ShapeMismatch, "link must map defect_star(A) coordinates to defect(C) coordinates");
  }
  if (link.size() > 0 && spectral_norm(link) > 1.0 + 1e-10) {
    throw Error(ErrorCode::GammaNotContractive, "link norm exceeds 1");
  }
  const ComplexMatrix row = da.defect_star * da.basis_star.vectors * link.adjoint() *
                            dc.basis.vectors.adjoint() * dc.defect;
  std::vector<ComplexMatrix> coupling;
  const Index nc = base.dim();
  for (int i = 0; i < base.arity(); ++i) coupling.push_back(row.middleCols(i * nc, nc));
  Lifting out(base, extension, std::move(coupling));
  require_contraction(out.assembled(), 1e-9);
  return out;
}

GammaData extract_gamma(const Lifting& e, double rank_tol) {
  GammaData g;
  g.base_defects = defects(e.base(), rank_tol);
  g.ext_defects = defects(e.extension(), rank_tol);
  const DefectPair& dc = g.base_defects;
  const DefectPair& da = g.ext_defects;
  const ComplexMatrix coupling_adj = e.coupling_row().adjoint();
  g.link = dc.basis.vectors.adjoint() * pinv(dc.defect, rank_tol) * coupling_adj *
           pinv(da.defect_star, rank_tol) * da.basis_star.vectors;
  const ComplexMatrix rebuilt =
      dc.defect * dc.basis.vectors * g.link * da.basis_star.vectors.adjoint() * da.defect_star;
  g.residual = coupling_adj.size() ? spectral_norm(coupling_adj - rebuilt) : 0.0;
  const double scale = 1.0 + (coupling_adj.size() ? spectral_norm(coupling_adj) : 0.0);
  if (g.residual > 1e-9 * scale) {
    throw Error(ErrorCode::ResidualTooLarge, "coupling does not factor through the defect spaces (residual " +
                                                 std::to_string(g.residual) + ")");
  }
  const Index p = g.link.rows();
  g.link_defect = psd_sqrt(ComplexMatrix::Identity(p, p) - g.link * g.link.adjoint());
  g.link_defect_basis = range_onb(g.link_defect, rank_tol);
  return g;
}

ResolvingReport resolving_check(const Lifting& e, double rank_tol) {
  const GammaData g = extract_gamma(e, rank_tol);
  const DefectPair& da = g.ext_defects;
  const std::vector<ComplexMatrix> ops = e.extension().adjoints();
  const ComplexMatrix link_defect = g.link * da.basis_star.vectors.adjoint() * da.defect_star;
  ResolvingReport r;
  r.link_kernel = largest_invariant_subspace(null_space(link_defect, rank_tol), ops, rank_tol);
  r.defect_kernel = largest_invariant_subspace(null_space(da.defect_star, rank_tol), ops, rank_tol);
  r.resolving = r.link_kernel.size() == r.defect_kernel.size();
  if (!r.resolving) {
    const ComplexMatrix rest = (ComplexMatrix::Identity(e.ext_dim(), e.ext_dim()) - r.defect_kernel.projector()) *
                               r.link_kernel.vectors;
    const OrthonormalBasis extra = column_space(rest, rank_tol);
    if (!extra.empty()) r.witness = extra.vectors.col(0);
  }
  return r;
}

bool minimality_check(const Lifting& e, double rank_tol) {
  const RowContraction lifted = e.assembled();
  const Index n = lifted.dim();
  OrthonormalBasis start{n, ComplexMatrix::Identity(n, e.base_dim())};
  return smallest_invariant_subspace(start, lifted.blocks(), rank_tol).size() == n;
}

ComplexMatrix interleave_permutation(Index base_dim, Index ext_dim, int arity) {
  const Index block = base_dim + ext_dim;
  const Index total = block * arity;
  ComplexMatrix p = ComplexMatrix::Zero(total, total);
  for (int i = 0; i < arity; ++i) {
    for (Index r = 0; r < base_dim; ++r) p(i * base_dim + r, i * block + r) = 1.0;
    for (Index r = 0; r < ext_dim; ++r) p(arity * base_dim + i * ext_dim + r, i * block + base_dim + r) = 1.0;
  }
  return p;
}

SigmaMap sigma_map(const Lifting& e, double rank_tol) {
  SigmaMap s;
  s.gamma = extract_gamma(e, rank_tol);
  s.lifted_defects = defects(e.assembled(), rank_tol);
  const GammaData& g = s.gamma;
  const DefectPair& dc = g.base_defects;
  const DefectPair& da = g.ext_defects;
  const int d = e.arity();
  const Index nc = e.base_dim() * d;
  const Index na = e.ext_dim() * d;
  s.link_part = g.link_defect_basis.size();
  s.ext_part = da.basis.size();

  const ComplexMatrix from_base = dc.basis.vectors.adjoint() * dc.defect;  // p_C x nc
  ComplexMatrix m = ComplexMatrix::Zero(s.link_part + s.ext_part, nc + na);
  m.topLeftCorner(s.link_part, nc) = g.link_defect_basis.vectors.adjoint() * g.link_defect * from_base;
  m.bottomLeftCorner(s.ext_part, nc) = -da.basis.vectors.adjoint() * e.extension().row().adjoint() *
                                       da.basis_star.vectors * g.link.adjoint() * from_base;
  m.bottomRightCorner(s.ext_part, na) = da.basis.vectors.adjoint() * da.defect;

  s.block_map = m * interleave_permutation(e.base_dim(), e.ext_dim(), d);
  const ComplexMatrix& de = s.lifted_defects.defect;
  s.consistency_residual = spectral_norm(s.block_map.adjoint() * s.block_map - de * de);
  if (s.consistency_residual > 1e-8) {
    throw Error(ErrorCode::NotWellDefined,
                "block map is not isometric on the lifted defect (residual " +
                    std::to_string(s.consistency_residual) + ")");
  }
  s.sigma = s.block_map * pinv(de, rank_tol) * s.lifted_defects.basis.vectors;
  s.unitarity_residual = unitarity_residual(s.sigma);
  return s;
}

NCSeries lifting_char_decomposed(const Lifting& e, int degree, double rank_tol) {
  const SigmaMap s = sigma_map(e, rank_tol);
  const GammaData& g = s.gamma;
  const NCSeries ext_symbol = char_symbol(e.extension(), degree, rank_tol);
  const Index p_out = g.link.rows();
  NCSeries out(e.arity(), s.sigma.cols(), p_out, degree);
  const ComplexMatrix head = g.link_defect * g.link_defect_basis.vectors;
  for (Index k = 0; k < out.size(); ++k) {
    ComplexMatrix row(p_out, s.link_part + s.ext_part);
    if (k == 0) {
      row << head, g.link * ext_symbol.coeff(k);
    } else {
      row << ComplexMatrix::Zero(p_out, s.link_part), g.link * ext_symbol.coeff(k);
    }
    out.set_coeff(k, row * s.sigma);
  }
  return out;
}

NCSeries lifting_char_direct(const Lifting& e, int degree, double rank_tol) {
  const GammaData g = extract_gamma(e, rank_tol);
  const DefectPair lifted = defects(e.assembled(), rank_tol);
  const DefectPair& dc = g.base_defects;
  const DefectPair& da = g.ext_defects;
  const int d = e.arity();
  const Index nc = e.base_dim() * d;
  const Index na = e.ext_dim() * d;
  const Index n_ext = e.ext_dim();

  // Link in ambient form H_A -> H_C^d, composed with D_{*,A}.
  const ComplexMatrix link_ambient = dc.basis.vectors * g.link * da.basis_star.vectors.adjoint();
  const ComplexMatrix lead = link_ambient * da.defect_star;
  const ComplexMatrix coupling = e.coupling_row();
  const ComplexMatrix ext_row = e.extension().row();
  const ComplexMatrix defect_sq = da.defect * da.defect;
  const std::vector<ComplexMatrix> ext_adj = e.extension().adjoints();

  std::vector<ComplexMatrix> base_first, ext_first;
  for (int j = 0; j < d; ++j) {
    base_first.push_back(ext_adj[static_cast<size_t>(j)] * coupling);
    ext_first.push_back(defect_sq.middleRows(j * n_ext, n_ext));
  }
  const std::vector<ComplexMatrix> base_words = word_recursion(base_first, ext_adj, degree);
  // The ext-part word (j, alpha) carries A_alpha* P_j D_A^2: the first letter picks the
  // component and the remaining letters act by A*. Reuse the same recursion with P_j D_A^2 seeds.
  const std::vector<ComplexMatrix> ext_words = word_recursion(ext_first, ext_adj, degree);

  const ComplexMatrix to_coords =
      interleave_permutation(e.base_dim(), e.ext_dim(), d) * pinv(lifted.defect, rank_tol) * lifted.basis.vectors;
  const ComplexMatrix out_coords = dc.basis.vectors.adjoint();
  NCSeries out(d, lifted.basis.size(), dc.basis.size(), degree);
  for (Index k = 0; k < out.size(); ++k) {
    ComplexMatrix g_w(nc, nc + na);
    if (k == 0) {
      g_w << dc.defect - lead * coupling, -link_ambient * ext_row * da.defect;
    } else {
      g_w << -lead * base_words[static_cast<size_t>(k)], lead * ext_words[static_cast<size_t>(k)];
    }
    out.set_coeff(k, out_coords * g_w * to_coords);
  }
  return out;
}

Colligation lifting_colligation(const Lifting& e, double rank_tol) {
  const SigmaMap s = sigma_map(e, rank_tol);
  const GammaData& g = s.gamma;
  const DefectPair& da = g.ext_defects;
  const ComplexMatrix sig_link = s.link_rows();
  const ComplexMatrix sig_ext = s.ext_rows();
  ComplexMatrix input = da.defect * da.basis.vectors * sig_ext;
  ComplexMatrix output = g.link * da.basis_star.vectors.adjoint() * da.defect_star;
  ComplexMatrix feed = g.link_defect * g.link_defect_basis.vectors * sig_link -
                       g.link * da.basis_star.vectors.adjoint() * e.extension().row() * da.basis.vectors * sig_ext;
  return Colligation::from_blocks(e.extension().adjoints(), std::move(input), std::move(output), std::move(feed));
}

NCSeries lifting_char_ambient(const Lifting& e, int degree, bool times_defect, double rank_tol) {
  const NCSeries coords = lifting_char_decomposed(e, degree, rank_tol);
  const DefectPair dc = defects(e.base(), rank_tol);
  const DefectPair lifted = defects(e.assembled(), rank_tol);
  ComplexMatrix in = lifted.basis.vectors.adjoint();
  if (times_defect) in = in * lifted.defect;
  return series_apply_output(dc.basis.vectors, series_apply_input(coords, in));
}

NormBoundReport norm_bound_check(const Lifting& e, Complex lambda, int degree, double rank_tol) {
  if (e.arity() != 1) throw Error(ErrorCode::ArityNotOne, "norm_bound_check");
  if (std::abs(lambda) >= 1.0) throw Error(ErrorCode::BadParameter, "|lambda| must be below 1");
  const NCSeries symbol = lifting_char_decomposed(e, degree, rank_tol);
  const GammaData g = extract_gamma(e, rank_tol);
  NormBoundReport r;
  const ComplexMatrix value = series_eval_scalar(symbol, lambda);
  r.lhs = value.size() ? spectral_norm(value) : 0.0;
  r.link_term = g.link_defect.size() ? spectral_norm(g.link_defect) : 0.0;
  const Index n = e.ext_dim();
  if (n > 0) {
    const ComplexMatrix& a = e.extension().block(0);
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    const ComplexMatrix moved = (a - lambda * id) * (id - std::conj(lambda) * a).inverse();
    r.mobius_term = spectral_norm(moved);
  }
  r.tail = series_tail_bound(degree, std::abs(lambda));
  r.slack = r.link_term + r.mobius_term + r.tail - r.lhs;
  r.ok = r.slack >= -1e-8;
  return r;
}

}  // namespace charfock
