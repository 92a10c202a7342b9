#include "charfock/colligation.hpp"

#include <algorithm>
#include <cmath>

#include "charfock/error.hpp"

namespace charfock {

Colligation Colligation::from_blocks(std::vector<ComplexMatrix> a, ComplexMatrix b, ComplexMatrix c,
                                     ComplexMatrix d) {
  if (a.empty()) throw Error(ErrorCode::ShapeMismatch, "colligation needs at least one state block");
  Colligation w;
  w.arity = static_cast<int>(a.size());
  w.state_dim = a.front().rows();
  w.in_dim = d.cols();
  w.out_dim = d.rows();
  w.state_ops = std::move(a);
  w.input_map = std::move(b);
  w.output_map = std::move(c);
  w.feedthrough = std::move(d);
  w.check_shapes();
  return w;
}

void Colligation::check_shapes() const {
  if (arity < 1 || static_cast<int>(state_ops.size()) != arity) {
    throw Error(ErrorCode::ShapeMismatch, "colligation arity");
  }
  for (const auto& op : state_ops) {
    if (op.rows() != state_dim || op.cols() != state_dim) {
      throw Error(ErrorCode::ShapeMismatch, "colligation state block");
    }
  }
  if (input_map.rows() != arity * state_dim || input_map.cols() != in_dim) {
    throw Error(ErrorCode::ShapeMismatch, "colligation input map");
  }
  if (output_map.rows() != out_dim || output_map.cols() != state_dim) {
    throw Error(ErrorCode::ShapeMismatch, "colligation output map");
  }
  if (feedthrough.rows() != out_dim || feedthrough.cols() != in_dim) {
    throw Error(ErrorCode::ShapeMismatch, "colligation feedthrough");
  }
}

ComplexMatrix Colligation::input_block(int j) const { return input_map.middleRows(j * state_dim, state_dim); }

ComplexMatrix Colligation::matrix() const {
  const Index rows = arity * state_dim + out_dim;
  ComplexMatrix w(rows, state_dim + in_dim);
  w.topLeftCorner(arity * state_dim, state_dim) = vstack(state_ops, state_dim);
  w.topRightCorner(arity * state_dim, in_dim) = input_map;
  w.bottomLeftCorner(out_dim, state_dim) = output_map;
  w.bottomRightCorner(out_dim, in_dim) = feedthrough;
  return w;
}

NCSeries transfer_symbol(const Colligation& w, int degree) {
  w.check_shapes();
  NCSeries out(w.arity, w.in_dim, w.out_dim, degree);
  out.set_coeff(0, w.feedthrough);
  std::vector<ComplexMatrix> first;
  for (int j = 0; j < w.arity; ++j) first.push_back(w.input_block(j));
  const std::vector<ComplexMatrix> states = word_recursion(first, w.state_ops, degree);
  for (Index k = 1; k < out.size(); ++k) out.set_coeff(k, w.output_map * states[static_cast<size_t>(k)]);
  return out;
}

NCSeries transfer_oracle(const Colligation& w, int degree) {
  w.check_shapes();
  std::vector<ComplexMatrix> inputs;
  for (int j = 0; j < w.arity; ++j) inputs.push_back(w.input_block(j));
  return fock_neumann_symbol(w.state_ops, inputs, w.output_map, w.feedthrough, degree);
}

ResidualCheck is_coisometric(const Colligation& w, double tol) {
  const ComplexMatrix m = w.matrix();
  ResidualCheck out;
  out.residual = spectral_norm(m * m.adjoint() - ComplexMatrix::Identity(m.rows(), m.rows()));
  out.ok = out.residual < tol;
  return out;
}

OrthonormalBasis unobservable_subspace(const Colligation& w, double rank_tol) {
  return largest_invariant_subspace(null_space(w.output_map, rank_tol), w.state_ops, rank_tol);
}

OrthonormalBasis unobservable_subspace_krylov(const Colligation& w, double rank_tol) {
  // Rows C A_{w_1} ... A_{w_m}; every word of length <= state_dim appears once.
  std::vector<ComplexMatrix> rows{w.output_map};
  std::vector<ComplexMatrix> level{w.output_map};
  for (Index len = 1; len <= w.state_dim; ++len) {
    std::vector<ComplexMatrix> next;
    for (const auto& r : level)
      for (const auto& a : w.state_ops) next.push_back(r * a);
    rows.insert(rows.end(), next.begin(), next.end());
    level = std::move(next);
    if (rows.size() > 20000) break;
  }
  return null_space(vstack(rows, w.state_dim), rank_tol);
}

bool defect_dim_admissible(Index n, int d, Index k) { return n * (d - 1) <= k && k <= n * d; }

namespace {

bool output_dim_fits(Index out, int d) {
  for (Index n = 0; n <= out; ++n)
    if (defect_dim_admissible(n, d, out)) return true;
  return false;
}

}  // namespace

Colligation structure_reconstruct(const RowContraction& basic, const ComplexMatrix& link,
                                  const ComplexMatrix& input_unitary, double rank_tol) {
  const DefectPair dp = defects(basic, rank_tol);
  const ComplexMatrix& qd = dp.basis.vectors;
  const ComplexMatrix& qs = dp.basis_star.vectors;
  if (link.cols() != qs.cols() || input_unitary.rows() != qd.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "structure_reconstruct");
  }
  return Colligation::from_blocks(basic.adjoints(), dp.defect * qd * input_unitary,
                                  link * qs.adjoint() * dp.defect_star,
                                  -link * qs.adjoint() * basic.row() * qd * input_unitary);
}

StructureDecomposition structure_decompose(const Colligation& w, double rank_tol, double tol) {
  w.check_shapes();
  StructureReport report;
  const ResidualCheck co = is_coisometric(w, 1e-9);
  report.coisometric = co.ok;
  report.coisometry_residual = co.residual;
  report.observable = unobservable_subspace(w, rank_tol).empty();
  report.output_dim_hypothesis = output_dim_fits(w.out_dim, w.arity);
  if (!report.output_dim_hypothesis) report.notes.push_back("output dimension outside n(d-1)..nd for every n");
  if (!report.coisometric) throw Error(ErrorCode::HypothesisViolated, "colligation is not co-isometric");
  if (!report.observable) throw Error(ErrorCode::HypothesisViolated, "colligation is not observable");

  std::vector<ComplexMatrix> blocks;
  for (const auto& a : w.state_ops) blocks.push_back(a.adjoint());
  RowContraction basic(std::move(blocks));
  DefectPair dp = defects(basic, rank_tol);
  report.input_dim = w.in_dim;
  report.defect_dim = dp.basis.size();
  if (report.input_dim != report.defect_dim) {
    throw Error(ErrorCode::HypothesisViolated, "input dimension " + std::to_string(report.input_dim) +
                                                   " differs from defect dimension " +
                                                   std::to_string(report.defect_dim));
  }

  const ComplexMatrix& qd = dp.basis.vectors;
  const ComplexMatrix& qs = dp.basis_star.vectors;
  StructureDecomposition out{basic, dp, {}, {}, 0, 0, 0, 0, report};
  out.input_unitary = qd.adjoint() * pinv(dp.defect, rank_tol) * w.input_map;
  out.link = w.output_map * pinv(dp.defect_star, rank_tol) * qs;
  out.input_unitarity_residual = unitarity_residual(out.input_unitary);
  out.link_coisometry_residual =
      spectral_norm(out.link * out.link.adjoint() - ComplexMatrix::Identity(w.out_dim, w.out_dim));
  out.feedthrough_residual =
      spectral_norm(w.feedthrough + out.link * qs.adjoint() * basic.row() * qd * out.input_unitary);
  const Colligation rebuilt = structure_reconstruct(basic, out.link, out.input_unitary, rank_tol);
  out.reconstruction_residual = spectral_norm(w.matrix() - rebuilt.matrix());
  if (out.reconstruction_residual > tol || out.input_unitarity_residual > 1e-9 ||
      out.link_coisometry_residual > 1e-9) {
    throw Error(ErrorCode::DecompositionFailed,
                "reconstruction residual " + std::to_string(out.reconstruction_residual));
  }
  return out;
}

RowContraction make_defect_constrained(Index n, int d, Index k) {
  if (n < 1 || d < 1 || !defect_dim_admissible(n, d, k)) {
    throw Error(ErrorCode::OutOfRange, "defect dimension outside n(d-1)..nd");
  }
  const Index m = n * d - k;
  std::vector<ComplexMatrix> blocks(static_cast<size_t>(d), ComplexMatrix::Zero(n, n));
  for (Index i = 0; i < m; ++i) blocks[0](i, i) = 1.0;
  return RowContraction(std::move(blocks));
}

}  // namespace charfock
