#include "charfock/rowcon.hpp"

#include <cmath>

#include "charfock/colligation.hpp"
#include "charfock/error.hpp"

namespace charfock {

RowContraction::RowContraction(std::vector<ComplexMatrix> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw Error(ErrorCode::ShapeMismatch, "row contraction needs at least one block");
  dim_ = blocks_.front().rows();
  for (const auto& b : blocks_) {
    if (b.rows() != dim_ || b.cols() != dim_) {
      throw Error(ErrorCode::ShapeMismatch, "row contraction blocks must be square of equal size");
    }
  }
}

ComplexMatrix RowContraction::row() const { return hstack(blocks_, dim_); }

std::vector<ComplexMatrix> RowContraction::adjoints() const {
  std::vector<ComplexMatrix> out;
  out.reserve(blocks_.size());
  for (const auto& b : blocks_) out.push_back(b.adjoint());
  return out;
}

RowContraction RowContraction::scalar(std::vector<Complex> values) {
  std::vector<ComplexMatrix> blocks;
  for (Complex v : values) blocks.push_back(ComplexMatrix::Constant(1, 1, v));
  return RowContraction(std::move(blocks));
}

ContractionReport validate(const RowContraction& t, double tol) {
  const ComplexMatrix r = t.row();
  ContractionReport report;
  if (t.dim() == 0) {
    report.is_contraction = true;
    return report;
  }
  const double top = std::max(hermitian_eig(r * r.adjoint()).values(0), 0.0);
  report.norm = std::sqrt(top);
  report.is_contraction = top <= 1.0 + tol;
  return report;
}

void require_contraction(const RowContraction& t, double tol) {
  const ContractionReport report = validate(t, tol);
  if (!report.is_contraction) {
    throw Error(ErrorCode::NotContraction, "row norm " + std::to_string(report.norm));
  }
}

DefectPair defects(const RowContraction& t, double rank_tol) {
  require_contraction(t);
  const Index n = t.dim();
  const Index nd = n * t.arity();
  const ComplexMatrix r = t.row();
  DefectPair out;
  out.rank_tol = rank_tol;
  out.defect = psd_sqrt(ComplexMatrix::Identity(nd, nd) - r.adjoint() * r);
  out.defect_star = psd_sqrt(ComplexMatrix::Identity(n, n) - r * r.adjoint());
  out.basis = range_onb(out.defect, rank_tol);
  out.basis_star = range_onb(out.defect_star, rank_tol);
  return out;
}

OrthonormalBasis cnc_subspace(const RowContraction& t, double rank_tol) {
  require_contraction(t);
  const Index n = t.dim();
  const ComplexMatrix r = t.row();
  const OrthonormalBasis start = kernel_onb(ComplexMatrix::Identity(n, n) - r * r.adjoint(), rank_tol);
  return largest_invariant_subspace(start, t.adjoints(), rank_tol);
}

bool is_cnc(const RowContraction& t, double rank_tol) { return cnc_subspace(t, rank_tol).empty(); }

OrthonormalBasis cnc_subspace_bruteforce(const RowContraction& t, int depth, double rank_tol) {
  require_contraction(t);
  const Index n = t.dim();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  ComplexMatrix power = id;
  ComplexMatrix gap = ComplexMatrix::Zero(n, n);
  for (int k = 1; k <= depth; ++k) {
    ComplexMatrix next = ComplexMatrix::Zero(n, n);
    for (const auto& b : t.blocks()) next += b * power * b.adjoint();
    power = 0.5 * (next + next.adjoint());
    gap += id - power;
  }
  return kernel_onb(gap, rank_tol);
}

NCSeries char_symbol(const RowContraction& t, int degree, double rank_tol) {
  const DefectPair dp = defects(t, rank_tol);
  const Index n = t.dim();
  const int d = t.arity();
  const ComplexMatrix& qd = dp.basis.vectors;
  const ComplexMatrix& qs = dp.basis_star.vectors;
  NCSeries out(d, qd.cols(), qs.cols(), degree);
  out.set_coeff(0, -qs.adjoint() * t.row() * qd);

  const ComplexMatrix defect_in = dp.defect * qd;
  std::vector<ComplexMatrix> first;
  for (int j = 0; j < d; ++j) first.push_back(defect_in.middleRows(j * n, n));
  const std::vector<ComplexMatrix> states = word_recursion(first, t.adjoints(), degree);
  const ComplexMatrix out_map = qs.adjoint() * dp.defect_star;
  for (Index k = 1; k < out.size(); ++k) out.set_coeff(k, out_map * states[static_cast<size_t>(k)]);
  return out;
}

NCSeries fock_neumann_symbol(const std::vector<ComplexMatrix>& state_ops,
                             const std::vector<ComplexMatrix>& input_maps, const ComplexMatrix& output_map,
                             const ComplexMatrix& feedthrough, int degree) {
  const int d = static_cast<int>(state_ops.size());
  if (d == 0 || static_cast<int>(input_maps.size()) != d) {
    throw Error(ErrorCode::ShapeMismatch, "fock_neumann_symbol arity");
  }
  const Index n = state_ops.front().rows();
  const Index p = feedthrough.cols();
  const Index q = feedthrough.rows();
  const auto fock = build_fock(d, degree);
  const Index words = fock->dim();
  using Sparse = Eigen::SparseMatrix<Complex>;

  Sparse feedback(words * n, words * n);
  Sparse inject(words * n, words * p);
  for (int i = 0; i < d; ++i) {
    feedback += kron(fock->creation_right[static_cast<size_t>(i)], state_ops[static_cast<size_t>(i)]);
    inject += kron(fock->creation_right[static_cast<size_t>(i)], input_maps[static_cast<size_t>(i)]);
  }
  // Only the vacuum column block is needed: e_0 (x) h for h in the input space.
  const ComplexMatrix vacuum_in = ComplexMatrix::Identity(words * p, p);
  ComplexMatrix term = inject * vacuum_in;
  ComplexMatrix resolvent_applied = term;
  // The feedback operator raises word length, so the Neumann series is finite.
  for (int k = 1; k <= degree; ++k) {
    term = feedback * term;
    resolvent_applied += term;
  }
  TruncatedFock::SparseMatrix identity(words, words);
  identity.setIdentity();
  ComplexMatrix column = kron(identity, output_map) * resolvent_applied;
  column.topRows(q) += feedthrough;
  return series_from_fock_operator(column, d, p, q, degree);
}

NCSeries char_symbol_oracle(const RowContraction& t, int degree, double rank_tol) {
  const DefectPair dp = defects(t, rank_tol);
  const Index n = t.dim();
  const ComplexMatrix& qd = dp.basis.vectors;
  const ComplexMatrix& qs = dp.basis_star.vectors;
  const ComplexMatrix defect_in = dp.defect * qd;
  std::vector<ComplexMatrix> inputs;
  for (int j = 0; j < t.arity(); ++j) inputs.push_back(defect_in.middleRows(j * n, n));
  return fock_neumann_symbol(t.adjoints(), inputs, qs.adjoint() * dp.defect_star,
                             -qs.adjoint() * t.row() * qd, degree);
}

Colligation popescu_colligation(const RowContraction& t, double rank_tol) {
  const DefectPair dp = defects(t, rank_tol);
  const ComplexMatrix& qd = dp.basis.vectors;
  const ComplexMatrix& qs = dp.basis_star.vectors;
  return Colligation::from_blocks(t.adjoints(), dp.defect * qd, qs.adjoint() * dp.defect_star,
                                  -qs.adjoint() * t.row() * qd);
}

}  // namespace charfock
