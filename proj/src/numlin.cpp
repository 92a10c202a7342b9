#include "charfock/numlin.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "charfock/error.hpp"

namespace charfock {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::ArityNotOne: return "ArityNotOne";
    case ErrorCode::NotContraction: return "NotContraction";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::DecompositionFailed: return "DecompositionFailed";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::GammaNotContractive: return "GammaNotContractive";
    case ErrorCode::ResidualTooLarge: return "ResidualTooLarge";
    case ErrorCode::NotWellDefined: return "NotWellDefined";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::DefectRankMismatch: return "DefectRankMismatch";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

namespace {

constexpr int kMaxSweeps = 100;

// Frobenius norm is cheap and bounds the spectral norm from above.
double frobenius(const ComplexMatrix& m) { return m.norm(); }

void apply_phase_convention(ComplexMatrix& v) {
  for (Index j = 0; j < v.cols(); ++j) {
    double best = 0.0;
    for (Index i = 0; i < v.rows(); ++i) best = std::max(best, std::abs(v(i, j)));
    if (best == 0.0) continue;
    Index pick = 0;
    for (Index i = 0; i < v.rows(); ++i) {
      if (std::abs(v(i, j)) >= best * (1.0 - 1e-10)) {
        pick = i;
        break;
      }
    }
    const Complex z = v(pick, j);
    v.col(j) *= std::conj(z) / std::abs(z);
    v(pick, j) = Complex(std::abs(v(pick, j)), 0.0);
  }
}

}  // namespace

HermitianEig hermitian_eig(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::NotSquare, "hermitian_eig");
  const Index n = m.rows();
  const double scale = frobenius(m);
  if ((m - m.adjoint()).norm() > 1e-10 * (1.0 + scale)) {
    throw Error(ErrorCode::NotHermitian, "hermitian_eig: asymmetry above tolerance");
  }
  ComplexMatrix a = 0.5 * (m + m.adjoint());
  ComplexMatrix v = ComplexMatrix::Identity(n, n);

  for (int sweep = 0; sweep < kMaxSweeps && scale > 0.0; ++sweep) {
    double off = 0.0;
    for (Index p = 0; p < n; ++p)
      for (Index q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) <= 1e-15 * scale) break;

    bool rotated = false;

    for (Index p = 0; p < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double g = std::abs(apq);
        if (g <= 1e-300 || g <= 1e-17 * scale) continue;
        rotated = true;
        const Complex phase = apq / g;
        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * g);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // Rotation block [[vpp, vpq], [vqp, vqq]] = diag(1, conj(phase)) * [[c, s], [-s, c]].
        const Complex vpp(c, 0.0);
        const Complex vpq(s, 0.0);
        const Complex vqp = -s * std::conj(phase);
        const Complex vqq = c * std::conj(phase);

        for (Index k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * vpp + akq * vqp;
          a(k, q) = akp * vpq + akq * vqq;
        }
        for (Index k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(vpp) * apk + std::conj(vqp) * aqk;
          a(q, k) = std::conj(vpq) * apk + std::conj(vqq) * aqk;
        }
        a(p, q) = Complex(0.0, 0.0);
        a(q, p) = Complex(0.0, 0.0);
        a(p, p) = Complex(a(p, p).real(), 0.0);
        a(q, q) = Complex(a(q, q).real(), 0.0);

        for (Index k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * vpp + vkq * vqp;
          v(k, q) = vkp * vpq + vkq * vqq;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index i, Index j) { return a(i, i).real() > a(j, j).real(); });

  HermitianEig out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    out.values(k) = a(order[k], order[k]).real();
    out.vectors.col(k) = v.col(order[k]);
  }
  apply_phase_convention(out.vectors);
  return out;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m, double clamp_tol) {
  const HermitianEig eig = hermitian_eig(m);
  const Index n = m.rows();
  if (n == 0) return ComplexMatrix(0, 0);
  const double norm = std::max(std::abs(eig.values(0)), std::abs(eig.values(n - 1)));
  const double floor = clamp_tol * std::max(norm, 1.0);
  Eigen::VectorXd roots(n);
  for (Index k = 0; k < n; ++k) {
    const double lambda = eig.values(k);
    if (lambda < -floor) throw Error(ErrorCode::NotPSD, "psd_sqrt: eigenvalue " + std::to_string(lambda));
    roots(k) = lambda <= floor ? 0.0 : std::sqrt(lambda);
  }
  ComplexMatrix s = eig.vectors * roots.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
  return 0.5 * (s + s.adjoint());
}

namespace {

OrthonormalBasis select_eigvecs(const HermitianEig& eig, double rank_tol, bool above) {
  const Index n = eig.values.size();
  const double top = n > 0 ? eig.values(0) : 0.0;
  const double threshold = rank_tol * std::max(top, 1.0);
  std::vector<Index> keep;
  for (Index k = 0; k < n; ++k) {
    if ((eig.values(k) > threshold) == above) keep.push_back(k);
  }
  OrthonormalBasis out{n, ComplexMatrix(n, static_cast<Index>(keep.size()))};
  for (size_t j = 0; j < keep.size(); ++j) out.vectors.col(static_cast<Index>(j)) = eig.vectors.col(keep[j]);
  return out;
}

}  // namespace

OrthonormalBasis range_onb(const ComplexMatrix& m, double rank_tol) {
  return select_eigvecs(hermitian_eig(m), rank_tol, true);
}

OrthonormalBasis kernel_onb(const ComplexMatrix& m, double rank_tol) {
  return select_eigvecs(hermitian_eig(m), rank_tol, false);
}

ThinSvd thin_svd(const ComplexMatrix& m, double rank_tol) {
  const Index r = m.rows();
  const Index c = m.cols();
  // Reduce a tall or wide matrix to its square triangular factor first so the
  // dilation stays 2 min(r, c) wide.
  if (r > c && c > 0) {
    const Eigen::HouseholderQR<ComplexMatrix> qr(m);
    ComplexMatrix q = ComplexMatrix::Identity(r, c);
    q.applyOnTheLeft(qr.householderQ());
    const ComplexMatrix tri = qr.matrixQR().topRows(c).triangularView<Eigen::Upper>();
    ThinSvd inner = thin_svd(tri, rank_tol);
    inner.left = q * inner.left;
    return inner;
  }
  if (c > r && r > 0) {
    ThinSvd inner = thin_svd(m.adjoint(), rank_tol);
    std::swap(inner.left, inner.right);
    return inner;
  }
  ComplexMatrix dilation = ComplexMatrix::Zero(r + c, r + c);
  dilation.topRightCorner(r, c) = m;
  dilation.bottomLeftCorner(c, r) = m.adjoint();
  const HermitianEig eig = hermitian_eig(dilation);
  const double top = (r + c) > 0 ? eig.values(0) : 0.0;
  const double threshold = rank_tol * std::max(top, 1.0);
  Index k = 0;
  while (k < eig.values.size() && eig.values(k) > threshold) ++k;
  ThinSvd out;
  out.values = eig.values.head(k);
  out.left = std::sqrt(2.0) * eig.vectors.topLeftCorner(r, k);
  out.right = std::sqrt(2.0) * eig.vectors.bottomLeftCorner(c, k);
  return out;
}

ComplexMatrix pinv(const ComplexMatrix& m, double rank_tol) {
  const ThinSvd svd = thin_svd(m, rank_tol);
  const Eigen::VectorXcd inv = svd.values.cwiseInverse().cast<Complex>();
  return svd.right * inv.asDiagonal() * svd.left.adjoint();
}

OrthonormalBasis orthogonal_complement(const OrthonormalBasis& basis) {
  const Index n = basis.ambient_dim;
  if (basis.empty()) return OrthonormalBasis::full(n);
  const ComplexMatrix residual = ComplexMatrix::Identity(n, n) - basis.projector();
  // Eigenvalues of a projector are 0 or 1; 0.5 separates them robustly.
  return range_onb(residual, 0.5);
}

ComplexMatrix polar_unitary(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::NotSquare, "polar_unitary");
  const Index n = m.rows();
  const ThinSvd svd = thin_svd(m);
  ComplexMatrix u = svd.left * svd.right.adjoint();
  if (svd.values.size() < n) {
    const OrthonormalBasis left_rest = orthogonal_complement({n, svd.left});
    const OrthonormalBasis right_rest = orthogonal_complement({n, svd.right});
    u += left_rest.vectors * right_rest.vectors.adjoint();
  }
  return u;
}

ComplexMatrix procrustes(const std::vector<std::pair<ComplexMatrix, ComplexMatrix>>& targets) {
  if (targets.empty()) throw Error(ErrorCode::ShapeMismatch, "procrustes: no targets");
  const Index xr = targets.front().first.rows();
  const Index xc = targets.front().first.cols();
  const Index yc = targets.front().second.cols();
  if (xc != yc) throw Error(ErrorCode::ShapeMismatch, "procrustes: unitary must be square");
  ComplexMatrix sum = ComplexMatrix::Zero(xc, yc);
  for (const auto& [x, y] : targets) {
    if (x.rows() != xr || x.cols() != xc || y.rows() != xr || y.cols() != yc) {
      throw Error(ErrorCode::ShapeMismatch, "procrustes: inconsistent pair shapes");
    }
    sum += x.adjoint() * y;
  }
  return polar_unitary(sum);
}

OrthonormalBasis column_space(const ComplexMatrix& m, double rank_tol) {
  const ThinSvd svd = thin_svd(m, rank_tol);
  return {m.rows(), svd.left};
}

OrthonormalBasis null_space(const ComplexMatrix& m, double rank_tol) {
  if (m.rows() == 0) return OrthonormalBasis::full(m.cols());
  const ThinSvd svd = thin_svd(m, rank_tol);
  return orthogonal_complement({m.cols(), svd.right});
}

OrthonormalBasis largest_invariant_subspace(const OrthonormalBasis& start,
                                            const std::vector<ComplexMatrix>& ops,
                                            double rank_tol) {
  const Index n = start.ambient_dim;
  OrthonormalBasis current = start;
  for (Index step = 0; step <= n && !current.empty(); ++step) {
    const ComplexMatrix outside = ComplexMatrix::Identity(n, n) - current.projector();
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(ops.size());
    for (const auto& op : ops) blocks.push_back(outside * op * current.vectors);
    const OrthonormalBasis keep = null_space(vstack(blocks, current.size()), rank_tol);
    if (keep.size() == current.size()) break;
    current = {n, current.vectors * keep.vectors};
  }
  return current;
}

OrthonormalBasis smallest_invariant_subspace(const OrthonormalBasis& start,
                                             const std::vector<ComplexMatrix>& ops,
                                             double rank_tol) {
  const Index n = start.ambient_dim;
  OrthonormalBasis current = start;
  for (Index step = 0; step <= n && current.size() < n; ++step) {
    const ComplexMatrix outside = ComplexMatrix::Identity(n, n) - current.projector();
    std::vector<ComplexMatrix> blocks;
    for (const auto& op : ops) blocks.push_back(outside * op * current.vectors);
    const OrthonormalBasis fresh = column_space(hstack(blocks, n), rank_tol);
    if (fresh.empty()) break;
    ComplexMatrix merged(n, current.size() + fresh.size());
    merged << current.vectors, fresh.vectors;
    // One re-orthonormalization pass keeps the basis an isometry to rounding.
    current = column_space(merged, 0.5);
  }
  return current;
}

double spectral_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  const ThinSvd svd = thin_svd(m, 0.0);
  return svd.values.size() > 0 ? svd.values(0) : 0.0;
}

double unitarity_residual(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  const Index n = u.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  return std::max(spectral_norm(u.adjoint() * u - id), spectral_norm(u * u.adjoint() - id));
}

double isometry_residual(const ComplexMatrix& q) {
  const Index k = q.cols();
  return spectral_norm(q.adjoint() * q - ComplexMatrix::Identity(k, k));
}

double hermitian_defect(const ComplexMatrix& m) { return (m - m.adjoint()).norm(); }

bool all_finite(const ComplexMatrix& m) {
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out = ComplexMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

ComplexMatrix repeat_diag(const ComplexMatrix& m, Index copies) {
  ComplexMatrix out = ComplexMatrix::Zero(m.rows() * copies, m.cols() * copies);
  for (Index i = 0; i < copies; ++i) out.block(i * m.rows(), i * m.cols(), m.rows(), m.cols()) = m;
  return out;
}

ComplexMatrix vstack(const std::vector<ComplexMatrix>& blocks, Index cols) {
  Index rows = 0;
  for (const auto& b : blocks) rows += b.rows();
  ComplexMatrix out(rows, cols);
  Index at = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols) throw Error(ErrorCode::ShapeMismatch, "vstack");
    out.middleRows(at, b.rows()) = b;
    at += b.rows();
  }
  return out;
}

ComplexMatrix hstack(const std::vector<ComplexMatrix>& blocks, Index rows) {
  Index cols = 0;
  for (const auto& b : blocks) cols += b.cols();
  ComplexMatrix out(rows, cols);
  Index at = 0;
  for (const auto& b : blocks) {
    if (b.rows() != rows) throw Error(ErrorCode::ShapeMismatch, "hstack");
    out.middleCols(at, b.cols()) = b;
    at += b.cols();
  }
  return out;
}

}  // namespace charfock
