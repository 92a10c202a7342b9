#include "charfock/random.hpp"

#include <algorithm>
#include <cmath>

#include "charfock/error.hpp"

namespace charfock {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  // splitmix64 finalizer over master + golden-ratio stride.
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

ComplexMatrix random_gaussian(Rng& rng, Index rows, Index cols) {
  ComplexMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = rng.complex_normal();
  return m;
}

ComplexMatrix random_unitary(Rng& rng, Index n) {
  if (n == 0) return ComplexMatrix(0, 0);
  const ComplexMatrix g = random_gaussian(rng, n, n);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR();
  for (Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

ComplexMatrix random_with_norm(Rng& rng, Index rows, Index cols, double norm) {
  const Index k = std::min(rows, cols);
  if (k == 0) return ComplexMatrix::Zero(rows, cols);
  std::vector<double> values(static_cast<size_t>(k));
  values[0] = norm;
  for (Index i = 1; i < k; ++i) values[static_cast<size_t>(i)] = norm * rng.uniform();
  ComplexMatrix middle = ComplexMatrix::Zero(rows, cols);
  for (Index i = 0; i < k; ++i) middle(i, i) = values[static_cast<size_t>(i)];
  return random_unitary(rng, rows) * middle * random_unitary(rng, cols);
}

namespace {

RowContraction split_row(const ComplexMatrix& row, Index n, int d) {
  std::vector<ComplexMatrix> blocks;
  for (int i = 0; i < d; ++i) blocks.push_back(row.middleCols(i * n, n));
  return RowContraction(std::move(blocks));
}

RowContraction shifted(Rng& rng, Index n, int d) {
  ComplexMatrix shift = ComplexMatrix::Zero(n, n);
  for (Index i = 1; i < n; ++i) shift(i, i - 1) = 1.0;
  std::vector<Complex> weights;
  double total = 0.0;
  for (int i = 0; i < d; ++i) {
    weights.push_back(rng.complex_normal());
    total += std::norm(weights.back());
  }
  std::vector<ComplexMatrix> blocks;
  for (int i = 0; i < d; ++i) blocks.push_back(shift * (weights[static_cast<size_t>(i)] / std::sqrt(total)));
  return conjugate(RowContraction(std::move(blocks)), random_unitary(rng, n));
}

}  // namespace

RowContraction random_row_contraction(Rng& rng, Index n, int d, double norm) {
  return split_row(random_with_norm(rng, n, n * d, norm), n, d);
}

RowContraction random_row_contraction_with_coisometric_part(Rng& rng, Index n, int d, Index k) {
  if (k < 0 || k > n) throw Error(ErrorCode::OutOfRange, "coisometric part larger than space");
  const ComplexMatrix top = random_unitary(rng, k * d).topRows(k);
  const Index rest = n - k;
  const ComplexMatrix bottom = random_with_norm(rng, rest, rest * d, 0.3 + 0.6 * rng.uniform());
  std::vector<ComplexMatrix> blocks;
  for (int i = 0; i < d; ++i) {
    ComplexMatrix b = ComplexMatrix::Zero(n, n);
    b.topLeftCorner(k, k) = top.middleCols(i * k, k);
    b.bottomRightCorner(rest, rest) = bottom.middleCols(i * rest, rest);
    blocks.push_back(std::move(b));
  }
  return conjugate(RowContraction(std::move(blocks)), random_unitary(rng, n));
}

RowContraction random_mixed_row_contraction(Rng& rng, Index n, int d) {
  switch (rng.integer(0, 5)) {
    case 0:
    case 1: return random_row_contraction(rng, n, d, 0.3 + 0.65 * rng.uniform());
    case 2: return random_row_contraction(rng, n, d, 1.0);
    case 3: return shifted(rng, n, d);
    case 4: return random_row_contraction_with_coisometric_part(rng, n, d, rng.integer(1, static_cast<int>(n)));
    default: return random_row_contraction(rng, n, d, 0.05 + 0.2 * rng.uniform());
  }
}

RowContraction random_cnc_row_contraction(Rng& rng, Index n, int d) {
  for (int attempt = 0; attempt < 20; ++attempt) {
    RowContraction t = [&] {
      switch (rng.integer(0, 3)) {
        case 0: return random_row_contraction(rng, n, d, 1.0);
        case 1: return shifted(rng, n, d);
        default: return random_row_contraction(rng, n, d, 0.3 + 0.65 * rng.uniform());
      }
    }();
    if (is_cnc(t)) return t;
  }
  return random_row_contraction(rng, n, d, 0.5);
}

ComplexMatrix random_link(Rng& rng, Index rows, Index cols) {
  const double pick = rng.uniform();
  if (pick < 0.15 && rows <= cols && rows > 0) {
    return random_unitary(rng, rows) * random_unitary(rng, cols).topRows(rows);
  }
  const double norm = pick < 0.35 ? 1.0 : 0.2 + 0.75 * rng.uniform();
  return random_with_norm(rng, rows, cols, norm);
}

Lifting random_minimal_lifting(Rng& rng, Index nc, Index na, int d) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    const RowContraction base = random_mixed_row_contraction(rng, nc, d);
    const RowContraction ext = random_cnc_row_contraction(rng, na, d);
    const DefectPair dc = defects(base);
    const DefectPair da = defects(ext);
    const ComplexMatrix link = random_link(rng, dc.basis.size(), da.basis_star.size());
    Lifting e = build_lifting(base, ext, link);
    if (minimality_check(e)) return e;
  }
  throw Error(ErrorCode::DecompositionFailed, "could not draw a minimal lifting");
}

Colligation random_colligation(Rng& rng, Index state_dim, int d, Index in_dim, Index out_dim, double norm) {
  const Index top = d * state_dim;
  const ComplexMatrix w = random_with_norm(rng, top + out_dim, state_dim + in_dim, norm);
  std::vector<ComplexMatrix> a;
  for (int i = 0; i < d; ++i) a.push_back(w.block(i * state_dim, 0, state_dim, state_dim));
  return Colligation::from_blocks(std::move(a), w.topRightCorner(top, in_dim), w.bottomLeftCorner(out_dim, state_dim),
                                  w.bottomRightCorner(out_dim, in_dim));
}

RowContraction conjugate(const RowContraction& t, const ComplexMatrix& u) {
  std::vector<ComplexMatrix> blocks;
  for (const auto& b : t.blocks()) blocks.push_back(u * b * u.adjoint());
  return RowContraction(std::move(blocks));
}

Lifting conjugate_extension(const Lifting& e, const ComplexMatrix& u) {
  std::vector<ComplexMatrix> coupling;
  for (const auto& b : e.coupling()) coupling.push_back(u * b);
  return Lifting(e.base(), conjugate(e.extension(), u), std::move(coupling));
}

}  // namespace charfock
