#pragma once

// Dense complex kernels shared by every module: Hermitian eigendecomposition
// (cyclic Jacobi), PSD square roots, range/kernel bases, pseudo-inverses and
// unitary Procrustes fits.

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace charfock {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr double kDefaultRankTol = 1e-10;
inline constexpr double kDefaultClampTol = 1e-10;

struct Tolerances {
  double rank_tol = kDefaultRankTol;
  double clamp_tol = kDefaultClampTol;
};

/// Columns of an isometry into C^ambient_dim.
struct OrthonormalBasis {
  Index ambient_dim = 0;
  ComplexMatrix vectors;

  Index size() const { return vectors.cols(); }
  bool empty() const { return vectors.cols() == 0; }
  /// Orthogonal projector onto the span.
  ComplexMatrix projector() const { return vectors * vectors.adjoint(); }

  static OrthonormalBasis none(Index ambient_dim) {
    return {ambient_dim, ComplexMatrix(ambient_dim, 0)};
  }
  static OrthonormalBasis full(Index ambient_dim) {
    return {ambient_dim, ComplexMatrix::Identity(ambient_dim, ambient_dim)};
  }
};

struct HermitianEig {
  Eigen::VectorXd values;  // descending
  ComplexMatrix vectors;   // unitary, columns match values
};

/// Cyclic Jacobi eigendecomposition of a Hermitian matrix.
///
/// Eigenvalues are sorted in descending order. Every eigenvector is scaled so
/// that its first component of largest modulus is real and nonnegative, which
/// makes the output reproducible bit-for-bit for identical input.
HermitianEig hermitian_eig(const ComplexMatrix& m);

/// Hermitian PSD square root. Eigenvalues with |lambda| <= clamp_tol*max(||M||,1)
/// are set to zero; anything more negative raises NotPSD.
ComplexMatrix psd_sqrt(const ComplexMatrix& m, double clamp_tol = kDefaultClampTol);

/// Orthonormal basis of the eigenspaces of a Hermitian matrix whose eigenvalue
/// exceeds rank_tol*max(lambda_max, 1).
OrthonormalBasis range_onb(const ComplexMatrix& m, double rank_tol = kDefaultRankTol);

/// Orthonormal basis of the eigenspaces of a Hermitian PSD matrix with
/// eigenvalue at most rank_tol*max(lambda_max, 1); complement of range_onb.
OrthonormalBasis kernel_onb(const ComplexMatrix& m, double rank_tol = kDefaultRankTol);

/// Thin singular value decomposition restricted to sigma > rank_tol*max(sigma_max, 1).
/// Computed from the Jacobi eigendecomposition of the Hermitian dilation
/// [[0, M], [M*, 0]], so small singular values keep full relative accuracy.
struct ThinSvd {
  Eigen::VectorXd values;
  ComplexMatrix left;
  ComplexMatrix right;
};
ThinSvd thin_svd(const ComplexMatrix& m, double rank_tol = kDefaultRankTol);

ComplexMatrix pinv(const ComplexMatrix& m, double rank_tol = kDefaultRankTol);

/// Unitary factor U of M = U P. Null directions of a singular M are matched in
/// the order produced by the eigenvector phase convention.
ComplexMatrix polar_unitary(const ComplexMatrix& m);

/// Unitary U maximizing sum_k Re tr(U* X_k* Y_k), i.e. the best fit Y_k ~ X_k U.
ComplexMatrix procrustes(const std::vector<std::pair<ComplexMatrix, ComplexMatrix>>& targets);

OrthonormalBasis column_space(const ComplexMatrix& m, double rank_tol = kDefaultRankTol);
OrthonormalBasis null_space(const ComplexMatrix& m, double rank_tol = kDefaultRankTol);
OrthonormalBasis orthogonal_complement(const OrthonormalBasis& basis);

/// Largest subspace of span(start) mapped into itself by every operator.
OrthonormalBasis largest_invariant_subspace(const OrthonormalBasis& start,
                                            const std::vector<ComplexMatrix>& ops,
                                            double rank_tol = kDefaultRankTol);

/// Smallest subspace containing span(start) that every operator maps into itself.
OrthonormalBasis smallest_invariant_subspace(const OrthonormalBasis& start,
                                             const std::vector<ComplexMatrix>& ops,
                                             double rank_tol = kDefaultRankTol);

double spectral_norm(const ComplexMatrix& m);
/// max(||U*U - I||, ||UU* - I||) in spectral norm.
double unitarity_residual(const ComplexMatrix& u);
/// ||Q*Q - I|| in spectral norm.
double isometry_residual(const ComplexMatrix& q);
double hermitian_defect(const ComplexMatrix& m);
bool all_finite(const ComplexMatrix& m);

/// Block diagonal direct sum.
ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b);
/// d-fold block diagonal copy of m.
ComplexMatrix repeat_diag(const ComplexMatrix& m, Index copies);
ComplexMatrix vstack(const std::vector<ComplexMatrix>& blocks, Index cols);
ComplexMatrix hstack(const std::vector<ComplexMatrix>& blocks, Index rows);

}  // namespace charfock
