#pragma once

// Seeded generators for the property suites: unitaries, row contractions of
// several shapes, and minimal liftings.

#include <cstdint>
#include <random>

#include "charfock/lifting.hpp"
#include "charfock/rowcon.hpp"

namespace charfock {

/// Per-case seed from a master seed; stable across platforms.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  /// Uniform integer in [lo, hi].
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  Complex complex_normal() { return {normal(), normal()}; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

ComplexMatrix random_gaussian(Rng& rng, Index rows, Index cols);
/// Haar-distributed unitary (QR of a Gaussian with the R-diagonal phases removed).
ComplexMatrix random_unitary(Rng& rng, Index n);
/// Matrix with prescribed singular values (descending, padded with zeros).
ComplexMatrix random_with_norm(Rng& rng, Index rows, Index cols, double norm);

/// Row contraction with row norm exactly `norm` (< 1 gives a strict contraction).
RowContraction random_row_contraction(Rng& rng, Index n, int d, double norm);

/// Row contraction with a co-isometric part on a random k-dimensional subspace,
/// so the subspace found by cnc_subspace has dimension >= k.
RowContraction random_row_contraction_with_coisometric_part(Rng& rng, Index n, int d, Index k);

/// Mixture used by the corpora: strict, norm-one, nilpotent-shift and co-isometric-part cases.
RowContraction random_mixed_row_contraction(Rng& rng, Index n, int d);

/// c.n.c. row contraction (strict, norm-one generic, or a rotated nilpotent shift).
RowContraction random_cnc_row_contraction(Rng& rng, Index n, int d);

/// Contraction of the given shape whose norm is 1 with probability ~1/4.
ComplexMatrix random_link(Rng& rng, Index rows, Index cols);

/// Minimal lifting of a random row contraction on C^{nc} by a c.n.c. one on C^{na}.
Lifting random_minimal_lifting(Rng& rng, Index nc, Index na, int d);

/// Colligation cut from a random contraction of norm `norm`.
Colligation random_colligation(Rng& rng, Index state_dim, int d, Index in_dim, Index out_dim, double norm);

/// Conjugates every block by a unitary: U T_i U*.
RowContraction conjugate(const RowContraction& t, const ComplexMatrix& u);

/// Lifting conjugated by diag(I, u): coupling u B_i, extension u A_i u*.
Lifting conjugate_extension(const Lifting& e, const ComplexMatrix& u);

}  // namespace charfock
