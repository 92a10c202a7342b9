#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "charfock/error.hpp"
#include "helpers.hpp"

using namespace charfock;
using charfock::test::gap;

TEST_SUITE("numlin") {
  TEST_CASE("jacobi eigenvalues agree with Eigen's solver") {
    Rng rng(11);
    for (Index n : {1, 2, 5, 9, 16}) {
      const ComplexMatrix h = test::random_hermitian(rng, n);
      const HermitianEig eig = hermitian_eig(h);
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> ref(h);
      const Eigen::VectorXd expected = ref.eigenvalues().reverse();
      CHECK((eig.values - expected).cwiseAbs().maxCoeff() < 1e-12 * (1.0 + h.norm()));
      const ComplexMatrix back = eig.vectors * eig.values.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
      CHECK(gap(back, h) < 1e-12 * (1.0 + h.norm()));
      CHECK(unitarity_residual(eig.vectors) < 1e-13);
    }
  }

  TEST_CASE("repeated eigenvalues and zero matrix") {
    const ComplexMatrix p = ComplexMatrix::Identity(4, 4);
    CHECK(hermitian_eig(p).values.isApprox(Eigen::VectorXd::Ones(4)));
    const HermitianEig z = hermitian_eig(ComplexMatrix::Zero(3, 3));
    CHECK(z.values.cwiseAbs().maxCoeff() == 0.0);
    CHECK(unitarity_residual(z.vectors) == 0.0);
  }

  TEST_CASE("output is bit-for-bit reproducible") {
    Rng rng(3);
    const ComplexMatrix h = test::random_hermitian(rng, 7);
    const HermitianEig a = hermitian_eig(h);
    const HermitianEig b = hermitian_eig(h);
    CHECK(a.values == b.values);
    CHECK(a.vectors == b.vectors);
  }

  TEST_CASE("non-Hermitian input is rejected") {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    CHECK_THROWS_AS(hermitian_eig(m), Error);
    CHECK_THROWS_AS(hermitian_eig(ComplexMatrix::Zero(2, 3)), Error);
  }

  TEST_CASE("psd square root") {
    Rng rng(5);
    const ComplexMatrix g = random_gaussian(rng, 6, 3);
    const ComplexMatrix psd = g * g.adjoint();  // rank 3
    const ComplexMatrix s = psd_sqrt(psd);
    CHECK(gap(s * s, psd) < 1e-10);
    CHECK(hermitian_defect(s) < 1e-14);
    ComplexMatrix neg = ComplexMatrix::Identity(2, 2);
    neg(1, 1) = -0.5;
    try {
      psd_sqrt(neg);
      FAIL("expected NotPSD");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotPSD);
    }
  }

  TEST_CASE("thin svd for square, tall and wide shapes") {
    Rng rng(8);
    for (auto [r, c] : {std::pair<Index, Index>{4, 4}, {9, 3}, {2, 7}, {6, 1}}) {
      const ComplexMatrix m = random_gaussian(rng, r, c);
      const ThinSvd svd = thin_svd(m);
      const ComplexMatrix back = svd.left * svd.values.cast<Complex>().asDiagonal() * svd.right.adjoint();
      CHECK(gap(back, m) < 1e-12);
      CHECK(isometry_residual(svd.left) < 1e-12);
      CHECK(isometry_residual(svd.right) < 1e-12);
      Eigen::JacobiSVD<ComplexMatrix> ref(m);
      CHECK((svd.values - ref.singularValues()).cwiseAbs().maxCoeff() < 1e-12);
    }
  }

  TEST_CASE("pseudo-inverse of a rank-deficient matrix") {
    Rng rng(9);
    const ComplexMatrix m = random_gaussian(rng, 5, 2) * random_gaussian(rng, 2, 4);
    const ComplexMatrix p = pinv(m);
    CHECK(gap(m * p * m, m) < 1e-10);
    CHECK(gap(p * m * p, p) < 1e-10);
    CHECK(hermitian_defect(m * p) < 1e-10);
    CHECK(column_space(m).size() == 2);
    CHECK(null_space(m).size() == 2);
  }

  TEST_CASE("polar factor and procrustes") {
    Rng rng(12);
    const ComplexMatrix m = random_gaussian(rng, 4, 4);
    const ComplexMatrix u = polar_unitary(m);
    CHECK(unitarity_residual(u) < 1e-12);
    CHECK(hermitian_defect(u.adjoint() * m) < 1e-12);
    const ComplexMatrix w = random_unitary(rng, 3);
    const ComplexMatrix x = random_gaussian(rng, 5, 3);
    CHECK(gap(procrustes({{x, x * w}}), w) < 1e-10);
  }

  TEST_CASE("invariant subspaces") {
    // Shift on C^3: e0 -> e1 -> e2 -> 0.
    ComplexMatrix s = ComplexMatrix::Zero(3, 3);
    s(1, 0) = 1.0;
    s(2, 1) = 1.0;
    OrthonormalBasis e0{3, ComplexMatrix::Identity(3, 1)};
    CHECK(smallest_invariant_subspace(e0, {s}).size() == 3);
    OrthonormalBasis tail{3, ComplexMatrix::Identity(3, 3).rightCols(2)};
    const OrthonormalBasis inv = largest_invariant_subspace(tail, {s});
    CHECK(inv.size() == 2);
    CHECK(orthogonal_complement(inv).size() == 1);
  }

  TEST_CASE("block helpers") {
    const ComplexMatrix a = ComplexMatrix::Constant(1, 2, 1.0);
    const ComplexMatrix b = ComplexMatrix::Constant(2, 1, 2.0);
    const ComplexMatrix d = direct_sum(a, b);
    CHECK(d.rows() == 3);
    CHECK(d.cols() == 3);
    CHECK(d(0, 2) == Complex(0.0));
    CHECK(repeat_diag(a, 3).rows() == 3);
    CHECK(vstack({a, a}, 2).rows() == 2);
    CHECK(hstack({b, b}, 2).cols() == 2);
  }
}
