#include <doctest.h>

#include "charfock/colligation.hpp"
#include "charfock/error.hpp"
#include "charfock/lifting.hpp"
#include "charfock/worked.hpp"
#include "helpers.hpp"

using namespace charfock;
using charfock::test::gap;

TEST_SUITE("colligation") {
  TEST_CASE("shape checks") {
    CHECK_THROWS_AS(Colligation::from_blocks({ComplexMatrix::Zero(2, 2)}, ComplexMatrix::Zero(3, 1),
                                             ComplexMatrix::Zero(1, 2), ComplexMatrix::Zero(1, 1)),
                    Error);
    const Colligation w = Colligation::from_blocks({ComplexMatrix::Zero(2, 2), ComplexMatrix::Zero(2, 2)},
                                                   ComplexMatrix::Zero(4, 1), ComplexMatrix::Zero(3, 2),
                                                   ComplexMatrix::Zero(3, 1));
    CHECK(w.matrix().rows() == 7);
    CHECK(w.matrix().cols() == 3);
    CHECK(w.input_block(1).rows() == 2);
  }

  TEST_CASE("scalar transfer function") {
    // D + C (1 - a z)^{-1} z b
    const Complex a = 0.5, b = 0.3, c = 0.7, d = -0.1;
    const Colligation w = Colligation::from_blocks({ComplexMatrix::Constant(1, 1, a)}, ComplexMatrix::Constant(1, 1, b),
                                                   ComplexMatrix::Constant(1, 1, c), ComplexMatrix::Constant(1, 1, d));
    const NCSeries s = transfer_symbol(w, 5);
    CHECK(s.coeff(0)(0, 0) == d);
    for (int n = 1; n <= 5; ++n) CHECK(std::abs(s.coeff(n)(0, 0) - c * std::pow(a, n - 1) * b) < 1e-15);
    CHECK(max_coeff_deviation(s, transfer_oracle(w, 5)) < 1e-15);
  }

  TEST_CASE("unobservable subspace of a decoupled state") {
    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    a(0, 0) = 0.5;
    a(1, 1) = 0.5;
    const Colligation w = Colligation::from_blocks({a}, ComplexMatrix::Ones(2, 1), ComplexMatrix::Identity(1, 2),
                                                   ComplexMatrix::Zero(1, 1));
    CHECK(unobservable_subspace(w).size() == 1);
    CHECK(unobservable_subspace_krylov(w).size() == 1);
  }

  TEST_CASE("structure theorem recovers the link and input unitary") {
    const Colligation v = lifting_colligation(blaschke_lifting(0.3));
    REQUIRE(is_coisometric(v).ok);
    const StructureDecomposition s = structure_decompose(v);
    CHECK(s.reconstruction_residual < 1e-10);
    CHECK(s.input_unitarity_residual < 1e-10);
    CHECK(s.link_coisometry_residual < 1e-10);
    CHECK(s.report.input_dim == s.report.defect_dim);
  }

  TEST_CASE("structure theorem rejects an input space of the wrong size") {
    // Input is the 2-dimensional lifted defect space, the basic operator has a 1-dimensional defect.
    const Colligation v = lifting_colligation(half_extension_lifting());
    try {
      structure_decompose(v);
      FAIL("expected HypothesisViolated");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::HypothesisViolated);
    }
  }

  TEST_CASE("non co-isometric colligations are rejected") {
    Rng rng(31);
    const Colligation w = random_colligation(rng, 2, 1, 1, 1, 0.5);
    CHECK_FALSE(is_coisometric(w).ok);
    CHECK_THROWS_AS(structure_decompose(w), Error);
  }

  TEST_CASE("defect-constrained constructor") {
    for (Index n = 1; n <= 4; ++n) {
      for (int d = 1; d <= 3; ++d) {
        for (Index k = n * (d - 1); k <= n * d; ++k) {
          CHECK(defects(make_defect_constrained(n, d, k)).basis.size() == k);
        }
        CHECK_THROWS_AS(make_defect_constrained(n, d, n * d + 1), Error);
        if (d > 1) CHECK_THROWS_AS(make_defect_constrained(n, d, n * (d - 1) - 1), Error);
      }
    }
    CHECK(defect_dim_admissible(2, 3, 4));
    CHECK_FALSE(defect_dim_admissible(2, 3, 3));
  }
}
