#include <doctest.h>

#include "charfock/error.hpp"
#include "charfock/mobius.hpp"
#include "charfock/worked.hpp"
#include "helpers.hpp"

using namespace charfock;
using charfock::test::gap;

TEST_SUITE("mobius") {
  TEST_CASE("scalar transform is the Blaschke map") {
    const Complex t(0.2, -0.1), a(0.3, 0.2);
    const ComplexMatrix m = mobius_contraction(ComplexMatrix::Constant(1, 1, t), a);
    CHECK(std::abs(m(0, 0) - (t - a) / (1.0 - std::conj(a) * t)) < 1e-15);
    CHECK(std::abs(mobius_point(0.0, a) - a) < 1e-15);
  }

  TEST_CASE("a = 0 changes nothing") {
    Rng rng(61);
    const ComplexMatrix t = random_with_norm(rng, 3, 3, 0.8);
    CHECK(gap(mobius_contraction(t, 0.0), t) < 1e-15);
    CHECK(gap(mobius_scaling(t, 0.0), ComplexMatrix::Identity(3, 3)) < 1e-15);
  }

  TEST_CASE("parameter and input validation") {
    const ComplexMatrix t = ComplexMatrix::Constant(1, 1, 0.5);
    CHECK_THROWS_AS(mobius_contraction(t, 1.0), Error);
    CHECK_THROWS_AS(mobius_contraction(ComplexMatrix::Constant(1, 1, 1.5), 0.1), Error);
    CHECK_THROWS_AS(mobius_contraction(ComplexMatrix::Zero(2, 3), 0.1), Error);
  }

  TEST_CASE("defect unitaries") {
    Rng rng(62);
    const ComplexMatrix t = random_with_norm(rng, 3, 3, 0.9);
    const MobiusData z = z_unitaries(t, Complex(0.3, -0.2));
    CHECK(z.unitarity_residual < 1e-12);
    CHECK(z.defect_relation_residual < 1e-12);
    CHECK(z.defect_star_relation_residual < 1e-12);
  }

  TEST_CASE("symbol relation for a single contraction") {
    Rng rng(63);
    const ComplexMatrix t = random_with_norm(rng, 3, 3, 0.95);
    const CfRelationReport r = verify_cf_relation(t, Complex(-0.4, 0.1), default_samples());
    CHECK(r.ok);
    CHECK(r.points.size() == default_samples().size());
  }

  TEST_CASE("lifting relations, corrected and displayed factored forms") {
    const LiftingCfReport r = verify_lifting_cf(half_extension_lifting(), 0.3, default_samples());
    CHECK(r.ok);
    CHECK(r.minimal);
    CHECK(r.block_residual < 1e-12);
    CHECK(r.involution_residual < 1e-12);
    CHECK(r.link_relation_residual < 1e-12);
    // The version with the moved defect in the corner is off by a visible amount.
    CHECK(*std::max_element(r.factored_as_displayed.begin(), r.factored_as_displayed.end()) > 1e-3);
  }

  TEST_CASE("transformed lifting stays minimal") {
    const MobiusLifting m = mobius_lifting(blaschke_lifting(Complex(0.0, 0.5)), Complex(0.25, 0.0));
    CHECK(m.minimal);
    CHECK(m.block_residual < 1e-12);
  }
}
