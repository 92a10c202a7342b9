#include <doctest.h>

#include "charfock/error.hpp"
#include "charfock/lifting.hpp"
#include "charfock/worked.hpp"
#include "helpers.hpp"

using namespace charfock;
using charfock::test::gap;

TEST_SUITE("lifting") {
  TEST_CASE("assembly and splitting") {
    const Lifting e = half_extension_lifting();
    const RowContraction whole = e.assembled();
    CHECK(whole.block(0)(1, 0) == Complex(0.5));
    const Lifting back = Lifting::from_assembled(whole, 1);
    CHECK(back.coupling()[0](0, 0) == Complex(0.5));
    ComplexMatrix upper = whole.block(0);
    upper(0, 1) = 0.1;
    CHECK_THROWS_AS(Lifting::from_assembled(RowContraction({upper}), 1), Error);
  }

  TEST_CASE("link of the worked examples") {
    CHECK(extract_gamma(nilpotent_extension_lifting()).link(0, 0).real() == doctest::Approx(1.0 / std::sqrt(3.0)));
    const GammaData g = extract_gamma(half_extension_lifting());
    CHECK(g.link(0, 0).real() == doctest::Approx(2.0 / 3.0));
    CHECK(g.link_defect(0, 0).real() == doctest::Approx(std::sqrt(5.0) / 3.0));
  }

  TEST_CASE("build rejects a non-contractive link") {
    const RowContraction c = RowContraction::scalar({0.5});
    CHECK_THROWS_AS(build_lifting(c, c, ComplexMatrix::Constant(1, 1, 1.2)), Error);
    CHECK_THROWS_AS(build_lifting(c, c, ComplexMatrix::Constant(2, 1, 0.2)), Error);
  }

  TEST_CASE("zero link is neither resolving nor minimal") {
    const Lifting e = build_lifting(RowContraction::scalar({0.5}), RowContraction::scalar({0.5}),
                                    ComplexMatrix::Zero(1, 1));
    const ResolvingReport r = resolving_check(e);
    CHECK_FALSE(r.resolving);
    CHECK(r.witness.size() == 1);
    CHECK_FALSE(minimality_check(e));
    CHECK(resolving_check(half_extension_lifting()).resolving);
    CHECK(minimality_check(half_extension_lifting()));
  }

  TEST_CASE("interleave permutation") {
    const ComplexMatrix p = interleave_permutation(2, 1, 3);
    CHECK(unitarity_residual(p) == 0.0);
    // First H_A slot of the interleaved order goes right after the three H_C blocks.
    CHECK(p(6, 2) == Complex(1.0));
  }

  TEST_CASE("sigma is unitary and the symbol routes agree") {
    Rng rng(41);
    for (int k = 0; k < 6; ++k) {
      const Lifting e = random_minimal_lifting(rng, 2, 2, 1 + k % 2);
      const SigmaMap s = sigma_map(e);
      CHECK(s.unitarity_residual < 1e-10);
      CHECK(s.consistency_residual < 1e-10);
      const NCSeries dec = lifting_char_decomposed(e, 4);
      CHECK(max_coeff_deviation(dec, lifting_char_direct(e, 4)) < 1e-10);
      CHECK(max_coeff_deviation(dec, transfer_symbol(lifting_colligation(e), 4)) < 1e-10);
    }
  }

  TEST_CASE("ambient symbol of the nilpotent extension") {
    const NCSeries theta = lifting_char_ambient(nilpotent_extension_lifting(), 3);
    CHECK(theta.coeff(0)(0, 0).real() == doctest::Approx(std::sqrt(2.0 / 3.0)));
    CHECK(std::abs(theta.coeff(0)(0, 1)) < 1e-15);
    CHECK(theta.coeff(1)(0, 1).real() == doctest::Approx(1.0 / std::sqrt(3.0)));
    CHECK(theta.coeff(2).cwiseAbs().maxCoeff() < 1e-15);
  }

  TEST_CASE("norm bound") {
    const Lifting e = half_extension_lifting();
    for (Complex l : {Complex(0.0), Complex(0.4), Complex(0.0, -0.3)}) {
      const NormBoundReport r = norm_bound_check(e, l);
      CHECK(r.ok);
      CHECK(r.lhs <= r.link_term + r.mobius_term + r.tail + 1e-8);
    }
    CHECK_THROWS_AS(norm_bound_check(Lifting(RowContraction::scalar({0.1, 0.1}), RowContraction::scalar({0.1, 0.1}),
                                             {ComplexMatrix::Zero(1, 1), ComplexMatrix::Zero(1, 1)}),
                                     0.1),
                    Error);
  }
}
