#include <doctest.h>

#include "charfock/equiv.hpp"
#include "charfock/worked.hpp"
#include "helpers.hpp"

using namespace charfock;
using charfock::test::gap;

TEST_SUITE("equiv") {
  TEST_CASE("equivalence recovers the input unitary") {
    Rng rng(51);
    NCSeries s(2, 3, 2, 3);
    for (Index k = 0; k < s.size(); ++k) s.set_coeff(k, random_gaussian(rng, 2, 3));
    const ComplexMatrix v = random_unitary(rng, 3);
    const EquivalenceResult r = equivalence_solve(series_apply_input(s, v), s);
    REQUIRE(r.status == Verdict::Confirmed);
    CHECK(r.residual < 1e-10);
    CHECK(gap(r.unitaries[0], v) < 1e-8);
  }

  TEST_CASE("different singular values are refuted") {
    const EquivalenceResult r = equivalence_solve(blaschke_series(0.3, 6), blaschke_series(0.5, 6));
    CHECK(r.status == Verdict::RefutedByInvariant);
    CHECK_FALSE(r.certificate.empty());
    const EquivalenceResult c = coincidence_solve(blaschke_series(0.3, 6), blaschke_series(0.5, 6));
    CHECK(c.status == Verdict::RefutedByInvariant);
  }

  TEST_CASE("an output phase is a coincidence") {
    const NCSeries s = blaschke_series(Complex(0.2, 0.3), 8);
    const NCSeries t = series_apply_output(ComplexMatrix::Constant(1, 1, Complex(0.0, 1.0)), s);
    const EquivalenceResult r = coincidence_solve(s, t);
    CHECK(r.status == Verdict::Confirmed);
    CHECK(r.residual < 1e-10);
  }

  TEST_CASE("coincidence of conjugated row contractions") {
    Rng rng(52);
    for (int k = 0; k < 8; ++k) {
      const RowContraction t = random_cnc_row_contraction(rng, 3, 2);
      const ComplexMatrix u = random_unitary(rng, 3);
      const RowContraction moved = conjugate(t, u);
      SolverOptions opts;
      opts.seed = static_cast<std::uint64_t>(k);
      const EquivalenceResult r = coincidence_solve(char_symbol(t, 5), char_symbol(moved, 5), opts);
      CHECK(r.status == Verdict::Confirmed);
      CHECK(r.max_objective_increase < 1e-10);
      const EquivalenceResult q = rowcon_unitary_equiv(t, moved, opts);
      REQUIRE(q.status == Verdict::Confirmed);
      CHECK(gap(q.unitaries[0] * t.block(0), moved.block(0) * q.unitaries[0]) < 1e-8);
    }
  }

  TEST_CASE("solver is deterministic for a fixed seed") {
    Rng rng(53);
    const RowContraction t = random_cnc_row_contraction(rng, 3, 2);
    const RowContraction moved = conjugate(t, random_unitary(rng, 3));
    SolverOptions opts;
    opts.seed = 99;
    const EquivalenceResult a = coincidence_solve(char_symbol(t, 4), char_symbol(moved, 4), opts);
    const EquivalenceResult b = coincidence_solve(char_symbol(t, 4), char_symbol(moved, 4), opts);
    CHECK(a.residual == b.residual);
    CHECK(a.unitaries[0] == b.unitaries[0]);
  }

  TEST_CASE("lifting unitary from equivalent symbols") {
    Rng rng(54);
    const Lifting e = random_minimal_lifting(rng, 2, 2, 2);
    const ComplexMatrix u = random_unitary(rng, 2);
    const Lifting moved = conjugate_extension(e, u);
    const EquivalenceResult r = equivalence_solve(lifting_char_decomposed(e, 5), lifting_char_decomposed(moved, 5));
    REQUIRE(r.status == Verdict::Confirmed);
    const LiftingUnitaryReport rep = reconstruct_lifting_unitary(e, moved, r.unitaries[0]);
    CHECK(rep.worst() < 1e-8);
    CHECK(gap(rep.unitary, u) < 1e-8);
  }

  TEST_CASE("default tolerance") {
    CHECK(default_symbol_tol(blaschke_series(0.0, 3)) == doctest::Approx(2e-8));
  }
}
