#include <doctest.h>

#include "charfock/colligation.hpp"
#include "charfock/error.hpp"
#include "charfock/rowcon.hpp"
#include "charfock/worked.hpp"
#include "helpers.hpp"

using namespace charfock;
using charfock::test::gap;

TEST_SUITE("rowcon") {
  TEST_CASE("contraction validation") {
    CHECK(validate(RowContraction::scalar({0.6, 0.8})).is_contraction);
    CHECK_FALSE(validate(RowContraction::scalar({0.9, 0.9})).is_contraction);
    CHECK_THROWS_AS(require_contraction(RowContraction::scalar({1.5})), Error);
    CHECK_THROWS_AS(RowContraction({ComplexMatrix::Zero(2, 2), ComplexMatrix::Zero(3, 3)}), Error);
  }

  TEST_CASE("defect operators satisfy their defining identities") {
    Rng rng(21);
    const RowContraction t = random_row_contraction(rng, 3, 2, 0.9);
    const DefectPair dp = defects(t);
    const ComplexMatrix row = t.row();
    CHECK(gap(dp.defect * dp.defect, ComplexMatrix::Identity(6, 6) - row.adjoint() * row) < 1e-12);
    CHECK(gap(dp.defect_star * dp.defect_star, ComplexMatrix::Identity(3, 3) - row * row.adjoint()) < 1e-12);
    // T D_T = D_{*,T} T
    CHECK(gap(row * dp.defect, dp.defect_star * row) < 1e-12);
    CHECK(dp.basis.size() == 6);
    CHECK(dp.basis_star.size() == 3);
  }

  TEST_CASE("scalar symbol is the Blaschke factor") {
    const Complex t(0.3, 0.4);
    const NCSeries s = char_symbol(RowContraction::scalar({t}), 10);
    CHECK(max_coeff_deviation(s, blaschke_series(t, 10)) < 1e-14);
  }

  TEST_CASE("closed form agrees with the Fock-space route") {
    Rng rng(22);
    for (int k = 0; k < 5; ++k) {
      const RowContraction t = random_mixed_row_contraction(rng, 3, 2);
      CHECK(max_coeff_deviation(char_symbol(t, 4), char_symbol_oracle(t, 4)) < 1e-12);
    }
  }

  TEST_CASE("c.n.c. detection") {
    Rng rng(23);
    // A unitary is co-isometric everywhere.
    const RowContraction u({random_unitary(rng, 3)});
    CHECK(cnc_subspace(u).size() == 3);
    CHECK_FALSE(is_cnc(u));
    ComplexMatrix shift = ComplexMatrix::Zero(3, 3);
    shift(1, 0) = 1.0;
    shift(2, 1) = 1.0;
    CHECK(is_cnc(RowContraction({shift})));
    const RowContraction part = random_row_contraction_with_coisometric_part(rng, 4, 2, 2);
    CHECK(cnc_subspace(part).size() >= 2);
    CHECK(cnc_subspace_bruteforce(part).size() == cnc_subspace(part).size());
  }

  TEST_CASE("popescu colligation is co-isometric with the right symbol") {
    Rng rng(24);
    const RowContraction t = random_cnc_row_contraction(rng, 3, 2);
    const Colligation w = popescu_colligation(t);
    CHECK(is_coisometric(w).ok);
    CHECK(unobservable_subspace(w).empty());
    CHECK(max_coeff_deviation(transfer_symbol(w, 5), char_symbol(t, 5)) < 1e-12);
  }

  TEST_CASE("co-isometric rows have no defect") {
    Rng rng(25);
    const ComplexMatrix v = random_unitary(rng, 4).topRows(2);
    const RowContraction t({v.leftCols(2), v.rightCols(2)});
    CHECK(defects(t).basis_star.size() == 0);
    CHECK(char_symbol(t, 2).out_dim() == 0);
  }
}
