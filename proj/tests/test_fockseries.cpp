#include <doctest.h>

#include "charfock/error.hpp"
#include "charfock/fockseries.hpp"
#include "charfock/worked.hpp"
#include "helpers.hpp"

using namespace charfock;
using charfock::test::gap;

TEST_SUITE("fockseries") {
  TEST_CASE("graded lexicographic word order") {
    const std::vector<Word> words = enumerate_words(2, 3);
    REQUIRE(static_cast<Index>(words.size()) == word_count(2, 3));
    CHECK(words.size() == 15);
    CHECK(words[0].empty());
    CHECK(words[1] == Word({1}));
    CHECK(words[2] == Word({2}));
    CHECK(words[3] == Word({1, 1}));
    CHECK(words[6] == Word({2, 2}));
    for (size_t k = 0; k < words.size(); ++k) CHECK(word_index(words[k], 2) == static_cast<Index>(k));
    CHECK(Word({2, 1}).to_string() == "(2,1)");
    CHECK(Word().to_string() == "()");
  }

  TEST_CASE("children sit at 1 + d k + letter - 1") {
    const std::vector<Word> words = enumerate_words(3, 3);
    for (Index k = 0; k < word_count(3, 2); ++k) {
      for (int letter = 1; letter <= 3; ++letter) {
        CHECK(word_index(words[static_cast<size_t>(k)].append(letter), 3) == 1 + 3 * k + letter - 1);
      }
    }
  }

  TEST_CASE("series size guard") {
    CHECK_THROWS_AS(NCSeries(4, 1, 1, 12), Error);
    const NCSeries ok(1, 2, 3, 5);
    CHECK(ok.size() == 6);
    CHECK(ok.coeff(3).rows() == 3);
    CHECK(ok.coeff(3).cols() == 2);
  }

  TEST_CASE("scalar evaluation and tail bound") {
    const NCSeries b = blaschke_series(0.4, 60);
    const Complex z(0.2, -0.3);
    const Complex exact = (z - 0.4) / (1.0 - 0.4 * z);
    CHECK(std::abs(series_eval_scalar(b, z)(0, 0) - exact) < 1e-14);
    CHECK(series_tail_bound(3, 0.5) == doctest::Approx(0.125));
    CHECK_THROWS_AS(series_eval_scalar(NCSeries(2, 1, 1, 2), 0.1), Error);
  }

  TEST_CASE("multi-analytic matrix commutes with left creation") {
    Rng rng(4);
    NCSeries s(2, 2, 1, 3);
    for (Index k = 0; k < s.size(); ++k) s.set_coeff(k, random_gaussian(rng, 1, 2));
    const auto fock = build_fock(2, 3);
    const ComplexMatrix m = multianalytic_matrix(s, *fock);
    for (int i = 0; i < 2; ++i) {
      const ComplexMatrix l_out = ComplexMatrix(kron(fock->creation_left[static_cast<size_t>(i)], ComplexMatrix::Identity(1, 1)));
      const ComplexMatrix l_in = ComplexMatrix(kron(fock->creation_left[static_cast<size_t>(i)], ComplexMatrix::Identity(2, 2)));
      // Exact on vectors whose image stays inside the truncation.
      const Index low = word_count(2, 1);
      const ComplexMatrix lhs = (m * l_in).leftCols(2 * low);
      const ComplexMatrix rhs = (l_out * m).leftCols(2 * low);
      CHECK(gap(lhs.topRows(word_count(2, 2)), rhs.topRows(word_count(2, 2))) < 1e-14);
    }
    CHECK(max_coeff_deviation(series_from_fock_operator(m, 2, 2, 1, 3), s) < 1e-15);
  }

  TEST_CASE("series algebra") {
    Rng rng(6);
    NCSeries s(1, 2, 2, 2);
    for (Index k = 0; k < s.size(); ++k) s.set_coeff(k, random_gaussian(rng, 2, 2));
    const ComplexMatrix g = random_gaussian(rng, 3, 2);
    const NCSeries left = series_apply_output(g, s);
    CHECK(gap(left.coeff(1), g * s.coeff(1)) == 0.0);
    const NCSeries both = series_hconcat(s, s);
    CHECK(both.in_dim() == 4);
    CHECK(s.truncated(1).size() == 2);
  }

  TEST_CASE("power iteration norm") {
    Rng rng(2);
    const ComplexMatrix m = random_gaussian(rng, 6, 4);
    CHECK(power_norm(m) == doctest::Approx(spectral_norm(m)).epsilon(1e-10));
  }
}
