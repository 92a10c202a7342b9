#pragma once

#include <doctest.h>

#include "charfock/numlin.hpp"
#include "charfock/random.hpp"

namespace charfock::test {

inline ComplexMatrix random_hermitian(Rng& rng, Index n) {
  const ComplexMatrix g = random_gaussian(rng, n, n);
  return 0.5 * (g + g.adjoint());
}

inline double gap(const ComplexMatrix& a, const ComplexMatrix& b) {
  REQUIRE(a.rows() == b.rows());
  REQUIRE(a.cols() == b.cols());
  return a.size() ? (a - b).cwiseAbs().maxCoeff() : 0.0;
}

}  // namespace charfock::test
