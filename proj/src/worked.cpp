#include "charfock/worked.hpp"

#include <cmath>

namespace charfock {

namespace {

Lifting scalar_lifting(Complex base, Complex ext, Complex coupling) {
  return Lifting(RowContraction::scalar({base}), RowContraction::scalar({ext}),
                 {ComplexMatrix::Constant(1, 1, coupling)});
}

}  // namespace

Lifting blaschke_lifting(Complex alpha) {
  const double b = 0.5 * std::sqrt(3.0) * std::sqrt(1.0 - std::norm(alpha));
  return scalar_lifting(0.5, alpha, b);
}

NCSeries blaschke_series(Complex alpha, int degree) {
  NCSeries s(1, 1, 1, degree);
  s.set_coeff(0, ComplexMatrix::Constant(1, 1, -alpha));
  Complex power = 1.0;
  for (int n = 1; n <= degree; ++n) {
    s.set_coeff(n, ComplexMatrix::Constant(1, 1, (1.0 - std::norm(alpha)) * power));
    power *= std::conj(alpha);
  }
  return s;
}

Lifting nilpotent_extension_lifting() { return scalar_lifting(0.5, 0.0, 0.5); }

Lifting half_extension_lifting() { return scalar_lifting(0.5, 0.5, 0.5); }

}  // namespace charfock
