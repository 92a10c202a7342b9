#pragma once

// Small liftings of C = 1/2 on C^1 with closed-form answers.

#include "charfock/fockseries.hpp"
#include "charfock/lifting.hpp"

namespace charfock {

/// A = alpha, B = (sqrt(3)/2)(1 - |alpha|^2)^{1/2}; the link is 1 and the
/// symbol is the Blaschke factor at alpha.
Lifting blaschke_lifting(Complex alpha);

/// Taylor coefficients of (z - alpha)/(1 - conj(alpha) z) as a 1x1 symbol.
NCSeries blaschke_series(Complex alpha, int degree);

/// E = (1/2)[[1, 0], [1, 0]]: A = 0, B = 1/2.
Lifting nilpotent_extension_lifting();

/// E = (1/2)[[1, 0], [1, 1]]: A = 1/2, B = 1/2.
Lifting half_extension_lifting();

}  // namespace charfock
