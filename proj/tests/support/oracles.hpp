#pragma once

#include "shiftlab/measure.hpp"

namespace shiftlab::testing {

// Integral of t^r against mu by tanh-sinh quadrature on each density piece plus
// the atom sum. Independent of the closed-form antiderivatives in the library.
double quad_integral(const Measure1D& mu, double r);

inline double quad_moment(const Measure1D& mu, int k) { return quad_integral(mu, k); }

// |x - y| <= tol * max(1, |x|, |y|)
bool close(double x, double y, double tol);

}  // namespace shiftlab::testing
