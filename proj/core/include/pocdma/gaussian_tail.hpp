#pragma once

// Numerically stable upper-tail Gaussian kernels. The fixed-point equations
// divide the normal density by the tail probability Q(t); both factors leave
// the double range long before their ratio does, so everything here is routed
// through the scaled complementary error function instead of naive division.

namespace pocdma {

// Scaled complementary error function exp(x^2) * erfc(x).
// Accurate to a few ulp for x >= 0; for x < -26.6 the true value exceeds the
// double range and +inf is returned.
double erfcx(double x);

// Standard normal density.
double gaussian_pdf(double t);

// Upper tail Q(t) = P(Z > t). Underflows to 0 only where the true value is
// below the smallest double (t > ~38.6).
double gaussian_q(double t);

// log(2 Q(t)), stable in both tails: -> log 2 as t -> -inf, -> -t^2/2 - ... as
// t -> +inf without ever forming the underflowing product.
double log_2q(double t);

// Q'(t)/Q(t) = -pdf(t)/Q(t). Strictly negative for all finite t; behaves like
// -t for large positive t with no overflow (tested well beyond t = 40).
// Throws std::domain_error on non-finite input.
double hazard_ratio(double t);

// d/dt of hazard_ratio.
double hazard_ratio_deriv(double t);

}  // namespace pocdma
