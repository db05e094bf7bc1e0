#pragma once

namespace tfl {

/// Exponential integral E1(x) = int_x^inf exp(-t)/t dt for x > 0.
/// Power series up to x = 6, continued fraction beyond.
double exp_integral_e1(double x);

/// Gamma(-beta) for beta in (0,2)\{1}, evaluated through the reflection
/// formula Gamma(-b) Gamma(1+b) = -pi/sin(pi b) to stay away from the poles.
double gamma_neg(double beta);

}  // namespace tfl
