#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace tfl {

/// Parameters of the tempered fractional Laplacian -(Delta + lambda)^{beta/2}
/// on the line: order beta in (0,2) and tempering rate lambda >= 0.
struct OperatorParams {
  double beta;
  double lambda;

  OperatorParams(double beta_, double lambda_);
};

/// Kernel normalization c_beta of the singular integral
///   (Delta+lambda)^{beta/2} p = -c_beta P.V. int (p(x)-p(y)) e^{-lambda|x-y|}
///                               |x-y|^{-1-beta} dy.
/// Branches: beta Gamma((1+beta)/2) / (2^{1-beta} sqrt(pi) Gamma(1-beta/2))
/// when lambda = 0 or beta = 1, and Gamma(1/2)/(2 sqrt(pi) |Gamma(-beta)|)
/// otherwise.
double kernel_constant(const OperatorParams& params);

/// Equivalent closed form Gamma(1+beta) sin(beta pi/2) / pi of the
/// lambda = 0 branch; kept as an independent cross-check.
double kernel_constant_sine_form(double beta);

/// Fourier multiplier G(lambda, xi, beta) >= 0 with
///   F[(Delta+lambda)^{beta/2} w](xi) = -G(lambda, xi, beta) F[w](xi).
/// lambda = 0 degenerates to |xi|^beta.  Even in xi.
double fourier_symbol(const OperatorParams& params, double xi);

/// Real samples of a function on a uniform grid over [x_lo, x_hi].
struct SampledFunction {
  double x_lo = 0.0;
  double x_hi = 1.0;
  std::vector<double> values;

  double dx() const { return (x_hi - x_lo) / static_cast<double>(values.size() - 1); }
  double x(std::size_t i) const { return x_lo + dx() * static_cast<double>(i); }
};

/// Non-fatal diagnostics collected by grid-based operations.
struct Diagnostics {
  std::vector<std::string> warnings;
};

/// Applies -(Delta+lambda)^{beta/2} to the sampled function by discrete
/// Fourier transform: pad by pad_factor, transform, multiply by the symbol,
/// transform back.  Requires w to be compactly supported well inside its
/// grid; a support violation (boundary samples above 1e-12 of max |w|) is
/// reported through diag as a warning.
SampledFunction apply_operator_fourier(const OperatorParams& params, const SampledFunction& w,
                                       int pad_factor = 4, Diagnostics* diag = nullptr);

/// Exact F[a + bx + cx^2 + dx^3 restricted to [0,1]](xi)
///   = int_0^1 (a+bx+cx^2+dx^3) e^{-i x xi} dx,
/// via a stable power series for |xi| < 1e-3 and the closed form otherwise.
std::complex<double> fourier_of_cubic(const std::array<double, 4>& coeffs, double xi);

}  // namespace tfl
