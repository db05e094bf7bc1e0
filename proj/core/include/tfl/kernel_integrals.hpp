#pragma once

#include "tfl/piecewise.hpp"
#include "tfl/symbol.hpp"

namespace tfl {

/// Regularized moment int_0^h e^{-lambda y} y^{k-beta} dy for integer k >= 0
/// (k >= 1 when beta >= 1).  lambda = 0 gives the exact power integral
/// h^{k-beta+1}/(k-beta+1).  For lambda > 0 the integral is split by
/// repeated integration by parts into an exact boundary-term series plus a
/// final smooth integral evaluated by Gauss-Jacobi quadrature with weight
/// (1+eta)^{K-beta}.
double regularized_moment(double lambda, double beta, double h, int k);

/// Tail integral int_a^inf e^{-lambda y} y^{-1-beta} dy, a > 0.
/// lambda = 0: a^{-beta}/beta exactly.  lambda > 0, beta != 1: two-step
/// integration by parts reduces it to elementary terms plus a regularized
/// moment.  beta = 1: e^{-lambda a}/a - lambda E1(lambda a).
double tail_integral(double lambda, double beta, double a);

/// int_a^b poly(y) zeta(y) dy with zeta(y) = e^{-lambda y} y^{-1-beta}.
/// a = 0 requires poly(0) = 0 and routes through regularized moments;
/// a > 0 uses geometrically graded Gauss-Legendre panels.
double zeta_poly_integral(const OperatorParams& params, const Poly& poly, double a, double b);

/// Pointwise application of the tempered fractional Laplacian with the sign
/// of the right-hand side:  returns
///   f(x) = [-(Delta+lambda)^{beta/2} u](x)
///        = c_beta int_0^inf (2u(x) - u(x-y) - u(x+y)) zeta(y) dy.
/// The piece containing x must be polynomial, or smooth with its even
/// derivatives d2/d4/d6 supplied.  x must not sit on a breakpoint.
double apply_pointwise(const OperatorParams& params, const PiecewiseFunction& u, double x);

}  // namespace tfl
