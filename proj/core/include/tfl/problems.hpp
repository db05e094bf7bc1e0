#pragma once

#include "tfl/assembly.hpp"
#include "tfl/linsolve.hpp"
#include "tfl/piecewise.hpp"

#include <json.hpp>

#include <complex>
#include <functional>
#include <optional>
#include <string>

namespace tfl {

/// Declarative description of one experiment on Omega = (0,1).
///
/// The right-hand side is exactly one of: a manufactured exact solution p
/// (load assembled as Galerkin data B(p, phi_j)), a constant, or an explicit
/// callable f.  A nonzero exterior condition is carried as the lifting eta
/// (equal to g outside Omega); zero exterior means no lifting.
struct ProblemSpec {
  OperatorParams params;
  std::string id = "custom";

  std::optional<PiecewiseFunction> manufactured;
  std::function<std::complex<double>(double)> manufactured_fourier;  // optional fast path
  double fourier_xi_max = 0.0;
  std::optional<double> constant_rhs;
  std::function<double(double)> explicit_rhs;

  std::optional<PiecewiseFunction> lifting;  // eta; g outside Omega
  std::string lifting_id = "none";

  std::function<double(double)> exact;  // exact p on R, when known

  void validate() const;
};

/// Galerkin solution p_n = sum d_j phi_{n,j} + eta.
struct DiscreteSolution {
  BasisSpec spec;
  std::vector<double> coeffs;
  std::optional<PiecewiseFunction> lifting;

  /// Evaluates the spline part only.
  double spline_part(double x) const;
  /// Full solution; identically eta(x) outside [0,1].
  double operator()(double x) const;
};

/// Right-hand side of Example 1 (exact solution x^2(1-x) on Omega):
/// closed forms for lambda = 0, pointwise kernel application otherwise.
double example1_rhs(const OperatorParams& params, double x);

/// Exact solution of Example 2 (f = 1, lambda = 0):
/// (x - x^2)^{beta/2} / Gamma(1+beta) on [0,1], zero outside.
double example2_exact(double beta, double x);

/// Linear interpolant lifting S1(x) = g0 (1-x) + g1 x.
double lifting_s1(double g0, double g1, double x);
/// Cubic Hermite lifting matching values and one-sided derivatives.
double lifting_s3(double g0, double dg0, double g1, double dg1, double x);
Poly lifting_s1_poly(double g0, double g1);
Poly lifting_s3_poly(double g0, double dg0, double g1, double dg1);

/// Registered experiments: "example1", "example2", "gauss_exterior",
/// "tent_exterior".  The lifting choice applies to tent_exterior
/// ("s2" zero-on-Omega or "s3" cubic) and gauss_exterior ("s1").
ProblemSpec make_problem(const std::string& id, double beta, double lambda,
                         const std::string& lifting_id = "");

void to_json(nlohmann::json& j, const ProblemSpec& p);
ProblemSpec problem_from_json(const nlohmann::json& j);

/// Assembles and solves the Galerkin system for the problem; method is one
/// of "cg", "pcg", "dense".  Rejects r = 1 with beta >= 1.
std::pair<DiscreteSolution, SolveReport> solve_problem(const ProblemSpec& prob,
                                                       const BasisSpec& spec,
                                                       const std::string& method = "pcg",
                                                       double tol = 1e-9);

}  // namespace tfl
