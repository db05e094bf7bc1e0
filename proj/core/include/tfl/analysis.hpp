#pragma once

#include "tfl/problems.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tfl {

struct ErrorPair {
  double l2 = 0.0;
  double h_half_beta = 0.0;
};

/// Weight constant of the H^{beta/2}(R) norm in Fourier form,
///   ||e||^2 = (1/2pi) int (1 + C_beta |xi|^beta) |F[e]|^2 dxi,
/// with C_beta = 2 pi / (Gamma(1+beta) sin(beta pi/2)) so that the second
/// term is exactly the Slobodeckii seminorm.
double h_norm_weight(double beta);

/// L2(R) and H^{beta/2}(R) errors of a discrete solution against an exact
/// evaluator.  The difference is sampled on a uniform grid over [-1,2]
/// aligned with the dyadic mesh (oversample points per cell) and transformed
/// with zero padding factor 8.
ErrorPair error_norms(const std::function<double(double)>& exact, const DiscreteSolution& approx,
                      double beta, int oversample = 64, Diagnostics* diag = nullptr);

/// Successive-level error surrogate ||p_{n+1} - p_n||; the finer solution
/// must be one level above the coarser one.
ErrorPair successive_errors(const DiscreteSolution& coarse, const DiscreteSolution& fine,
                            double beta);

struct ConvergenceRow {
  int n = 0;
  double err_h = 0.0;
  std::optional<double> rate_h;
  double err_l2 = 0.0;
  std::optional<double> rate_l2;
  int iterations = 0;
  double solve_seconds = 0.0;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  int r = 0;
  double beta = 0.0;
  double lambda = 0.0;
  std::string problem;
  std::string lifting;
  std::string method;
  std::string error_mode;  // "exact" or "successive"

  void write_csv(std::ostream& os) const;
  nlohmann::json metadata() const;
};

/// Errors and rates over ascending levels; error mode picked by the
/// availability of an exact solution (successive solves one extra level).
ConvergenceReport convergence_sweep(const ProblemSpec& prob, int r,
                                    const std::vector<int>& n_range,
                                    const std::string& method = "pcg", double tol = 1e-9,
                                    int oversample = 64);

struct ConditionRow {
  int n = 0;
  double cond_plain = 0.0;
  std::optional<double> rate;  // log2 of successive cond ratio
  int iters_cg = 0;
  double cpu_cg = 0.0;
  double cond_pcg = 0.0;
  int iters_pcg = 0;
  double cpu_pcg = 0.0;
  std::optional<double> cpu_dense;
};

struct ConditionReport {
  std::vector<ConditionRow> rows;
  int r = 0;
  double beta = 0.0;
  double lambda = 0.0;
  std::string problem;
  double tol = 1e-9;

  void write_csv(std::ostream& os) const;
  nlohmann::json metadata() const;
  /// Least-squares slope of log2(cond_plain) against n.
  double fitted_cond_slope() const;
};

/// Condition numbers and iteration counts on the Example-1 system:
/// dense eigensolver when N <= 512, Lanczos with full reorthogonalization
/// otherwise.  Dense-solve timing included while N <= dense_limit.
ConditionReport condition_sweep(const OperatorParams& params, int r,
                                const std::vector<int>& n_range, double tol = 1e-9,
                                int dense_limit = 4096);

/// All eigenvalues (ascending) of the plain or preconditioned system,
/// n <= 9 dense guard.
std::vector<double> eigenvalue_dump(const OperatorParams& params, int r, int n,
                                    bool preconditioned);

}  // namespace tfl
