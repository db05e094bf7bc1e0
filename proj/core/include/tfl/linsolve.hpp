#pragma once

#include "tfl/assembly.hpp"

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

namespace tfl {

/// Toeplitz matvec by circulant embedding + FFT, O(N log N).
/// Deterministic: same stiffness and input give bit-identical output.
std::vector<double> toeplitz_matvec(const ToeplitzStiffness& a, const std::vector<double>& x);

/// Outcome of an iterative or direct solve.
struct SolveReport {
  int iterations = 0;
  std::vector<double> residual_history;  // ||r_k||, k = 0..iterations
  double wall_time = 0.0;                // seconds
  std::string method;                    // "cg", "pcg", "dense"
};

using LinOp = std::function<std::vector<double>(const std::vector<double>&)>;

/// Conjugate gradients on an SPD operator, zero initial guess, stopping on
/// ||r_k|| / ||r_0|| <= tol.  Throws on non-convergence within max_iter
/// (default 20N).
std::pair<std::vector<double>, SolveReport> cg_solve(const LinOp& op,
                                                     const std::vector<double>& b,
                                                     double tol = 1e-9, int max_iter = -1);

/// Diagonal renormalization D of the multiscale basis: coarse block
/// a = B(phi_{n0,1}, phi_{n0,1})^{-1/2}, then per level the boundary and
/// interior values b_{l,1}, b_{l,2} = B(psi_{l,.}, psi_{l,.})^{-1/2} in the
/// layout (b1, b2, ..., b2, b1).
struct DiagonalScaling {
  BasisSpec spec;
  std::vector<double> entries;
};

/// Builds D from small leading blocks of the first rows at levels n0+1..n:
/// each B(psi,psi) is the two-scale mask sandwich m^T T m against the
/// level-(l+1) Toeplitz block.
DiagonalScaling build_diagonal(const ToeplitzStiffness& a);

/// CG on the two-sided preconditioned system
///   (D M^T A M D) y = D M^T b,   d_n = M D y,
/// every application using the O(N) wavelet cascades and the FFT matvec.
/// Returns the single-scale solution d_n, directly comparable to cg_solve.
std::pair<std::vector<double>, SolveReport> pcg_solve(const ToeplitzStiffness& a,
                                                      const std::vector<double>& b,
                                                      double tol = 1e-9, int max_iter = -1);

/// Materialized dense solve (LLT); validation/timing baseline.  Guarded to
/// N <= 8192.
std::pair<std::vector<double>, SolveReport> dense_solve(const ToeplitzStiffness& a,
                                                        const std::vector<double>& b);

Eigen::MatrixXd dense_matrix(const ToeplitzStiffness& a);

/// The preconditioned operator D M^T A M D as a LinOp.
LinOp preconditioned_operator(const ToeplitzStiffness& a, const DiagonalScaling& d);
LinOp plain_operator(const ToeplitzStiffness& a);

/// Extremal-eigenvalue estimate by Lanczos with full reorthogonalization.
struct CondEstimate {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double cond() const { return lambda_max / lambda_min; }
};
CondEstimate lanczos_condition(const LinOp& op, int n, int iters = 200, unsigned seed = 7);

/// All eigenvalues of the (materialized) operator, ascending.  Guarded to
/// N <= 512 as only the Figure-style dumps need it.
std::vector<double> dense_spectrum(const LinOp& op, int n);

}  // namespace tfl
