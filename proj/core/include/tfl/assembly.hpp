#pragma once

#include "tfl/basis.hpp"
#include "tfl/piecewise.hpp"
#include "tfl/symbol.hpp"

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tfl {

/// Stiffness matrix B(Phi^r_n, Phi^r_n) of the translated scaling basis.
/// Symmetric Toeplitz: entry (i,j) = first_row[|i-j|].  The circulant
/// spectrum used by the FFT matvec is built lazily and shared by copies.
struct ToeplitzStiffness {
  BasisSpec spec;
  OperatorParams params;
  std::vector<double> first_row;

  ToeplitzStiffness(BasisSpec s, OperatorParams p, std::vector<double> row)
      : spec(s), params(p), first_row(std::move(row)) {}

  int size() const { return static_cast<int>(first_row.size()); }

  /// FFT of the circulant embedding (length = next power of two >= 2N).
  const std::vector<std::complex<double>>& circulant_spectrum() const;

 private:
  mutable std::shared_ptr<const std::vector<std::complex<double>>> spectrum_;
};

/// B(phi^r_{n,0}, phi^r_{n,j}) for j = 0..count-1 (count = dim by default)
/// by the exact/regularized time-domain formulas.  Entries for r=2, j>=2
/// are evaluated in the shifted variable t = y/h - j, which keeps the
/// cubic weights O(1) instead of O(j^3).
ToeplitzStiffness assemble_first_row(const OperatorParams& params, const BasisSpec& spec,
                                     int count = -1);

/// Independent Fourier-domain route to the same entry:
///   2^{r+1} int_0^inf G(lambda, u/h, beta) cos(j u) ((1-cos u)/u^2)^r du,
/// adaptive panels on [0, u_max] plus an analytic oscillatory tail.
double symbol_entry_oracle(const OperatorParams& params, const BasisSpec& spec, int j,
                           double u_max = 1000.0);

/// Load vector f_n = (f, Phi^r_n).
struct LoadVector {
  BasisSpec spec;
  std::vector<double> values;
};

/// Constant right-hand side: every entry c * 2^{-n/2}.
LoadVector load_constant(double c, const BasisSpec& spec);

/// Callable right-hand side via per-cell Gauss-Legendre with dyadic
/// refinement toward the domain endpoints (log/power singularities there).
LoadVector load_callable(const std::function<double(double)>& f, const BasisSpec& spec);

/// Galerkin data of a manufactured solution: entries B(u, phi^r_{n,j})
/// computed as (A[u], phi_j) with A[u] the pointwise kernel application.
LoadVector load_galerkin(const OperatorParams& params, const PiecewiseFunction& u,
                         const BasisSpec& spec);

/// Frequency-domain route of the same data through
///   B(u, phi_j) = (1/2pi) int G F[u] conj(F[phi_j]) dxi,
/// with F[phi_j] in closed form.  Accuracy is controlled by xi_max; kept as
/// the independent cross-check of load_galerkin.
LoadVector load_fourier(const OperatorParams& params,
                        const std::function<std::complex<double>(double)>& fourier_u,
                        const BasisSpec& spec, double xi_max);

/// Lifting load B(eta, phi^r_{n,j}) for generalized Dirichlet data.
LoadVector lifting_load(const OperatorParams& params, const PiecewiseFunction& eta,
                        const BasisSpec& spec);

/// F[M_r](xi) = ((1 - e^{-i xi})/(i xi))^r, stable near xi = 0.
std::complex<double> fourier_bspline(int r, double xi);

/// Binary first-row cache: raw little-endian doubles plus a JSON sidecar
/// carrying (r, n, beta, lambda).  The loader validates the sidecar and
/// returns nothing on any mismatch; the cache can only accelerate, never
/// change results.
void save_first_row(const std::string& dir, const ToeplitzStiffness& stiffness);
std::optional<ToeplitzStiffness> try_load_first_row(const std::string& dir,
                                                    const OperatorParams& params,
                                                    const BasisSpec& spec);

}  // namespace tfl
