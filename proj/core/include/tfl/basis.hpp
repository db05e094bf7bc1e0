#pragma once

#include <vector>

namespace tfl {

/// Discretization of (0,1) by B-spline scaling functions of order r at
/// dyadic level n.  The coarsest admissible level n0 is the least integer
/// with 2^n0 >= 2r, so n0 = 1 for r = 1 and n0 = 2 for r = 2.
struct BasisSpec {
  int r;
  int n;

  BasisSpec(int r_, int n_);

  int n0() const { return r == 1 ? 1 : 2; }
  /// Number of scaling functions at level l: 2^l - r + 1.
  int dim(int level) const { return (1 << level) - r + 1; }
  int dim() const { return dim(n); }
  /// Number of wavelets at level l: 2^l.
  int wavelet_count(int level) const { return 1 << level; }
};

/// Cardinal B-spline M_r: M_1 = indicator of [0,1], M_2 = hat on [0,2].
double bspline(int r, double x);

/// phi^r_{n,j}(x) = 2^{n/2} M_r(2^n x - j) for j in {0, ..., 2^n - r}.
double scaling_function(const BasisSpec& spec, int j, double x);

/// psi^r_{l,j}(x) for j in {1, ..., 2^l}; l >= n0.  For r = 2 the first and
/// last wavelets are the boundary-adapted ones, the rest translates of the
/// interior wavelet.
double wavelet(const BasisSpec& spec, int level, int j, double x);

/// Two-scale masks: coefficients of the refinement relation of M_r and of
/// the wavelets against the half-scale splines M_r(2x - k).  Exact rationals;
/// the 2^{-1/2} normalization of phi_{l,k} vs phi_{l+1,k} is applied by the
/// transforms, not stored here.
struct TwoScaleCoefficients {
  std::vector<double> scaling_mask;            // M_r(x) = sum_k mask_k M_r(2x-k)
  std::vector<double> wavelet_interior;        // psi against M_r(2x-k)
  std::vector<double> wavelet_boundary;        // r=2 left-edge psi_1; empty for r=1
};

const TwoScaleCoefficients& two_scale(int r);

/// Multiscale coefficient layout: coarse scaling block at level n0
/// (ascending j), then one wavelet block per level l = n0, ..., n-1
/// (ascending j).  Total length dim(n).
///
/// fwt_apply computes M^r c (single-scale coefficients at level n) by the
/// per-level cascade in O(N); the matrix M^r is never assembled.
std::vector<double> fwt_apply(const BasisSpec& spec, const std::vector<double>& multiscale);

/// (M^r)^T e via the transposed cascade, O(N).
std::vector<double> fwt_transpose_apply(const BasisSpec& spec, const std::vector<double>& single_scale);

/// (M^r)^{-1} e: level-by-level inversion of the two-scale relations.
/// Direct O(N) formulas for r = 1; banded per-level solves for r = 2.
std::vector<double> fwt_solve(const BasisSpec& spec, const std::vector<double>& single_scale);

}  // namespace tfl
