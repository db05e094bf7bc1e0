#include "tfl/basis.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <cmath>
#include <stdexcept>

namespace tfl {

namespace {
const double kInvSqrt2 = 0.70710678118654752440084436210485;

double pow2_half(int n) { return std::exp2(0.5 * n); }

}  // namespace

BasisSpec::BasisSpec(int r_, int n_) : r(r_), n(n_) {
  if (r != 1 && r != 2) throw std::invalid_argument("BasisSpec: r must be 1 or 2");
  if (n < n0()) throw std::invalid_argument("BasisSpec: n below coarsest level n0");
}

double bspline(int r, double x) {
  if (r == 1) return (x >= 0.0 && x <= 1.0) ? 1.0 : 0.0;
  if (r == 2) {
    if (x <= 0.0 || x >= 2.0) return 0.0;
    return x <= 1.0 ? x : 2.0 - x;
  }
  throw std::invalid_argument("bspline: r must be 1 or 2");
}

double scaling_function(const BasisSpec& spec, int j, double x) {
  if (j < 0 || j > (1 << spec.n) - spec.r)
    throw std::out_of_range("scaling_function: index outside I_n");
  return pow2_half(spec.n) * bspline(spec.r, std::ldexp(x, spec.n) - j);
}

double wavelet(const BasisSpec& spec, int level, int j, double x) {
  if (level < spec.n0()) throw std::out_of_range("wavelet: level below n0");
  if (j < 1 || j > (1 << level)) throw std::out_of_range("wavelet: index outside J_l");
  const double scale = pow2_half(level);
  const double y = std::ldexp(x, level);
  const auto& ts = two_scale(spec.r);
  if (spec.r == 1) {
    // psi(x) = (M_1(2x) - M_1(2x-1))/2, translated by j-1.
    const double t = y - (j - 1);
    return scale * 0.5 * (bspline(1, 2.0 * t) - bspline(1, 2.0 * t - 1.0));
  }
  auto eval_mask = [&](const std::vector<double>& mask, double t) {
    double sum = 0.0;
    for (std::size_t k = 0; k < mask.size(); ++k)
      sum += mask[k] * bspline(2, 2.0 * t - static_cast<double>(k));
    return sum;
  };
  if (j == 1) return scale * eval_mask(ts.wavelet_boundary, y);
  if (j == (1 << level)) return scale * eval_mask(ts.wavelet_boundary, std::ldexp(1.0 - x, level));
  return scale * eval_mask(ts.wavelet_interior, y - (j - 2));
}

const TwoScaleCoefficients& two_scale(int r) {
  static const TwoScaleCoefficients haar{{1.0, 1.0}, {0.5, -0.5}, {}};
  static const TwoScaleCoefficients hat{
      {0.5, 1.0, 0.5},
      {1.0 / 24.0, -0.25, 5.0 / 12.0, -0.25, 1.0 / 24.0},
      {3.0 / 8.0, -0.25, 1.0 / 24.0}};
  if (r == 1) return haar;
  if (r == 2) return hat;
  throw std::invalid_argument("two_scale: r must be 1 or 2");
}

namespace {

// Column support of the level-l synthesis matrix [M_{l,0} | M_{l,1}]:
// scaling column j hits rows 2j .. 2j+r, wavelet column j (1-based) hits
// rows 2j-2 .. 2j for the interior masks and the first/last three rows for
// the r=2 boundary masks.  All entries carry the 2^{-1/2} renormalization.
template <typename Emit>
void for_each_scaling_entry(int r, int l, int j, Emit&& emit) {
  const auto& mask = two_scale(r).scaling_mask;
  for (std::size_t k = 0; k < mask.size(); ++k)
    emit(2 * j + static_cast<int>(k), kInvSqrt2 * mask[k]);
  (void)l;
}

template <typename Emit>
void for_each_wavelet_entry(int r, int l, int j, Emit&& emit) {
  const auto& ts = two_scale(r);
  if (r == 1) {
    emit(2 * j - 2, kInvSqrt2 * ts.wavelet_interior[0]);
    emit(2 * j - 1, kInvSqrt2 * ts.wavelet_interior[1]);
    return;
  }
  const int top = 1 << l;
  if (j == 1) {
    for (std::size_t k = 0; k < ts.wavelet_boundary.size(); ++k)
      emit(static_cast<int>(k), kInvSqrt2 * ts.wavelet_boundary[k]);
  } else if (j == top) {
    const int rows = 2 * top - 2;  // last row index of level l+1
    for (std::size_t k = 0; k < ts.wavelet_boundary.size(); ++k)
      emit(rows - static_cast<int>(k), kInvSqrt2 * ts.wavelet_boundary[k]);
  } else {
    for (std::size_t k = 0; k < ts.wavelet_interior.size(); ++k)
      emit(2 * j - 4 + static_cast<int>(k), kInvSqrt2 * ts.wavelet_interior[k]);
  }
}

}  // namespace

std::vector<double> fwt_apply(const BasisSpec& spec, const std::vector<double>& multiscale) {
  if (static_cast<int>(multiscale.size()) != spec.dim())
    throw std::invalid_argument("fwt_apply: length mismatch");
  const int n0 = spec.n0();
  std::vector<double> v(multiscale.begin(), multiscale.begin() + spec.dim(n0));
  std::size_t offset = static_cast<std::size_t>(spec.dim(n0));
  for (int l = n0; l < spec.n; ++l) {
    std::vector<double> next(static_cast<std::size_t>(spec.dim(l + 1)), 0.0);
    for (int j = 0; j < spec.dim(l); ++j)
      for_each_scaling_entry(spec.r, l, j, [&](int row, double c) { next[static_cast<std::size_t>(row)] += c * v[static_cast<std::size_t>(j)]; });
    for (int j = 1; j <= spec.wavelet_count(l); ++j) {
      const double cj = multiscale[offset + static_cast<std::size_t>(j - 1)];
      for_each_wavelet_entry(spec.r, l, j, [&](int row, double c) { next[static_cast<std::size_t>(row)] += c * cj; });
    }
    offset += static_cast<std::size_t>(spec.wavelet_count(l));
    v = std::move(next);
  }
  return v;
}

std::vector<double> fwt_transpose_apply(const BasisSpec& spec, const std::vector<double>& single_scale) {
  if (static_cast<int>(single_scale.size()) != spec.dim())
    throw std::invalid_argument("fwt_transpose_apply: length mismatch");
  const int n0 = spec.n0();
  std::vector<double> out(single_scale.size());
  std::vector<double> v = single_scale;
  std::size_t offset = out.size();
  for (int l = spec.n - 1; l >= n0; --l) {
    offset -= static_cast<std::size_t>(spec.wavelet_count(l));
    for (int j = 1; j <= spec.wavelet_count(l); ++j) {
      double sum = 0.0;
      for_each_wavelet_entry(spec.r, l, j, [&](int row, double c) { sum += c * v[static_cast<std::size_t>(row)]; });
      out[offset + static_cast<std::size_t>(j - 1)] = sum;
    }
    std::vector<double> coarse(static_cast<std::size_t>(spec.dim(l)), 0.0);
    for (int j = 0; j < spec.dim(l); ++j) {
      double sum = 0.0;
      for_each_scaling_entry(spec.r, l, j, [&](int row, double c) { sum += c * v[static_cast<std::size_t>(row)]; });
      coarse[static_cast<std::size_t>(j)] = sum;
    }
    v = std::move(coarse);
  }
  for (int j = 0; j < spec.dim(n0); ++j) out[static_cast<std::size_t>(j)] = v[static_cast<std::size_t>(j)];
  return out;
}

std::vector<double> fwt_solve(const BasisSpec& spec, const std::vector<double>& single_scale) {
  if (static_cast<int>(single_scale.size()) != spec.dim())
    throw std::invalid_argument("fwt_solve: length mismatch");
  const int n0 = spec.n0();
  std::vector<double> out(single_scale.size());
  std::vector<double> v = single_scale;
  std::size_t offset = out.size();
  for (int l = spec.n - 1; l >= n0; --l) {
    const int nw = spec.wavelet_count(l);
    offset -= static_cast<std::size_t>(nw);
    std::vector<double> coarse(static_cast<std::size_t>(spec.dim(l)));
    if (spec.r == 1) {
      // v[2j]   = (a_j + c_{j+1}/2)/sqrt(2)
      // v[2j+1] = (a_j - c_{j+1}/2)/sqrt(2)
      for (int j = 0; j < spec.dim(l); ++j) {
        const double ve = v[static_cast<std::size_t>(2 * j)], vo = v[static_cast<std::size_t>(2 * j + 1)];
        coarse[static_cast<std::size_t>(j)] = (ve + vo) * kInvSqrt2;
        out[offset + static_cast<std::size_t>(j)] = (ve - vo) / kInvSqrt2;
      }
    } else {
      const int m = spec.dim(l + 1);
      Eigen::SparseMatrix<double> mat(m, m);
      std::vector<Eigen::Triplet<double>> trips;
      trips.reserve(static_cast<std::size_t>(5 * m));
      for (int j = 0; j < spec.dim(l); ++j)
        for_each_scaling_entry(spec.r, l, j, [&](int row, double c) { trips.emplace_back(row, j, c); });
      for (int j = 1; j <= nw; ++j)
        for_each_wavelet_entry(spec.r, l, j, [&](int row, double c) {
          trips.emplace_back(row, spec.dim(l) + j - 1, c);
        });
      mat.setFromTriplets(trips.begin(), trips.end());
      Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
      lu.compute(mat);
      if (lu.info() != Eigen::Success) throw std::runtime_error("fwt_solve: singular level system");
      Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(v.data(), m);
      Eigen::VectorXd sol = lu.solve(rhs);
      for (int j = 0; j < spec.dim(l); ++j) coarse[static_cast<std::size_t>(j)] = sol(j);
      for (int j = 0; j < nw; ++j) out[offset + static_cast<std::size_t>(j)] = sol(spec.dim(l) + j);
    }
    v = std::move(coarse);
  }
  for (int j = 0; j < spec.dim(n0); ++j) out[static_cast<std::size_t>(j)] = v[static_cast<std::size_t>(j)];
  return out;
}

}  // namespace tfl
