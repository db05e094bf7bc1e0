#include "tfl/linsolve.hpp"

#include "tfl/fft.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>

namespace tfl {

namespace {

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

std::vector<double> toeplitz_matvec(const ToeplitzStiffness& a, const std::vector<double>& x) {
  const std::size_t n = a.first_row.size();
  if (x.size() != n) throw std::invalid_argument("toeplitz_matvec: length mismatch");
  const auto& spectrum = a.circulant_spectrum();
  const std::size_t len = spectrum.size();
  std::vector<std::complex<double>> buf(len, 0.0);
  for (std::size_t i = 0; i < n; ++i) buf[i] = x[i];
  fft_forward(buf);
  for (std::size_t i = 0; i < len; ++i) buf[i] *= spectrum[i];
  fft_inverse(buf);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = buf[i].real();
  return out;
}

std::pair<std::vector<double>, SolveReport> cg_solve(const LinOp& op,
                                                     const std::vector<double>& b, double tol,
                                                     int max_iter) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n = b.size();
  if (max_iter < 0) max_iter = 20 * static_cast<int>(n);
  SolveReport report;
  report.method = "cg";

  std::vector<double> x(n, 0.0);
  std::vector<double> r = b;
  const double r0 = norm2(r);
  report.residual_history.push_back(r0);
  if (r0 == 0.0) {
    report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {x, report};
  }
  std::vector<double> p = r;
  double rr = r0 * r0;
  for (int k = 1; k <= max_iter; ++k) {
    const std::vector<double> ap = op(p);
    const double alpha = rr / dot(p, ap);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    const double rr_new = dot(r, r);
    const double rn = std::sqrt(rr_new);
    report.residual_history.push_back(rn);
    report.iterations = k;
    if (rn <= tol * r0) {
      report.wall_time =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      return {x, report};
    }
    const double beta = rr_new / rr;
    rr = rr_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
  }
  throw std::runtime_error("cg_solve: no convergence within max_iter");
}

namespace {

// B(w, w) of a function given by its two-scale mask against level-(l+1)
// scaling functions: m^T T m with T the small Toeplitz block of the
// level-(l+1) first row.
double mask_energy(const std::vector<double>& mask, const std::vector<double>& first_row) {
  double sum = 0.0;
  for (std::size_t i = 0; i < mask.size(); ++i)
    for (std::size_t k = 0; k < mask.size(); ++k) {
      const std::size_t lag = i > k ? i - k : k - i;
      sum += mask[i] * mask[k] * first_row[lag];
    }
  return sum;
}

}  // namespace

DiagonalScaling build_diagonal(const ToeplitzStiffness& a) {
  const BasisSpec& spec = a.spec;
  const int n0 = spec.n0();
  const double inv_sqrt2 = 0.70710678118654752440084436210485;
  std::vector<double> entries;
  entries.reserve(static_cast<std::size_t>(spec.dim()));

  // Coarse block: B(phi_{n0,j}, phi_{n0,j}) is the j-independent diagonal
  // entry of the level-n0 stiffness.
  const auto coarse = assemble_first_row(a.params, BasisSpec(spec.r, n0), 1);
  const double a_n0 = 1.0 / std::sqrt(coarse.first_row[0]);
  for (int j = 0; j < spec.dim(n0); ++j) entries.push_back(a_n0);

  const auto& ts = two_scale(spec.r);
  for (int l = n0; l < spec.n; ++l) {
    // Level-(l+1) first row; only the leading mask-width entries are needed.
    const int need = static_cast<int>(std::max(ts.wavelet_interior.size(),
                                               ts.wavelet_boundary.size()));
    std::vector<double> row;
    if (l + 1 == spec.n) {
      row.assign(a.first_row.begin(),
                 a.first_row.begin() + std::min<std::ptrdiff_t>(need, a.size()));
    } else {
      row = assemble_first_row(a.params, BasisSpec(spec.r, l + 1), need).first_row;
    }
    std::vector<double> interior = ts.wavelet_interior;
    for (auto& c : interior) c *= inv_sqrt2;
    const double b2 = 1.0 / std::sqrt(mask_energy(interior, row));
    double b1 = b2;
    if (spec.r == 2) {
      std::vector<double> boundary = ts.wavelet_boundary;
      for (auto& c : boundary) c *= inv_sqrt2;
      b1 = 1.0 / std::sqrt(mask_energy(boundary, row));
    }
    const int count = spec.wavelet_count(l);
    for (int j = 1; j <= count; ++j)
      entries.push_back((j == 1 || j == count) ? b1 : b2);
  }
  return DiagonalScaling{spec, std::move(entries)};
}

LinOp plain_operator(const ToeplitzStiffness& a) {
  return [a](const std::vector<double>& x) { return toeplitz_matvec(a, x); };
}

LinOp preconditioned_operator(const ToeplitzStiffness& a, const DiagonalScaling& d) {
  const BasisSpec spec = a.spec;
  const std::vector<double> diag = d.entries;
  return [a, spec, diag](const std::vector<double>& y) {
    std::vector<double> v(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) v[i] = diag[i] * y[i];
    v = fwt_apply(spec, v);
    v = toeplitz_matvec(a, v);
    v = fwt_transpose_apply(spec, v);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] *= diag[i];
    return v;
  };
}

std::pair<std::vector<double>, SolveReport> pcg_solve(const ToeplitzStiffness& a,
                                                      const std::vector<double>& b, double tol,
                                                      int max_iter) {
  const auto t0 = std::chrono::steady_clock::now();
  const DiagonalScaling d = build_diagonal(a);
  std::vector<double> rhs = fwt_transpose_apply(a.spec, b);
  for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] *= d.entries[i];
  auto [y, report] = cg_solve(preconditioned_operator(a, d), rhs, tol, max_iter);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] *= d.entries[i];
  std::vector<double> x = fwt_apply(a.spec, y);
  report.method = "pcg";
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {std::move(x), report};
}

Eigen::MatrixXd dense_matrix(const ToeplitzStiffness& a) {
  const int n = a.size();
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = a.first_row[static_cast<std::size_t>(std::abs(i - j))];
  return m;
}

std::pair<std::vector<double>, SolveReport> dense_solve(const ToeplitzStiffness& a,
                                                        const std::vector<double>& b) {
  if (a.size() > (1 << 13)) throw std::domain_error("dense_solve: N exceeds 2^13 guard");
  if (static_cast<int>(b.size()) != a.size())
    throw std::invalid_argument("dense_solve: length mismatch");
  const auto t0 = std::chrono::steady_clock::now();
  Eigen::MatrixXd m = dense_matrix(a);
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("dense_solve: factorization failed (matrix not SPD?)");
  Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(b.data(), b.size());
  Eigen::VectorXd sol = llt.solve(rhs);
  SolveReport report;
  report.method = "dense";
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::vector<double> x(sol.data(), sol.data() + sol.size());
  return {std::move(x), report};
}

CondEstimate lanczos_condition(const LinOp& op, int n, int iters, unsigned seed) {
  iters = std::min(iters, n);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<std::vector<double>> basis;
  std::vector<double> alpha, beta;

  std::vector<double> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = gauss(rng);
  double nv = norm2(v);
  for (auto& x : v) x /= nv;
  basis.push_back(v);

  for (int k = 0; k < iters; ++k) {
    std::vector<double> w = op(basis.back());
    const double a_k = dot(w, basis.back());
    alpha.push_back(a_k);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] -= a_k * basis.back()[i];
    if (basis.size() >= 2) {
      const auto& prev = basis[basis.size() - 2];
      for (std::size_t i = 0; i < w.size(); ++i) w[i] -= beta.back() * prev[i];
    }
    // full reorthogonalization
    for (const auto& q : basis) {
      const double c = dot(w, q);
      for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * q[i];
    }
    const double b_k = norm2(w);
    if (b_k < 1e-14) break;
    beta.push_back(b_k);
    for (auto& x : w) x /= b_k;
    basis.push_back(std::move(w));
  }

  const int m = static_cast<int>(alpha.size());
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    t(i, i) = alpha[static_cast<std::size_t>(i)];
    if (i + 1 < m) {
      t(i, i + 1) = beta[static_cast<std::size_t>(i)];
      t(i + 1, i) = beta[static_cast<std::size_t>(i)];
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
  CondEstimate est;
  est.lambda_min = es.eigenvalues().minCoeff();
  est.lambda_max = es.eigenvalues().maxCoeff();
  return est;
}

std::vector<double> dense_spectrum(const LinOp& op, int n) {
  if (n > 512) throw std::domain_error("dense_spectrum: N exceeds 512 guard");
  Eigen::MatrixXd m(n, n);
  std::vector<double> e(static_cast<std::size_t>(n), 0.0);
  for (int j = 0; j < n; ++j) {
    e[static_cast<std::size_t>(j)] = 1.0;
    const std::vector<double> col = op(e);
    e[static_cast<std::size_t>(j)] = 0.0;
    for (int i = 0; i < n; ++i) m(i, j) = col[static_cast<std::size_t>(i)];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (m + m.transpose()));
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
  return out;
}

}  // namespace tfl
