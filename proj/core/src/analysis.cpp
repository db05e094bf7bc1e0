#include "tfl/analysis.hpp"

#include "tfl/fft.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace tfl {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4e", v);
  return buf;
}

std::string rate_str(const std::optional<double>& r) {
  if (!r) return "--";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", *r);
  return buf;
}

}  // namespace

double h_norm_weight(double beta) { return 2.0 / kernel_constant_sine_form(beta); }

ErrorPair error_norms(const std::function<double(double)>& exact, const DiscreteSolution& approx,
                      double beta, int oversample, Diagnostics* diag) {
  const double x_lo = -1.0, x_hi = 2.0;
  const std::size_t count =
      3u * (static_cast<std::size_t>(1) << approx.spec.n) * static_cast<std::size_t>(oversample) + 1u;
  const double dx = (x_hi - x_lo) / static_cast<double>(count - 1);

  std::vector<double> e(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double x = x_lo + dx * static_cast<double>(i);
    e[i] = exact(x) - approx(x);
  }
  double max_abs = 0.0;
  for (double v : e) max_abs = std::max(max_abs, std::abs(v));
  if (diag && max_abs > 0.0 &&
      std::max(std::abs(e.front()), std::abs(e.back())) > 1e-12 * max_abs)
    diag->warnings.push_back("error_norms: error not supported inside [-1,2]");

  // L2 by composite trapezoid on the aligned grid.
  double l2sq = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double w = (i == 0 || i + 1 == count) ? 0.5 : 1.0;
    l2sq += w * e[i] * e[i];
  }
  l2sq *= dx;

  // H^{beta/2} by FFT with zero padding factor 8.
  const std::size_t len = next_pow2(8u * count);
  std::vector<std::complex<double>> buf(len, 0.0);
  for (std::size_t i = 0; i < count; ++i) buf[i] = e[i];
  fft_forward(buf);
  const double dxi = 2.0 * kPi / (static_cast<double>(len) * dx);
  const double weight_c = h_norm_weight(beta);
  double hsq = 0.0;
  for (std::size_t k = 0; k < len; ++k) {
    const double freq = (k <= len / 2) ? static_cast<double>(k)
                                       : static_cast<double>(k) - static_cast<double>(len);
    const double xi = std::abs(freq) * dxi;
    const double f2 = std::norm(buf[k]) * dx * dx;
    hsq += (1.0 + weight_c * std::pow(xi, beta)) * f2;
  }
  hsq *= dxi / (2.0 * kPi);
  return ErrorPair{std::sqrt(l2sq), std::sqrt(hsq)};
}

ErrorPair successive_errors(const DiscreteSolution& coarse, const DiscreteSolution& fine,
                            double beta) {
  if (fine.spec.r != coarse.spec.r || fine.spec.n != coarse.spec.n + 1)
    throw std::invalid_argument("successive_errors: levels must be n and n+1 with equal r");
  auto coarse_fn = [&coarse](double x) { return coarse(x); };
  // The lifting cancels in p_{n+1} - p_n; compare spline parts plus liftings
  // through the full evaluators on the finer grid.
  return error_norms(coarse_fn, fine, beta);
}

void ConvergenceReport::write_csv(std::ostream& os) const {
  const bool hat = error_mode == "successive";
  os << "n," << (hat ? "Hhat-err" : "H-err") << ",rate," << (hat ? "L2hat-err" : "L2-err")
     << ",rate,iter,cpu_s\n";
  for (const auto& row : rows) {
    os << row.n << ',' << sci(row.err_h) << ',' << rate_str(row.rate_h) << ','
       << sci(row.err_l2) << ',' << rate_str(row.rate_l2) << ',' << row.iterations << ','
       << sci(row.solve_seconds) << '\n';
  }
}

nlohmann::json ConvergenceReport::metadata() const {
  return nlohmann::json{{"r", r},
                        {"beta", beta},
                        {"lambda", lambda},
                        {"problem", problem},
                        {"lifting", lifting},
                        {"method", method},
                        {"error_mode", error_mode}};
}

ConvergenceReport convergence_sweep(const ProblemSpec& prob, int r,
                                    const std::vector<int>& n_range, const std::string& method,
                                    double tol, int oversample) {
  if (n_range.empty()) throw std::invalid_argument("convergence_sweep: empty n_range");
  for (std::size_t i = 1; i < n_range.size(); ++i)
    if (n_range[i] <= n_range[i - 1])
      throw std::invalid_argument("convergence_sweep: n_range must ascend");

  ConvergenceReport report;
  report.r = r;
  report.beta = prob.params.beta;
  report.lambda = prob.params.lambda;
  report.problem = prob.id;
  report.lifting = prob.lifting_id;
  report.method = method;
  report.error_mode = prob.exact ? "exact" : "successive";
  const bool successive = !prob.exact;

  std::vector<DiscreteSolution> solutions;
  std::vector<SolveReport> reports;
  std::vector<int> levels = n_range;
  if (successive) levels.push_back(n_range.back() + 1);
  for (int n : levels) {
    auto [sol, rep] = solve_problem(prob, BasisSpec(r, n), method, tol);
    solutions.push_back(std::move(sol));
    reports.push_back(std::move(rep));
  }

  double prev_h = 0.0, prev_l2 = 0.0;
  for (std::size_t i = 0; i < n_range.size(); ++i) {
    ErrorPair err;
    if (successive) {
      err = successive_errors(solutions[i], solutions[i + 1], prob.params.beta);
    } else {
      err = error_norms(prob.exact, solutions[i], prob.params.beta, oversample);
    }
    ConvergenceRow row;
    row.n = n_range[i];
    row.err_h = err.h_half_beta;
    row.err_l2 = err.l2;
    row.iterations = reports[i].iterations;
    row.solve_seconds = reports[i].wall_time;
    if (i > 0) {
      row.rate_h = std::log2(prev_h / err.h_half_beta);
      row.rate_l2 = std::log2(prev_l2 / err.l2);
    }
    prev_h = err.h_half_beta;
    prev_l2 = err.l2;
    report.rows.push_back(row);
  }
  return report;
}

void ConditionReport::write_csv(std::ostream& os) const {
  os << "n,cond_cg,rate,iter_cg,cpu_cg,cond_pcg,iter_pcg,cpu_pcg,cpu_gauss\n";
  for (const auto& row : rows) {
    os << row.n << ',' << sci(row.cond_plain) << ',' << rate_str(row.rate) << ','
       << row.iters_cg << ',' << sci(row.cpu_cg) << ',' << sci(row.cond_pcg) << ','
       << row.iters_pcg << ',' << sci(row.cpu_pcg) << ','
       << (row.cpu_dense ? sci(*row.cpu_dense) : std::string("--")) << '\n';
  }
}

nlohmann::json ConditionReport::metadata() const {
  return nlohmann::json{
      {"r", r}, {"beta", beta}, {"lambda", lambda}, {"problem", problem}, {"tol", tol}};
}

double ConditionReport::fitted_cond_slope() const {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(rows.size());
  for (const auto& row : rows) {
    const double x = row.n, y = std::log2(row.cond_plain);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

ConditionReport condition_sweep(const OperatorParams& params, int r,
                                const std::vector<int>& n_range, double tol, int dense_limit) {
  ConditionReport report;
  report.r = r;
  report.beta = params.beta;
  report.lambda = params.lambda;
  report.problem = "example1";
  report.tol = tol;

  const ProblemSpec prob = make_problem("example1", params.beta, params.lambda);
  std::optional<double> prev_cond;
  for (int n : n_range) {
    const BasisSpec spec(r, n);
    const ToeplitzStiffness a = assemble_first_row(params, spec);
    LoadVector b = load_galerkin(params, *prob.manufactured, spec);

    ConditionRow row;
    row.n = n;
    const LinOp plain = plain_operator(a);
    if (spec.dim() <= 512) {
      const auto ev = dense_spectrum(plain, spec.dim());
      row.cond_plain = ev.back() / ev.front();
    } else {
      row.cond_plain = lanczos_condition(plain, spec.dim()).cond();
    }
    const DiagonalScaling d = build_diagonal(a);
    const LinOp pre = preconditioned_operator(a, d);
    if (spec.dim() <= 512) {
      const auto ev = dense_spectrum(pre, spec.dim());
      row.cond_pcg = ev.back() / ev.front();
    } else {
      row.cond_pcg = lanczos_condition(pre, spec.dim()).cond();
    }
    if (prev_cond) row.rate = std::log2(row.cond_plain / *prev_cond);
    prev_cond = row.cond_plain;

    auto [xc, rep_cg] = cg_solve(plain, b.values, tol);
    row.iters_cg = rep_cg.iterations;
    row.cpu_cg = rep_cg.wall_time;
    auto [xp, rep_pcg] = pcg_solve(a, b.values, tol);
    row.iters_pcg = rep_pcg.iterations;
    row.cpu_pcg = rep_pcg.wall_time;
    if (spec.dim() <= dense_limit) {
      auto [xd, rep_dense] = dense_solve(a, b.values);
      row.cpu_dense = rep_dense.wall_time;
    }
    report.rows.push_back(row);
  }
  return report;
}

std::vector<double> eigenvalue_dump(const OperatorParams& params, int r, int n,
                                    bool preconditioned) {
  if (n > 9) throw std::domain_error("eigenvalue_dump: n exceeds dense guard (n <= 9)");
  const BasisSpec spec(r, n);
  const ToeplitzStiffness a = assemble_first_row(params, spec);
  if (!preconditioned) return dense_spectrum(plain_operator(a), spec.dim());
  const DiagonalScaling d = build_diagonal(a);
  return dense_spectrum(preconditioned_operator(a, d), spec.dim());
}

}  // namespace tfl
