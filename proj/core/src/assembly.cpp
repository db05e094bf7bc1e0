#include "tfl/assembly.hpp"

#include "tfl/fft.hpp"
#include "tfl/kernel_integrals.hpp"
#include "tfl/quadrature.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace tfl {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;

double zeta(double lambda, double beta, double y) {
  return std::exp(-lambda * y) * std::pow(y, -1.0 - beta);
}
}  // namespace

const std::vector<std::complex<double>>& ToeplitzStiffness::circulant_spectrum() const {
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  if (!spectrum_) {
    const std::size_t n = first_row.size();
    const std::size_t len = next_pow2(2 * n);
    std::vector<std::complex<double>> col(len, 0.0);
    for (std::size_t i = 0; i < n; ++i) col[i] = first_row[i];
    for (std::size_t i = 1; i < n; ++i) col[len - i] = first_row[i];
    fft_forward(col);
    spectrum_ = std::make_shared<const std::vector<std::complex<double>>>(std::move(col));
  }
  return *spectrum_;
}

namespace {

// B(phi_{n,0}, phi_{n,j}) for r=1: Eqs of the two-cell overlap, shifted
// variable t = y/h - j for j >= 2.
double entry_r1(const OperatorParams& p, double h, int j) {
  const double c = kernel_constant(p);
  const double lambda = p.lambda, beta = p.beta;
  if (j == 0)
    return 2.0 * c / h * regularized_moment(lambda, beta, h, 0) +
           2.0 * c * tail_integral(lambda, beta, h);
  if (j == 1) {
    const double from_zero = -regularized_moment(lambda, beta, h, 0);
    const double upper = zeta_poly_integral(p, Poly{{-2.0 * h, 1.0}}, h, 2.0 * h);
    return c / h * (from_zero + upper);
  }
  auto w = [&](double t) {
    return std::exp(-lambda * (j + t) * h) * std::pow(j + t, -1.0 - beta);
  };
  const double left = integrate([&](double t) { return -(1.0 + t) * w(t); }, -1.0, 0.0);
  const double right = integrate([&](double t) { return (t - 1.0) * w(t); }, 0.0, 1.0);
  return c * std::pow(h, -beta) * (left + right);
}

double entry_r2(const OperatorParams& p, double h, int j) {
  const double c = kernel_constant(p);
  const double lambda = p.lambda, beta = p.beta;
  const double h2 = h * h, h3 = h2 * h;
  if (j == 0) {
    double sum = 2.0 * h * regularized_moment(lambda, beta, h, 1) -
                 regularized_moment(lambda, beta, h, 2);
    sum += zeta_poly_integral(p, Poly{{-4.0 * h3 / 3.0, 4.0 * h2, -2.0 * h, 1.0 / 3.0}},
                              h, 2.0 * h);
    sum += 4.0 * h3 / 3.0 * tail_integral(lambda, beta, 2.0 * h);
    return c / h3 * sum;
  }
  if (j == 1) {
    double sum = (2.0 / 3.0) * regularized_moment(lambda, beta, h, 2) -
                 h * regularized_moment(lambda, beta, h, 1);
    // (y-3h)^3/6 on [2h,3h]
    sum += zeta_poly_integral(p, Poly{{-4.5 * h3, 4.5 * h2, -1.5 * h, 1.0 / 6.0}},
                              2.0 * h, 3.0 * h);
    sum -= zeta_poly_integral(p, Poly{{-7.0 * h3 / 6.0, 3.5 * h2, -2.5 * h, 0.5}},
                              h, 2.0 * h);
    sum += h3 / 3.0 * tail_integral(lambda, beta, 2.0 * h);
    return c / h3 * sum;
  }
  // j >= 2: four unit t-intervals with O(1) cubic weights:
  //   [-2,-1]: -(t+2)^3/6    [-1,0]: (3t^3+6t^2-4)/6
  //   [0,1]:   (-3t^3+6t^2-4)/6    [1,2]: (t-2)^3/6
  auto w = [&](double t) {
    return std::exp(-lambda * (j + t) * h) * std::pow(j + t, -1.0 - beta);
  };
  double sum = 0.0;
  if (j == 2) {
    // first interval reaches y = 0: contributes (c/h^3) int_0^h (-y^3/6) zeta dy;
    // folded into the h^{-beta}-scaled sum below.
    sum += -regularized_moment(lambda, beta, h, 2) * std::pow(h, beta) / (6.0 * h3);
  } else {
    sum += integrate([&](double t) { return -std::pow(t + 2.0, 3) / 6.0 * w(t); }, -2.0, -1.0);
  }
  sum += integrate([&](double t) { return (3.0 * t * t * t + 6.0 * t * t - 4.0) / 6.0 * w(t); },
                   -1.0, 0.0);
  sum += integrate([&](double t) { return (-3.0 * t * t * t + 6.0 * t * t - 4.0) / 6.0 * w(t); },
                   0.0, 1.0);
  sum += integrate([&](double t) { return std::pow(t - 2.0, 3) / 6.0 * w(t); }, 1.0, 2.0);
  return c * std::pow(h, -beta) * sum;
}

}  // namespace

ToeplitzStiffness assemble_first_row(const OperatorParams& params, const BasisSpec& spec,
                                     int count) {
  if (spec.r == 1 && params.beta >= 1.0)
    throw std::domain_error("assemble_first_row: r=1 requires beta < 1");
  const int n_entries = count < 0 ? spec.dim() : std::min(count, spec.dim());
  const double h = std::ldexp(1.0, -spec.n);
  std::vector<double> row(static_cast<std::size_t>(n_entries));
  for (int j = 0; j < n_entries; ++j)
    row[static_cast<std::size_t>(j)] =
        spec.r == 1 ? entry_r1(params, h, j) : entry_r2(params, h, j);
  ToeplitzStiffness a{spec, params, std::move(row)};
  return a;
}

namespace {

// int_U^inf u^a cos(mu) du (m >= 1) by the integration-by-parts asymptotic
// series; four levels leave a relative remainder ~ (|a|/(mU))^4.
double osc_tail_cos(double a, int m, double u_big, int depth = 4);
double osc_tail_sin(double a, int m, double u_big, int depth) {
  if (depth == 0) return 0.0;
  const double md = m;
  return std::pow(u_big, a) * std::cos(md * u_big) / md +
         a / md * osc_tail_cos(a - 1.0, m, u_big, depth - 1);
}
double osc_tail_cos(double a, int m, double u_big, int depth) {
  if (depth == 0) return 0.0;
  const double md = m;
  return -std::pow(u_big, a) * std::sin(md * u_big) / md -
         a / md * osc_tail_sin(a - 1.0, m, u_big, depth - 1);
}

double power_tail(double a, int m, double u_big) {
  if (m == 0) return -std::pow(u_big, a + 1.0) / (a + 1.0);  // requires a < -1
  return osc_tail_cos(a, m, u_big, 4);
}

}  // namespace

double symbol_entry_oracle(const OperatorParams& params, const BasisSpec& spec, int j,
                           double u_max) {
  if (j < 0) throw std::invalid_argument("symbol_entry_oracle: j >= 0");
  const int r = spec.r;
  const double h = std::ldexp(1.0, -spec.n);
  const double beta = params.beta, lambda = params.lambda;

  auto cfactor = [&](double u) {
    // ((1 - cos u)/u^2)^r stably through sin(u/2)
    const double s = std::sin(0.5 * u) / (0.5 * u);
    return std::pow(0.5 * s * s, r);
  };
  auto integrand = [&](double u) {
    return fourier_symbol(params, u / h) * cfactor(u) * std::cos(j * u);
  };

  // Head: dyadic panels toward 0, then uniform panels sized to resolve cos(ju).
  double head = 0.0;
  const double first = kPi;
  double lo = first * std::ldexp(1.0, -40);
  {
    double hi = 2.0 * lo;
    while (hi <= first + 1e-30) {
      head += integrate(integrand, lo, hi, 16);
      lo = hi;
      hi *= 2.0;
    }
  }
  const double panel = kPi / std::max(1, j);
  for (double a = first; a < u_max - 1e-9; a += panel)
    head += integrate(integrand, a, std::min(a + panel, u_max), 24);

  // Analytic oscillatory tail with G replaced by its power-law asymptote.
  // (1-cos u)^r cos(ju) expanded into cosines of integer multiples.
  std::vector<std::pair<int, double>> comb;
  if (r == 1)
    comb = {{j, 1.0}, {j - 1, -0.5}, {j + 1, -0.5}};
  else
    comb = {{j, 1.5}, {j - 1, -1.0}, {j + 1, -1.0}, {j - 2, 0.25}, {j + 2, 0.25}};
  double a1, a0;  // G(xi) ~ a1 xi^beta - a0
  if (lambda == 0.0) {
    a1 = 1.0;
    a0 = 0.0;
  } else if (beta == 1.0) {
    a1 = 1.0;
    a0 = 0.0;  // log-law correction negligible at u_max
  } else {
    const double sign = beta < 1.0 ? 1.0 : -1.0;
    a1 = sign * std::cos(0.5 * kPi * beta);
    a0 = sign * std::pow(lambda, beta);
  }
  double tail = 0.0;
  for (auto [m, cm] : comb) {
    const int mm = std::abs(m);
    tail += cm * (a1 * std::pow(h, -beta) * power_tail(beta - 2.0 * r, mm, u_max) -
                  a0 * power_tail(-2.0 * r, mm, u_max));
  }
  return std::exp2(r + 1) * (head + tail);
}

namespace {

// Per-cell quadrature nodes over (0,1); dyadic refinement toward the domain
// endpoints in the first and last cell.
struct CellQuad {
  std::vector<double> nodes;
  std::vector<double> weights;
};

std::vector<CellQuad> cell_quadrature(const BasisSpec& spec) {
  const int cells = 1 << spec.n;
  const double h = std::ldexp(1.0, -spec.n);
  // Dyadic panels stop a hair away from the singular endpoint; the truncated
  // mass is O(cutoff) which is far below the 1e-12 entry target.
  const double cutoff = std::max(h * std::ldexp(1.0, -40), 5e-14);
  const GaussRule& gl = gauss_legendre(24);
  const GaussRule& gl_fine = gauss_legendre(12);
  std::vector<CellQuad> out(static_cast<std::size_t>(cells));

  auto add_panel = [&](CellQuad& q, double a, double b, const GaussRule& rule) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t i = 0; i < rule.size(); ++i) {
      q.nodes.push_back(mid + half * rule.nodes[i]);
      q.weights.push_back(half * rule.weights[i]);
    }
  };

  for (int k = 0; k < cells; ++k) {
    CellQuad& q = out[static_cast<std::size_t>(k)];
    const double a = k * h, b = (k + 1) * h;
    if (k == 0 && cells > 1) {
      double hi = b;
      for (double step = 0.5 * h; step > cutoff; step *= 0.5) {
        add_panel(q, a + step, hi, gl_fine);
        hi = a + step;
      }
    } else if (k == cells - 1 && cells > 1) {
      double lo = a;
      for (double step = 0.5 * h; step > cutoff; step *= 0.5) {
        add_panel(q, lo, b - step, gl_fine);
        lo = b - step;
      }
    } else {
      add_panel(q, a, b, gl);
    }
  }
  return out;
}

}  // namespace

LoadVector load_constant(double c, const BasisSpec& spec) {
  LoadVector out{spec, std::vector<double>(static_cast<std::size_t>(spec.dim()),
                                           c * std::exp2(-0.5 * spec.n))};
  return out;
}

LoadVector load_callable(const std::function<double(double)>& f, const BasisSpec& spec) {
  const int cells = 1 << spec.n;
  const int n_dim = spec.dim();
  std::vector<double> entries(static_cast<std::size_t>(n_dim), 0.0);
  const auto quads = cell_quadrature(spec);
  for (int k = 0; k < cells; ++k) {
    const auto& q = quads[static_cast<std::size_t>(k)];
    std::vector<double> fv(q.nodes.size());
    for (std::size_t i = 0; i < q.nodes.size(); ++i) fv[i] = f(q.nodes[i]);
    for (int j = std::max(0, k - spec.r + 1); j <= std::min(n_dim - 1, k); ++j) {
      double sum = 0.0;
      for (std::size_t i = 0; i < q.nodes.size(); ++i)
        sum += q.weights[i] * fv[i] * scaling_function(spec, j, q.nodes[i]);
      entries[static_cast<std::size_t>(j)] += sum;
    }
  }
  return LoadVector{spec, std::move(entries)};
}

LoadVector load_galerkin(const OperatorParams& params, const PiecewiseFunction& u,
                         const BasisSpec& spec) {
  return load_callable([&](double x) { return apply_pointwise(params, u, x); }, spec);
}

LoadVector lifting_load(const OperatorParams& params, const PiecewiseFunction& eta,
                        const BasisSpec& spec) {
  return load_galerkin(params, eta, spec);
}

std::complex<double> fourier_bspline(int r, double xi) {
  using cd = std::complex<double>;
  cd base;
  if (std::abs(xi) < 1e-4) {
    cd term(1.0, 0.0);
    base = term;
    for (int k = 1; k <= 6; ++k) {
      term *= cd(0.0, -xi) / static_cast<double>(k);
      base += term / static_cast<double>(k + 1);
    }
  } else {
    const cd ix(0.0, xi);
    base = (1.0 - std::exp(-ix)) / ix;
  }
  cd out = 1.0;
  for (int k = 0; k < r; ++k) out *= base;
  return out;
}

LoadVector load_fourier(const OperatorParams& params,
                        const std::function<std::complex<double>(double)>& fourier_u,
                        const BasisSpec& spec, double xi_max) {
  using cd = std::complex<double>;
  const int n_dim = spec.dim();
  const double h = std::ldexp(1.0, -spec.n);
  const GaussRule& gl = gauss_legendre(24);
  const double panel = 0.5 * kPi;
  std::vector<double> entries(static_cast<std::size_t>(n_dim), 0.0);
  for (double a = 0.0; a < xi_max; a += panel) {
    const double b = std::min(a + panel, xi_max);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t i = 0; i < gl.size(); ++i) {
      const double xi = mid + half * gl.nodes[i];
      const cd base = fourier_symbol(params, xi) * fourier_u(xi) *
                      std::conj(fourier_bspline(spec.r, h * xi)) * (half * gl.weights[i]);
      const cd rot = std::exp(cd(0.0, h * xi));
      cd z(1.0, 0.0);
      for (int j = 0; j < n_dim; ++j) {
        entries[static_cast<std::size_t>(j)] += (base * z).real();
        z *= rot;
      }
    }
  }
  const double scale = std::exp2(-0.5 * spec.n) / kPi;
  for (auto& e : entries) e *= scale;
  return LoadVector{spec, std::move(entries)};
}

namespace {

std::string cache_basename(const OperatorParams& params, const BasisSpec& spec) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "firstrow_r%d_n%d_b%.17g_l%.17g", spec.r, spec.n,
                params.beta, params.lambda);
  return buf;
}

}  // namespace

void save_first_row(const std::string& dir, const ToeplitzStiffness& stiffness) {
  const std::string base = dir + "/" + cache_basename(stiffness.params, stiffness.spec);
  {
    std::ofstream bin(base + ".bin", std::ios::binary);
    // Little-endian doubles; this code targets little-endian hosts.
    bin.write(reinterpret_cast<const char*>(stiffness.first_row.data()),
              static_cast<std::streamsize>(stiffness.first_row.size() * sizeof(double)));
  }
  nlohmann::json meta{{"r", stiffness.spec.r},
                      {"n", stiffness.spec.n},
                      {"beta", stiffness.params.beta},
                      {"lambda", stiffness.params.lambda},
                      {"count", stiffness.first_row.size()}};
  std::ofstream js(base + ".json");
  js << meta.dump(2) << "\n";
}

std::optional<ToeplitzStiffness> try_load_first_row(const std::string& dir,
                                                    const OperatorParams& params,
                                                    const BasisSpec& spec) {
  const std::string base = dir + "/" + cache_basename(params, spec);
  std::ifstream js(base + ".json");
  if (!js) return std::nullopt;
  nlohmann::json meta;
  try {
    js >> meta;
  } catch (...) {
    return std::nullopt;
  }
  if (meta.value("r", -1) != spec.r || meta.value("n", -1) != spec.n ||
      meta.value("beta", -1.0) != params.beta || meta.value("lambda", -1.0) != params.lambda)
    return std::nullopt;
  const std::size_t count = meta.value("count", std::size_t{0});
  if (count != static_cast<std::size_t>(spec.dim())) return std::nullopt;
  std::ifstream bin(base + ".bin", std::ios::binary);
  if (!bin) return std::nullopt;
  std::vector<double> row(count);
  bin.read(reinterpret_cast<char*>(row.data()),
           static_cast<std::streamsize>(count * sizeof(double)));
  if (!bin) return std::nullopt;
  return ToeplitzStiffness{spec, params, std::move(row)};
}

}  // namespace tfl
