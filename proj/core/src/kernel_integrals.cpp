#include "tfl/kernel_integrals.hpp"

#include "tfl/quadrature.hpp"
#include "tfl/special.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace tfl {

namespace {

const GaussRule& jacobi_rule_cached(double gamma) {
  static std::mutex mtx;
  static std::map<std::uint64_t, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mtx);
  const auto key = std::bit_cast<std::uint64_t>(gamma);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, gauss_jacobi(32, 0.0, gamma)).first;
  return it->second;
}

// Smallest K >= max(4, k+1) making the split remainder negligible:
// (lambda h)^{K-1} / Gamma(K+1-beta) < 1e-16 |Gamma(1-beta)|.
int split_order(double x, double beta, int k) {
  int K = std::max(4, k + 1);
  if (beta == 1.0) return K;  // |Gamma(0)| = inf, condition holds immediately
  // lgamma gives log|Gamma|, valid for negative non-integer arguments too.
  const double lt = std::log(1e-16) + std::lgamma(1.0 - beta);
  while (K < 64) {
    const double lhs = (K - 1) * std::log(std::max(x, 1e-300)) - std::lgamma(K + 1.0 - beta);
    if (lhs < lt) break;
    ++K;
  }
  return K;
}

double zeta(double lambda, double beta, double y) {
  return std::exp(-lambda * y) * std::pow(y, -1.0 - beta);
}

// Geometric panels doubling away from `a`, Gauss-Legendre on each.
double panels_from(const std::function<double(double)>& f, double a, double b, int m = 24) {
  double sum = 0.0;
  double lo = a;
  while (lo < b) {
    const double hi = std::min(2.0 * lo, b);
    sum += integrate(f, lo, hi, m);
    if (hi >= b) break;
    lo = hi;
  }
  return sum;
}

}  // namespace

double regularized_moment(double lambda, double beta, double h, int k) {
  if (!(beta > 0.0 && beta < 2.0)) throw std::domain_error("regularized_moment: beta outside (0,2)");
  if (lambda < 0.0) throw std::domain_error("regularized_moment: lambda < 0");
  if (k < 0 || (beta >= 1.0 && k < 1))
    throw std::domain_error("regularized_moment: moment order too low for this beta");
  if (!(h >= 0.0)) throw std::domain_error("regularized_moment: h < 0");
  if (h == 0.0) return 0.0;
  const double p = k + 1.0 - beta;
  if (lambda == 0.0) return std::pow(h, p) / p;

  const double x = lambda * h;
  const int K = split_order(x, beta, k);
  const double e = std::exp(-x);
  double series = 0.0;
  double prod = 1.0;
  double lam_pow = 1.0;
  for (int j = k; j < K; ++j) {
    prod *= (j + 1.0 - beta);
    series += e * std::pow(h, j + 1.0 - beta) * lam_pow / prod;
    lam_pow *= lambda;
  }
  // Remaining integral int_0^h e^{-lambda y} y^{K-beta} dy by Gauss-Jacobi
  // with weight (1+eta)^{K-beta} on [-1,1].
  const GaussRule& rule = jacobi_rule_cached(K - beta);
  double gj = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i)
    gj += rule.weights[i] * std::exp(-0.5 * x * (1.0 + rule.nodes[i]));
  const double tail = std::pow(0.5 * h, K - beta + 1.0) * gj;
  return series + lam_pow / prod * tail;
}

double tail_integral(double lambda, double beta, double a) {
  if (!(a > 0.0)) throw std::domain_error("tail_integral: requires a > 0");
  if (!(beta > 0.0 && beta < 2.0)) throw std::domain_error("tail_integral: beta outside (0,2)");
  if (lambda < 0.0) throw std::domain_error("tail_integral: lambda < 0");
  if (lambda == 0.0) return std::pow(a, -beta) / beta;
  const double x = lambda * a;
  if (x > 10.0) {
    // The closed forms below cancel heavily once e^{-lambda a} is tiny;
    // direct panels converge immediately out here.
    double sum = 0.0;
    double lo = a;
    const double f0 = zeta(lambda, beta, a);
    for (int p = 0; p < 200; ++p) {
      const double hi = lo + 2.0 / lambda;
      sum += integrate([&](double y) { return zeta(lambda, beta, y); }, lo, hi, 24);
      lo = hi;
      if (zeta(lambda, beta, lo) < 1e-22 * f0) break;
    }
    return sum;
  }
  if (beta == 1.0) return std::exp(-x) / a - lambda * exp_integral_e1(x);
  const double gm = gamma_neg(beta);
  return std::exp(-x) * std::pow(a, -beta) / beta +
         lambda * std::exp(-x) * std::pow(a, 1.0 - beta) / (beta * (1.0 - beta)) +
         std::pow(lambda, beta) * gm -
         lambda * lambda * gm / std::tgamma(2.0 - beta) * regularized_moment(lambda, beta, a, 1);
}

double zeta_poly_integral(const OperatorParams& params, const Poly& poly, double a, double b) {
  if (!(a >= 0.0 && b > a)) throw std::invalid_argument("zeta_poly_integral: bad interval");
  if (a == 0.0) {
    double scale = 0.0;
    for (double c : poly.coeffs) scale = std::max(scale, std::abs(c));
    if (!poly.coeffs.empty() && std::abs(poly.coeffs[0]) > 1e-13 * scale)
      throw std::invalid_argument("zeta_poly_integral: integrand not vanishing at 0");
    double sum = 0.0;
    for (std::size_t k = 1; k < poly.coeffs.size(); ++k)
      if (poly.coeffs[k] != 0.0)
        sum += poly.coeffs[k] *
               regularized_moment(params.lambda, params.beta, b, static_cast<int>(k) - 1);
    return sum;
  }
  return panels_from(
      [&](double y) { return poly(y) * zeta(params.lambda, params.beta, y); }, a, b);
}

namespace {

struct VirtualPiece {
  // Unified view: polynomial (possibly constant tail) or callable.
  bool is_poly = false;
  Poly poly;
  std::function<double(double)> call;
};

VirtualPiece piece_at(const PiecewiseFunction& u, double x) {
  VirtualPiece out;
  const auto& bps = u.breakpoints();
  if (x < bps.front()) {
    const auto& t = u.left_tail();
    if (t.kind == PiecewiseFunction::Tail::Kind::decaying) {
      out.call = t.f;
    } else {
      out.is_poly = true;
      out.poly = Poly{{t.kind == PiecewiseFunction::Tail::Kind::constant ? t.value : 0.0}};
    }
    return out;
  }
  if (x > bps.back()) {
    const auto& t = u.right_tail();
    if (t.kind == PiecewiseFunction::Tail::Kind::decaying) {
      out.call = t.f;
    } else {
      out.is_poly = true;
      out.poly = Poly{{t.kind == PiecewiseFunction::Tail::Kind::constant ? t.value : 0.0}};
    }
    return out;
  }
  const auto idx = u.piece_index(x);
  const Piece& p = u.pieces()[*idx];
  if (std::holds_alternative<Poly>(p)) {
    out.is_poly = true;
    out.poly = std::get<Poly>(p);
  } else {
    out.call = std::get<SmoothPiece>(p).f;
  }
  return out;
}

}  // namespace

double apply_pointwise(const OperatorParams& params, const PiecewiseFunction& u, double x) {
  const auto& bps = u.breakpoints();
  for (double b : bps)
    if (std::abs(x - b) < 1e-15)
      throw std::invalid_argument("apply_pointwise: x coincides with a breakpoint");
  const auto idx = u.piece_index(x);
  if (!idx) throw std::invalid_argument("apply_pointwise: x must lie in the bounded region");

  const double lambda = params.lambda, beta = params.beta;
  const double ux = u(x);

  std::vector<double> dist;
  dist.reserve(bps.size());
  for (double b : bps) dist.push_back(std::abs(x - b));
  std::sort(dist.begin(), dist.end());
  dist.erase(std::unique(dist.begin(), dist.end(),
                         [](double p, double q) { return std::abs(p - q) < 1e-14; }),
             dist.end());

  double total = 0.0;
  const Piece& px = u.pieces()[*idx];
  const double d1 = dist.front();
  double delta = d1;

  // Near field (0, delta]: even Taylor expansion kills the singularity
  // exactly for polynomial pieces, to O(delta^{9-beta}) otherwise.
  if (std::holds_alternative<Poly>(px)) {
    Poly d = std::get<Poly>(px);
    double fact = 1.0;
    int order = 0;
    while (true) {
      d = d.derivative().derivative();
      order += 2;
      fact *= (order - 1) * order;
      if (d.degree() == 0 && d.coeffs[0] == 0.0) break;
      total += -2.0 * d(x) / fact * regularized_moment(lambda, beta, delta, order - 1);
      if (order >= 12) break;
    }
  } else {
    const auto& sp = std::get<SmoothPiece>(px);
    if (!sp.d2 || !sp.d4 || !sp.d6)
      throw std::invalid_argument("apply_pointwise: smooth piece needs d2/d4/d6 at x");
    delta = std::min(d1, 1.0 / 64.0);
    total += -sp.d2(x) * regularized_moment(lambda, beta, delta, 1);
    total += -sp.d4(x) / 12.0 * regularized_moment(lambda, beta, delta, 3);
    total += -sp.d6(x) / 360.0 * regularized_moment(lambda, beta, delta, 5);
    if (delta < d1) {
      total += panels_from(
          [&](double y) { return (2.0 * ux - u(x - y) - u(x + y)) * zeta(lambda, beta, y); },
          delta, d1);
    }
  }

  // Middle intervals between successive breakpoint distances.
  for (std::size_t i = 0; i + 1 < dist.size(); ++i) {
    const double lo = dist[i], hi = dist[i + 1];
    if (hi - lo < 1e-14) continue;
    const double mid = 0.5 * (lo + hi);
    const VirtualPiece left = piece_at(u, x - mid);
    const VirtualPiece right = piece_at(u, x + mid);
    if (left.is_poly && right.is_poly) {
      // g(y) = 2u(x) - P_L(x-y) - P_R(x+y), polynomial in y.
      Poly g = poly_compose_linear(left.poly, x, -1.0);
      Poly gr = poly_compose_linear(right.poly, x, 1.0);
      const std::size_t deg = std::max(g.coeffs.size(), std::max(gr.coeffs.size(), std::size_t{1}));
      g.coeffs.resize(deg, 0.0);
      for (std::size_t k = 0; k < gr.coeffs.size(); ++k) g.coeffs[k] += gr.coeffs[k];
      for (auto& c : g.coeffs) c = -c;
      g.coeffs[0] += 2.0 * ux;
      total += panels_from([&](double y) { return g(y) * zeta(lambda, beta, y); }, lo, hi);
    } else {
      total += panels_from(
          [&](double y) { return (2.0 * ux - u(x - y) - u(x + y)) * zeta(lambda, beta, y); },
          lo, hi);
    }
  }

  // Far field (dist.back(), inf): both arguments in the tails.
  const double dmax = dist.back();
  double base = 2.0 * ux;
  const auto& lt = u.left_tail();
  const auto& rt = u.right_tail();
  if (lt.kind == PiecewiseFunction::Tail::Kind::constant) base -= lt.value;
  if (rt.kind == PiecewiseFunction::Tail::Kind::constant) base -= rt.value;
  if (base != 0.0) total += base * tail_integral(lambda, beta, dmax);
  auto decaying_tail = [&](const std::function<double(double)>& f, double sgn) {
    double sum = 0.0;
    double lo = dmax;
    for (int p = 0; p < 80; ++p) {
      const double hi = 2.0 * lo;
      const double piece = integrate(
          [&](double y) { return f(x + sgn * y) * zeta(lambda, beta, y); }, lo, hi, 24);
      sum += piece;
      lo = hi;
      if (std::abs(piece) < 1e-18 * (std::abs(total) + std::abs(sum)) + 1e-300) break;
    }
    return sum;
  };
  if (lt.kind == PiecewiseFunction::Tail::Kind::decaying) total -= decaying_tail(lt.f, -1.0);
  if (rt.kind == PiecewiseFunction::Tail::Kind::decaying) total -= decaying_tail(rt.f, +1.0);

  return kernel_constant(params) * total;
}

}  // namespace tfl
