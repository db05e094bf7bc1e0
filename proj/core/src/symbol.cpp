#include "tfl/symbol.hpp"

#include "tfl/fft.hpp"
#include "tfl/special.hpp"

#include <cmath>
#include <stdexcept>

namespace tfl {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
}

OperatorParams::OperatorParams(double beta_, double lambda_) : beta(beta_), lambda(lambda_) {
  if (!(beta > 0.0 && beta < 2.0))
    throw std::domain_error("OperatorParams: beta must lie in (0,2)");
  if (!(lambda >= 0.0)) throw std::domain_error("OperatorParams: lambda must be >= 0");
}

double kernel_constant(const OperatorParams& params) {
  const double beta = params.beta;
  if (params.lambda == 0.0 || beta == 1.0) {
    return beta * std::tgamma(0.5 * (1.0 + beta)) /
           (std::pow(2.0, 1.0 - beta) * std::sqrt(kPi) * std::tgamma(1.0 - 0.5 * beta));
  }
  // Gamma(1/2) / (2 sqrt(pi) |Gamma(-beta)|) = 1 / (2 |Gamma(-beta)|)
  return 1.0 / (2.0 * std::abs(gamma_neg(beta)));
}

double kernel_constant_sine_form(double beta) {
  return std::tgamma(1.0 + beta) * std::sin(0.5 * kPi * beta) / kPi;
}

double fourier_symbol(const OperatorParams& params, double xi) {
  const double beta = params.beta;
  const double lambda = params.lambda;
  const double axi = std::abs(xi);
  if (lambda == 0.0) return std::pow(axi, beta);
  const double t = axi / lambda;
  if (beta == 1.0) {
    // (2/pi) (|xi| arctan(|xi|/lambda) - lambda/2 log(lambda^2+xi^2) + lambda log lambda)
    //   = (2 lambda / pi) (t arctan t - log1p(t^2)/2)
    if (t < 1e-4) {
      const double t2 = t * t;
      return (2.0 * lambda / kPi) * t2 * (0.5 + t2 * (-1.0 / 12.0 + t2 / 30.0));
    }
    return (2.0 * lambda / kPi) * (t * std::atan(t) - 0.5 * std::log1p(t * t));
  }
  const double sign = beta < 1.0 ? 1.0 : -1.0;  // (-1)^{floor(beta)}
  const double mod = std::pow(lambda * lambda + axi * axi, 0.5 * beta);
  const double val = mod * std::cos(beta * std::atan(t)) - std::pow(lambda, beta);
  return sign * val;
}

SampledFunction apply_operator_fourier(const OperatorParams& params, const SampledFunction& w,
                                       int pad_factor, Diagnostics* diag) {
  const std::size_t n = w.values.size();
  if (n < 2) throw std::invalid_argument("apply_operator_fourier: need at least 2 samples");
  if (pad_factor < 1) throw std::invalid_argument("apply_operator_fourier: pad_factor >= 1");

  double max_abs = 0.0;
  for (double v : w.values) max_abs = std::max(max_abs, std::abs(v));
  if (diag && max_abs > 0.0) {
    const double edge = std::max(std::abs(w.values.front()), std::abs(w.values.back()));
    if (edge > 1e-12 * max_abs)
      diag->warnings.push_back("apply_operator_fourier: support violation at grid boundary");
  }

  const double dx = w.dx();
  const std::size_t len = next_pow2(n * static_cast<std::size_t>(pad_factor));
  std::vector<std::complex<double>> buf(len, 0.0);
  for (std::size_t i = 0; i < n; ++i) buf[i] = w.values[i];
  fft_forward(buf);
  const double dxi = 2.0 * kPi / (static_cast<double>(len) * dx);
  for (std::size_t k = 0; k < len; ++k) {
    const double freq = (k <= len / 2) ? static_cast<double>(k)
                                       : static_cast<double>(k) - static_cast<double>(len);
    buf[k] *= fourier_symbol(params, freq * dxi);
  }
  fft_inverse(buf);

  SampledFunction out;
  out.x_lo = w.x_lo;
  out.x_hi = w.x_hi;
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = buf[i].real();
  return out;
}

std::complex<double> fourier_of_cubic(const std::array<double, 4>& coeffs, double xi) {
  using cd = std::complex<double>;
  std::array<cd, 4> m;  // m_k = int_0^1 x^k e^{-i x xi} dx
  if (std::abs(xi) < 1e-3) {
    // m_k = sum_j (-i xi)^j / (j! (k+j+1))
    for (int k = 0; k < 4; ++k) {
      cd term(1.0, 0.0);
      cd sum = term / static_cast<double>(k + 1);
      for (int j = 1; j <= 14; ++j) {
        term *= cd(0.0, -xi) / static_cast<double>(j);
        sum += term / static_cast<double>(k + j + 1);
      }
      m[k] = sum;
    }
  } else {
    const cd i_xi(0.0, xi);
    const cd e = std::exp(-i_xi);
    m[0] = (1.0 - e) / i_xi;
    for (int k = 1; k < 4; ++k) m[k] = (static_cast<double>(k) * m[k - 1] - e) / i_xi;
  }
  cd out = 0.0;
  for (int k = 0; k < 4; ++k) out += coeffs[static_cast<std::size_t>(k)] * m[static_cast<std::size_t>(k)];
  return out;
}

}  // namespace tfl
