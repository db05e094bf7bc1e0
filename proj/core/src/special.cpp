#include "tfl/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace tfl {

double exp_integral_e1(double x) {
  if (!(x > 0.0)) throw std::domain_error("exp_integral_e1: requires x > 0");
  if (x <= 6.0) {
    // E1(x) = -gamma - ln x - sum_{k>=1} (-x)^k / (k k!)
    constexpr double euler_gamma = 0.57721566490153286060651209008240;
    double sum = 0.0;
    double term = 1.0;  // (-x)^k / k!
    for (int k = 1; k <= 60; ++k) {
      term *= -x / k;
      const double add = term / k;
      sum += add;
      if (std::abs(add) < 1e-18 * (std::abs(sum) + 1e-300)) break;
    }
    return -euler_gamma - std::log(x) - sum;
  }
  // Modified Lentz continued fraction: E1(x) = e^{-x} / (x + 1/(1 + 1/(x + 2/(1 + ...))))
  const double tiny = std::numeric_limits<double>::min() * 1e4;
  double b = x + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 200; ++i) {
    const double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const double delta = c * d;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x);
}

double gamma_neg(double beta) {
  if (!(beta > 0.0 && beta < 2.0) || beta == 1.0)
    throw std::domain_error("gamma_neg: requires beta in (0,2), beta != 1");
  const double pi = 3.14159265358979323846264338327950288;
  return -pi / (std::sin(pi * beta) * std::tgamma(1.0 + beta));
}

}  // namespace tfl
