#include "tfl/quadrature.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace tfl {

namespace {

// Golub-Welsch: nodes are eigenvalues of the symmetric tridiagonal Jacobi
// matrix of the orthogonal-polynomial recurrence, weights are
// mu0 * (first eigenvector component)^2.
GaussRule golub_welsch(const std::vector<double>& diag, const std::vector<double>& offdiag,
                       double mu0) {
  const int m = static_cast<int>(diag.size());
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    jacobi(i, i) = diag[i];
    if (i + 1 < m) {
      jacobi(i, i + 1) = offdiag[i];
      jacobi(i + 1, i) = offdiag[i];
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
  GaussRule rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  for (int i = 0; i < m; ++i) {
    rule.nodes[i] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v0 * v0;
  }
  return rule;
}

GaussRule make_gauss_jacobi(int m, double alpha, double gamma) {
  if (m < 1) throw std::invalid_argument("gauss_jacobi: need m >= 1");
  if (alpha <= -1.0 || gamma <= -1.0)
    throw std::invalid_argument("gauss_jacobi: exponents must be > -1");
  const double a = alpha, g = gamma;
  std::vector<double> diag(m), off(m > 1 ? m - 1 : 0);
  for (int k = 0; k < m; ++k) {
    const double den = (2.0 * k + a + g) * (2.0 * k + a + g + 2.0);
    diag[k] = (den == 0.0) ? (g - a) / (a + g + 2.0)
                           : (g * g - a * a) / den;
    if (k + 1 < m) {
      const double kk = k + 1;
      double num = 4.0 * kk * (kk + a) * (kk + g) * (kk + a + g);
      double d = (2.0 * kk + a + g);
      double den2 = d * d * (d + 1.0) * (d - 1.0);
      off[k] = std::sqrt(num / den2);
    }
  }
  // mu0 = int_{-1}^{1} (1-x)^a (1+x)^g dx = 2^{a+g+1} B(a+1, g+1)
  const double mu0 = std::pow(2.0, a + g + 1.0) *
                     std::exp(std::lgamma(a + 1.0) + std::lgamma(g + 1.0) -
                              std::lgamma(a + g + 2.0));
  return golub_welsch(diag, off, mu0);
}

}  // namespace

const GaussRule& gauss_legendre(int m) {
  static std::mutex mtx;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, make_gauss_jacobi(m, 0.0, 0.0)).first;
  return it->second;
}

GaussRule gauss_jacobi(int m, double alpha, double gamma) {
  return make_gauss_jacobi(m, alpha, gamma);
}

double integrate(const std::function<double(double)>& f, double a, double b, int m) {
  const GaussRule& rule = gauss_legendre(m);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i)
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * sum;
}

double integrate_refined_left(const std::function<double(double)>& f, double a, double b,
                              int levels, int m) {
  const double len = b - a;
  double sum = 0.0;
  double hi = b;
  for (int l = 1; l < levels; ++l) {
    const double lo = a + len * std::ldexp(1.0, -l);
    sum += integrate(f, lo, hi, m);
    hi = lo;
  }
  sum += integrate(f, a, hi, m);
  return sum;
}

double integrate_refined_right(const std::function<double(double)>& f, double a, double b,
                               int levels, int m) {
  const double len = b - a;
  double sum = 0.0;
  double lo = a;
  for (int l = 1; l < levels; ++l) {
    const double hi = b - len * std::ldexp(1.0, -l);
    sum += integrate(f, lo, hi, m);
    lo = hi;
  }
  sum += integrate(f, lo, b, m);
  return sum;
}

}  // namespace tfl
