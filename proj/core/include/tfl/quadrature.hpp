#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace tfl {

/// Nodes and weights of a quadrature rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// m-point Gauss-Legendre rule (weight 1 on [-1,1]), via Golub-Welsch.
const GaussRule& gauss_legendre(int m);

/// m-point Gauss-Jacobi rule for the weight (1-x)^alpha (1+x)^gamma on [-1,1].
/// The weight is absorbed into the returned weights.
GaussRule gauss_jacobi(int m, double alpha, double gamma);

/// Integrate f over [a, b] with an m-point Gauss-Legendre rule.
double integrate(const std::function<double(double)>& f, double a, double b, int m = 24);

/// Integrate f over [a, b] splitting into panels whose length grows
/// geometrically away from the endpoint `a` (for integrands with an
/// integrable singularity or sharp gradient at `a`).  The first panel has
/// length (b-a)*2^-levels.
double integrate_refined_left(const std::function<double(double)>& f, double a, double b,
                              int levels = 45, int m = 16);

/// Same with refinement toward the right endpoint `b`.
double integrate_refined_right(const std::function<double(double)>& f, double a, double b,
                               int levels = 45, int m = 16);

}  // namespace tfl
