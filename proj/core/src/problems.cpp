#include "tfl/problems.hpp"

#include "tfl/kernel_integrals.hpp"
#include "tfl/special.hpp"

#include <cmath>
#include <stdexcept>

namespace tfl {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;

const Poly kExample1Poly{{0.0, 0.0, 1.0, -1.0}};  // x^2 (1-x)

PiecewiseFunction example1_solution() {
  return PiecewiseFunction::poly_on_interval(kExample1Poly, 0.0, 1.0);
}

SmoothPiece gaussian_piece() {
  SmoothPiece g;
  g.f = [](double x) { return std::exp(-x * x); };
  g.d2 = [](double x) { return (4.0 * x * x - 2.0) * std::exp(-x * x); };
  g.d4 = [](double x) {
    const double x2 = x * x;
    return (16.0 * x2 * x2 - 48.0 * x2 + 12.0) * std::exp(-x2);
  };
  g.d6 = [](double x) {
    const double x2 = x * x;
    return (64.0 * x2 * x2 * x2 - 480.0 * x2 * x2 + 720.0 * x2 - 120.0) * std::exp(-x2);
  };
  return g;
}

}  // namespace

void ProblemSpec::validate() const {
  int rhs_count = 0;
  if (manufactured) ++rhs_count;
  if (constant_rhs) ++rhs_count;
  if (explicit_rhs) ++rhs_count;
  if (rhs_count != 1) throw std::invalid_argument("ProblemSpec: exactly one RHS required");
  if (!lifting && lifting_id != "none")
    throw std::invalid_argument("ProblemSpec: lifting id without lifting data");
  if (lifting && lifting_id == "none")
    throw std::invalid_argument("ProblemSpec: lifting present requires exterior data");
  if (!lifting && manufactured) {
    // zero exterior: the manufactured solution must vanish outside Omega
    const auto& u = *manufactured;
    using K = PiecewiseFunction::Tail::Kind;
    if (u.left_tail().kind != K::zero || u.right_tail().kind != K::zero ||
        u.breakpoints().front() < 0.0 || u.breakpoints().back() > 1.0)
      throw std::invalid_argument("ProblemSpec: manufactured solution must vanish outside (0,1)");
  }
}

double DiscreteSolution::spline_part(double x) const {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  const int n = spec.n, r = spec.r;
  const double y = std::ldexp(x, n);
  const int cell = std::min(static_cast<int>(y), (1 << n) - 1);
  double sum = 0.0;
  for (int j = std::max(0, cell - r + 1); j <= std::min(spec.dim() - 1, cell); ++j)
    sum += coeffs[static_cast<std::size_t>(j)] * scaling_function(spec, j, x);
  return sum;
}

double DiscreteSolution::operator()(double x) const {
  const double eta = lifting ? (*lifting)(x) : 0.0;
  if (x < 0.0 || x > 1.0) return eta;
  return spline_part(x) + eta;
}

double example1_rhs(const OperatorParams& params, double x) {
  const double beta = params.beta;
  if (params.lambda == 0.0) {
    if (beta == 1.0)
      return (3.0 * x - 0.5 + (3.0 * x * x - 2.0 * x) * std::log((1.0 - x) / x)) / kPi;
    const double c = kernel_constant(params);
    const double pre = -c * gamma_neg(beta) / std::tgamma(4.0 - beta);
    return pre * (2.0 * (3.0 - beta) * std::pow(x, 2.0 - beta) - 6.0 * std::pow(x, 3.0 - beta) +
                  6.0 * std::pow(1.0 - x, 3.0 - beta) -
                  4.0 * (3.0 - beta) * std::pow(1.0 - x, 2.0 - beta) +
                  (3.0 - beta) * (2.0 - beta) * std::pow(1.0 - x, 1.0 - beta));
  }
  static const PiecewiseFunction u = example1_solution();
  return apply_pointwise(params, u, x);
}

double example2_exact(double beta, double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return std::pow(x - x * x, 0.5 * beta) / std::tgamma(1.0 + beta);
}

double lifting_s1(double g0, double g1, double x) { return g0 * (1.0 - x) + g1 * x; }

double lifting_s3(double g0, double dg0, double g1, double dg1, double x) {
  return lifting_s3_poly(g0, dg0, g1, dg1)(x);
}

Poly lifting_s1_poly(double g0, double g1) { return Poly{{g0, g1 - g0}}; }

Poly lifting_s3_poly(double g0, double dg0, double g1, double dg1) {
  return Poly{{g0, dg0, 3.0 * (g1 - g0) - 2.0 * dg0 - dg1, 2.0 * (g0 - g1) + dg0 + dg1}};
}

namespace {

ProblemSpec make_example1(double beta, double lambda) {
  ProblemSpec p{OperatorParams(beta, lambda)};
  p.id = "example1";
  p.manufactured = example1_solution();
  p.exact = [](double x) { return (x > 0.0 && x < 1.0) ? kExample1Poly(x) : 0.0; };
  return p;
}

ProblemSpec make_example2(double beta, double lambda) {
  ProblemSpec p{OperatorParams(beta, lambda)};
  p.id = "example2";
  p.constant_rhs = 1.0;
  if (lambda == 0.0)
    p.exact = [beta](double x) { return example2_exact(beta, x); };
  return p;
}

ProblemSpec make_gauss_exterior(double beta, double lambda) {
  ProblemSpec p{OperatorParams(beta, lambda)};
  p.id = "gauss_exterior";
  auto gauss = [](double x) { return std::exp(-x * x); };
  p.manufactured = PiecewiseFunction(
      {0.0, 1.0}, {Piece{gaussian_piece()}},
      PiecewiseFunction::Tail::make_decaying(gauss),
      PiecewiseFunction::Tail::make_decaying(gauss));
  p.manufactured_fourier = [](double xi) {
    return std::complex<double>(std::sqrt(kPi) * std::exp(-0.25 * xi * xi), 0.0);
  };
  p.fourier_xi_max = 64.0;
  p.lifting = PiecewiseFunction(
      {0.0, 1.0}, {Piece{lifting_s1_poly(1.0, std::exp(-1.0))}},
      PiecewiseFunction::Tail::make_decaying(gauss),
      PiecewiseFunction::Tail::make_decaying(gauss));
  p.lifting_id = "s1";
  p.exact = gauss;
  return p;
}

ProblemSpec make_tent_exterior(double beta, double lambda, const std::string& lifting_id) {
  ProblemSpec p{OperatorParams(beta, lambda)};
  p.id = "tent_exterior";
  const Poly left{{0.0, -2.0}};                      // -2x on [-1/2, 0]
  const Poly right{{-2.0, 2.0}};                     // 2x-2 on [1, 3/2]
  const Poly interior{{0.0, 0.0, 1.0, -2.0, 1.0}};   // (x - x^2)^2
  p.manufactured = PiecewiseFunction({-0.5, 0.0, 1.0, 1.5},
                                     {Piece{left}, Piece{interior}, Piece{right}});
  const std::string lid = lifting_id.empty() ? "s3" : lifting_id;
  Poly eta_interior;
  if (lid == "s3") {
    // g(0)=0, g'(0)=-2, g(1)=0, g'(1)=2  ->  2x(x-1)
    eta_interior = lifting_s3_poly(0.0, -2.0, 0.0, 2.0);
  } else if (lid == "s2") {
    eta_interior = Poly{{0.0}};
  } else {
    throw std::invalid_argument("tent_exterior: lifting must be s2 or s3");
  }
  p.lifting = PiecewiseFunction({-0.5, 0.0, 1.0, 1.5},
                                {Piece{left}, Piece{eta_interior}, Piece{right}});
  p.lifting_id = lid;
  PiecewiseFunction exact = *p.manufactured;
  p.exact = [exact](double x) { return exact(x); };
  return p;
}

}  // namespace

ProblemSpec make_problem(const std::string& id, double beta, double lambda,
                         const std::string& lifting_id) {
  if (id == "example1") return make_example1(beta, lambda);
  if (id == "example2") return make_example2(beta, lambda);
  if (id == "gauss_exterior") return make_gauss_exterior(beta, lambda);
  if (id == "tent_exterior") return make_tent_exterior(beta, lambda, lifting_id);
  throw std::invalid_argument("make_problem: unknown problem id '" + id + "'");
}

void to_json(nlohmann::json& j, const ProblemSpec& p) {
  j = nlohmann::json{{"problem", p.id},
                     {"beta", p.params.beta},
                     {"lambda", p.params.lambda},
                     {"lifting", p.lifting_id}};
  if (p.constant_rhs && p.id == "custom") j["rhs"] = {{"constant", *p.constant_rhs}};
}

ProblemSpec problem_from_json(const nlohmann::json& j) {
  const double beta = j.at("beta").get<double>();
  const double lambda = j.value("lambda", 0.0);
  const std::string id = j.value("problem", "custom");
  if (id != "custom") {
    std::string lifting = j.value("lifting", "");
    ProblemSpec p = make_problem(id, beta, lambda, lifting);
    return p;
  }
  ProblemSpec p{OperatorParams(beta, lambda)};
  if (j.contains("rhs") && j["rhs"].contains("constant")) {
    p.constant_rhs = j["rhs"]["constant"].get<double>();
  } else {
    throw std::invalid_argument("problem_from_json: custom problems support constant rhs only");
  }
  return p;
}

std::pair<DiscreteSolution, SolveReport> solve_problem(const ProblemSpec& prob,
                                                       const BasisSpec& spec,
                                                       const std::string& method, double tol) {
  prob.validate();
  if (spec.r == 1 && prob.params.beta >= 1.0)
    throw std::invalid_argument("solve_problem: r=1 basis requires beta < 1");

  const ToeplitzStiffness a = assemble_first_row(prob.params, spec);
  LoadVector b{spec, {}};
  if (prob.constant_rhs) {
    b = load_constant(*prob.constant_rhs, spec);
  } else if (prob.explicit_rhs) {
    b = load_callable(prob.explicit_rhs, spec);
  } else if (prob.manufactured_fourier) {
    b = load_fourier(prob.params, prob.manufactured_fourier, spec, prob.fourier_xi_max);
  } else {
    b = load_galerkin(prob.params, *prob.manufactured, spec);
  }
  if (prob.lifting) {
    const LoadVector lift = lifting_load(prob.params, *prob.lifting, spec);
    for (std::size_t i = 0; i < b.values.size(); ++i) b.values[i] -= lift.values[i];
  }

  std::vector<double> x;
  SolveReport report;
  if (method == "cg") {
    std::tie(x, report) = cg_solve(plain_operator(a), b.values, tol);
  } else if (method == "pcg") {
    std::tie(x, report) = pcg_solve(a, b.values, tol);
  } else if (method == "dense") {
    std::tie(x, report) = dense_solve(a, b.values);
  } else {
    throw std::invalid_argument("solve_problem: unknown method '" + method + "'");
  }
  return {DiscreteSolution{spec, std::move(x), prob.lifting}, std::move(report)};
}

}  // namespace tfl
