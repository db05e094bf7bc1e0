#pragma once

#include <functional>
#include <optional>
#include <variant>
#include <vector>

namespace tfl {

/// Polynomial c0 + c1 x + c2 x^2 + ... in the global coordinate.
struct Poly {
  std::vector<double> coeffs;

  double operator()(double x) const;
  Poly derivative() const;
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

/// Compose P(a + b*y) and return the coefficients in y.
Poly poly_compose_linear(const Poly& p, double a, double b);

/// Smooth non-polynomial piece.  The even derivatives are only required when
/// the nonlocal operator is evaluated at a point inside this piece.
struct SmoothPiece {
  std::function<double(double)> f;
  std::function<double(double)> d2;
  std::function<double(double)> d4;
  std::function<double(double)> d6;
};

using Piece = std::variant<Poly, SmoothPiece>;

/// A function on the real line given piecewise between breakpoints, with
/// tails that are zero, constant, or decaying callables.  This carries the
/// exact solutions, liftings and exterior data of the experiments in a form
/// the singular-kernel quadrature can integrate against exactly.
class PiecewiseFunction {
 public:
  struct Tail {
    enum class Kind { zero, constant, decaying };
    Kind kind = Kind::zero;
    double value = 0.0;                   // for constant
    std::function<double(double)> f;      // for decaying

    double operator()(double x) const;
    static Tail make_zero() { return {}; }
    static Tail make_constant(double c) { return {Kind::constant, c, nullptr}; }
    static Tail make_decaying(std::function<double(double)> fn) {
      return {Kind::decaying, 0.0, std::move(fn)};
    }
  };

  PiecewiseFunction(std::vector<double> breakpoints, std::vector<Piece> pieces,
                    Tail left = Tail::make_zero(), Tail right = Tail::make_zero());

  double operator()(double x) const;

  const std::vector<double>& breakpoints() const { return breaks_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  const Tail& left_tail() const { return left_; }
  const Tail& right_tail() const { return right_; }

  /// Index of the bounded piece containing x, or nullopt in a tail.
  std::optional<std::size_t> piece_index(double x) const;

  /// Single polynomial piece p on [lo, hi], zero elsewhere.
  static PiecewiseFunction poly_on_interval(Poly p, double lo, double hi);

 private:
  std::vector<double> breaks_;
  std::vector<Piece> pieces_;
  Tail left_, right_;
};

}  // namespace tfl
