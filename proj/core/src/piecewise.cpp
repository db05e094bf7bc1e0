#include "tfl/piecewise.hpp"

#include <algorithm>
#include <stdexcept>

namespace tfl {

double Poly::operator()(double x) const {
  double out = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) out = out * x + *it;
  return out;
}

Poly Poly::derivative() const {
  if (coeffs.size() <= 1) return Poly{{0.0}};
  Poly d;
  d.coeffs.resize(coeffs.size() - 1);
  for (std::size_t k = 1; k < coeffs.size(); ++k)
    d.coeffs[k - 1] = static_cast<double>(k) * coeffs[k];
  return d;
}

Poly poly_compose_linear(const Poly& p, double a, double b) {
  Poly out{{0.0}};
  auto mul_linear_add = [&](double c) {
    // out = out*(a + b y) + c
    std::vector<double> next(out.coeffs.size() + 1, 0.0);
    for (std::size_t k = 0; k < out.coeffs.size(); ++k) {
      next[k] += a * out.coeffs[k];
      next[k + 1] += b * out.coeffs[k];
    }
    next[0] += c;
    out.coeffs = std::move(next);
  };
  for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) mul_linear_add(*it);
  while (out.coeffs.size() > 1 && out.coeffs.back() == 0.0) out.coeffs.pop_back();
  return out;
}

double PiecewiseFunction::Tail::operator()(double x) const {
  switch (kind) {
    case Kind::zero: return 0.0;
    case Kind::constant: return value;
    case Kind::decaying: return f(x);
  }
  return 0.0;
}

PiecewiseFunction::PiecewiseFunction(std::vector<double> breakpoints, std::vector<Piece> pieces,
                                     Tail left, Tail right)
    : breaks_(std::move(breakpoints)), pieces_(std::move(pieces)),
      left_(std::move(left)), right_(std::move(right)) {
  if (breaks_.size() < 2 || pieces_.size() != breaks_.size() - 1)
    throw std::invalid_argument("PiecewiseFunction: need k+1 breakpoints for k pieces");
  if (!std::is_sorted(breaks_.begin(), breaks_.end()))
    throw std::invalid_argument("PiecewiseFunction: breakpoints must be sorted");
}

std::optional<std::size_t> PiecewiseFunction::piece_index(double x) const {
  if (x < breaks_.front() || x > breaks_.back()) return std::nullopt;
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
  std::size_t idx = static_cast<std::size_t>(std::distance(breaks_.begin(), it));
  if (idx == 0) idx = 1;
  if (idx > pieces_.size()) idx = pieces_.size();
  return idx - 1;
}

double PiecewiseFunction::operator()(double x) const {
  if (x < breaks_.front()) return left_(x);
  if (x > breaks_.back()) return right_(x);
  const auto idx = piece_index(x);
  const Piece& piece = pieces_[*idx];
  if (std::holds_alternative<Poly>(piece)) return std::get<Poly>(piece)(x);
  return std::get<SmoothPiece>(piece).f(x);
}

PiecewiseFunction PiecewiseFunction::poly_on_interval(Poly p, double lo, double hi) {
  return PiecewiseFunction({lo, hi}, {Piece{std::move(p)}});
}

}  // namespace tfl
