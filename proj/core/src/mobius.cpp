#include "chdyn/mobius.hpp"

#include <cmath>
#include <numbers>

#include "chdyn/error.hpp"

namespace chdyn {

MobiusMap::MobiusMap(Complex a, Complex b, Complex c, Complex d) : a_(a), b_(b), c_(c), d_(d) {
  if (!(std::abs(a * d - b * c) > kMobiusEps)) {
    throw InvalidArgument("Mobius map with vanishing determinant");
  }
}

MobiusMap MobiusMap::eta(int n, Complex c) {
  if (n < 1) throw InvalidArgument("eta needs n >= 1");
  if (c == Complex{}) throw InvalidArgument("eta needs c != 0");
  return scaling(1.0 / principal_root(-c, n));
}

ExtendedComplex MobiusMap::operator()(const ExtendedComplex& z) const {
  if (z.is_infinite()) {
    if (c_ == Complex{}) return ExtendedComplex::infinity();
    return a_ / c_;
  }
  const Complex w = z.value();
  const Complex den = c_ * w + d_;
  if (den == Complex{}) return ExtendedComplex::infinity();
  return (a_ * w + b_) / den;
}

MobiusMap MobiusMap::compose(const MobiusMap& o) const {
  return {a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_, c_ * o.a_ + d_ * o.c_,
          c_ * o.b_ + d_ * o.d_};
}

Complex principal_root(Complex w, int n) {
  if (n < 1) throw InvalidArgument("root order must be positive");
  if (w == Complex{}) return {};
  const double r = std::pow(std::abs(w), 1.0 / n);
  // std::arg lies in (-pi, pi]; -0.0 imaginary parts would give -pi.
  double theta = std::arg(w);
  if (theta == -std::numbers::pi) theta = std::numbers::pi;
  return std::polar(r, theta / n);
}

}  // namespace chdyn
