#include "chdyn/extended_complex.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "chdyn/error.hpp"

namespace chdyn {

ExtendedComplex::ExtendedComplex(Complex z) {
  if (std::isnan(z.real()) || std::isnan(z.imag())) {
    throw NotANumber("NaN is not a point of the Riemann sphere");
  }
  if (std::isinf(z.real()) || std::isinf(z.imag())) {
    infinite_ = true;
  } else {
    z_ = z;
  }
}

Complex ExtendedComplex::value() const {
  if (infinite_) throw InvalidArgument("point at infinity has no finite value");
  return z_;
}

double ExtendedComplex::abs() const {
  return infinite_ ? std::numeric_limits<double>::infinity() : std::abs(z_);
}

double chordal_distance(const ExtendedComplex& a, const ExtendedComplex& b) {
  if (a.is_infinite() && b.is_infinite()) return 0.0;
  if (a.is_infinite()) return 1.0 / std::sqrt(1.0 + std::norm(b.value()));
  if (b.is_infinite()) return 1.0 / std::sqrt(1.0 + std::norm(a.value()));
  const Complex u = a.value();
  const Complex v = b.value();
  return std::abs(u - v) / (std::sqrt(1.0 + std::norm(u)) * std::sqrt(1.0 + std::norm(v)));
}

double sphere_aware_distance(const ExtendedComplex& a, const ExtendedComplex& b) {
  if (a.is_infinite() && b.is_infinite()) return 0.0;
  if (a.is_infinite() || b.is_infinite()) return std::numeric_limits<double>::infinity();
  return std::abs(a.value() - b.value());
}

std::string to_string(const ExtendedComplex& z) {
  if (z.is_infinite()) return "inf";
  std::ostringstream os;
  os.precision(17);
  // Adding +0.0 turns -0.0 into +0.0 so equal values print alike.
  const Complex v(z.value().real() + 0.0, z.value().imag() + 0.0);
  os << v.real() << (std::signbit(v.imag()) ? "-" : "+") << std::abs(v.imag()) << "i";
  return os.str();
}

}  // namespace chdyn
