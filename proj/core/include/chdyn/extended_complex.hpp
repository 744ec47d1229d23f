#pragma once

#include <complex>
#include <string>

namespace chdyn {

using Complex = std::complex<double>;

/// A point of the Riemann sphere: a finite complex number or the point at infinity.
///
/// Finite values never hold NaN. Constructing from a value with an infinite
/// component yields the point at infinity (overflow is a legitimate way of
/// reaching it); constructing from NaN throws NotANumber.
class ExtendedComplex {
 public:
  constexpr ExtendedComplex() = default;
  ExtendedComplex(Complex z);  // NOLINT(google-explicit-constructor)
  ExtendedComplex(double re) : ExtendedComplex(Complex(re, 0.0)) {}  // NOLINT

  static constexpr ExtendedComplex infinity() {
    ExtendedComplex p;
    p.infinite_ = true;
    return p;
  }

  [[nodiscard]] constexpr bool is_infinite() const { return infinite_; }
  [[nodiscard]] constexpr bool is_finite() const { return !infinite_; }

  /// The finite value. Throws InvalidArgument at infinity.
  [[nodiscard]] Complex value() const;

  /// |z|, or +inf at infinity.
  [[nodiscard]] double abs() const;

  friend bool operator==(const ExtendedComplex& a, const ExtendedComplex& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ && b.infinite_;
    return a.z_ == b.z_;
  }

 private:
  Complex z_{};
  bool infinite_ = false;
};

/// Chordal distance on the sphere, in [0, 1].
double chordal_distance(const ExtendedComplex& a, const ExtendedComplex& b);

/// Euclidean distance, +inf if exactly one argument is infinite, 0 if both are.
double sphere_aware_distance(const ExtendedComplex& a, const ExtendedComplex& b);

std::string to_string(const ExtendedComplex& z);

}  // namespace chdyn
