#pragma once

#include "chdyn/extended_complex.hpp"

namespace chdyn {

inline constexpr double kMobiusEps = 1e-12;

/// z -> (a z + b) / (c z + d) acting on the Riemann sphere, with |ad - bc| > kMobiusEps.
class MobiusMap {
 public:
  MobiusMap(Complex a, Complex b, Complex c, Complex d);

  static MobiusMap identity() { return {1.0, 0.0, 0.0, 1.0}; }
  /// 1 / (z - 1): sends 1 to infinity and infinity to 0.
  static MobiusMap one_to_infinity() { return {0.0, 1.0, 1.0, -1.0}; }
  /// (z + 1) / (z - 1): sends 1 to infinity and -1 to 0.
  static MobiusMap plus_minus_one() { return {1.0, 1.0, 1.0, -1.0}; }
  /// 1 / z.
  static MobiusMap reciprocal() { return {0.0, 1.0, 1.0, 0.0}; }
  static MobiusMap scaling(Complex k) { return {k, 0.0, 0.0, 1.0}; }
  /// z -> xi z.
  static MobiusMap rotation(Complex xi) { return scaling(xi); }
  /// z / (-c)^(1/n), principal branch; sends the roots of z^n + c to the n-th roots of unity.
  static MobiusMap eta(int n, Complex c);

  ExtendedComplex operator()(const ExtendedComplex& z) const;

  [[nodiscard]] MobiusMap inverse() const { return {d_, -b_, -c_, a_}; }
  /// (this o other)(z) = this(other(z)).
  [[nodiscard]] MobiusMap compose(const MobiusMap& other) const;

  [[nodiscard]] Complex a() const { return a_; }
  [[nodiscard]] Complex b() const { return b_; }
  [[nodiscard]] Complex c() const { return c_; }
  [[nodiscard]] Complex d() const { return d_; }

 private:
  Complex a_, b_, c_, d_;
};

/// Principal n-th root: argument in (-pi/n, pi/n].
Complex principal_root(Complex w, int n);

}  // namespace chdyn
