#pragma once

#include <string>
#include <vector>

#include "chdyn/extended_complex.hpp"
#include "chdyn/mobius.hpp"
#include "chdyn/polynomial.hpp"

namespace chdyn {

/// Distance from a degenerate parameter below which O, Oc and R refuse to build.
inline constexpr double kDegenerateEps = 1e-8;

enum class MapKind {
  GenericCH,  ///< Chebyshev-Halley iteration on an arbitrary polynomial.
  O,          ///< Chebyshev-Halley on z^n - 1.
  Oc,         ///< Chebyshev-Halley on z^n + c.
  B,          ///< z^3 (z - a) / (1 - a z), the degree-2 family seen from (z+1)/(z-1).
  R,          ///< O seen from 1/(z-1): the root 1 moves to infinity.
  NewtonFn,   ///< Newton's method on z^n - 1.
  Rational,   ///< Any other P/Q, e.g. a conjugate of one of the above.
};

enum class AllowDegenerate : bool { no = false, yes = true };

/// Numerator and denominator whose coefficients are affine in alpha:
/// P = num0 + alpha num1, Q = den0 + alpha den1.
struct AlphaSplit {
  Polynomial num0, num1, den0, den1;
};

/// The closed form of O_{n,alpha}, split by powers of alpha. Integer coefficients.
AlphaSplit o_family_split(int n);
/// Same for R_{n,alpha} = M o O_{n,alpha} o M^{-1} with M(z) = 1/(z-1).
AlphaSplit r_family_split(int n);

/// An immutable rational map, stored as an expanded numerator/denominator pair.
class MapSpec {
 public:
  static MapSpec generic_ch(const Polynomial& g, Complex alpha);
  static MapSpec o_family(int n, Complex alpha, AllowDegenerate allow = AllowDegenerate::no);
  static MapSpec oc_family(int n, Complex alpha, Complex c,
                           AllowDegenerate allow = AllowDegenerate::no);
  static MapSpec blaschke(Complex a);
  static MapSpec r_family(int n, Complex alpha, AllowDegenerate allow = AllowDegenerate::no);
  static MapSpec newton(int n);
  static MapSpec rational(Polynomial num, Polynomial den);

  [[nodiscard]] MapKind kind() const { return kind_; }
  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] Complex alpha() const { return alpha_; }
  [[nodiscard]] Complex c() const { return c_; }
  [[nodiscard]] Complex a() const { return a_; }
  /// The polynomial a GenericCH map iterates on.
  [[nodiscard]] const Polynomial& target_polynomial() const { return g_; }

  [[nodiscard]] const Polynomial& numerator() const { return num_; }
  [[nodiscard]] const Polynomial& denominator() const { return den_; }
  /// Topological degree max(deg P, deg Q).
  [[nodiscard]] int degree() const;
  [[nodiscard]] std::string describe() const;

  /// Image of the point at infinity.
  [[nodiscard]] const ExtendedComplex& value_at_infinity() const { return at_infinity_; }

 private:
  MapSpec(MapKind kind, Polynomial num, Polynomial den);

  friend ExtendedComplex eval(const MapSpec& spec, const ExtendedComplex& z);
  friend MapSpec conjugate(const MapSpec& f, const MobiusMap& m);

  MapKind kind_;
  int n_ = 0;
  Complex alpha_{}, c_{}, a_{};
  Polynomial g_;
  Polynomial num_, den_;
  Polynomial num_rev_, den_rev_;
  ExtendedComplex at_infinity_;
};

/// One Chebyshev-Halley step z - (1 + L/(2(1 - alpha L))) g/g' with L = g g'' / g'^2.
/// Returns infinity where the step has a pole; throws Indeterminate on 0/0.
ExtendedComplex ch_step(const Polynomial& g, Complex alpha, Complex z);

ExtendedComplex eval(const MapSpec& spec, const ExtendedComplex& z);
/// Quotient-rule derivative. Throws PoleAtPoint at a pole.
ExtendedComplex eval_derivative(const MapSpec& spec, Complex z);
ExtendedComplex eval_second_derivative(const MapSpec& spec, Complex z);

/// The critical points not forced by the family's structure.
/// O: the n rotations of the principal root, ordered xi^0, xi^1, ...
/// Oc: the same, carried to the z^n + c chart. B: {c_-, c_+}.
std::vector<Complex> free_critical_points(const MapSpec& spec);

/// The free critical point of O or Oc with the smallest |arg|, i.e. the one
/// nearest the ray through 1.
Complex principal_free_critical_point(const MapSpec& spec);

/// True iff alpha is within kDegenerateEps of 1/2 or (2n-1)/(2n-2).
bool degenerate_check(int n, Complex alpha);

/// e^{2 pi i j / n} for j = 0..n-1.
std::vector<Complex> roots_of_unity(int n);

/// m o f o m^{-1} as a Rational map.
MapSpec conjugate(const MapSpec& f, const MobiusMap& m);

/// The pair (m o f o m^{-1}) for f = p/q of the given topological degree, without trimming.
struct RationalPair {
  Polynomial num, den;
};
RationalPair conjugate_pair(const Polynomial& p, const Polynomial& q, int degree,
                            const MobiusMap& m);

}  // namespace chdyn
