#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

#include "chdyn/extended_complex.hpp"

namespace chdyn {

/// Dense polynomial with complex coefficients in ascending degree.
///
/// Trailing (highest-degree) exact zeros are trimmed on construction, so the
/// leading coefficient is nonzero unless the polynomial is identically zero.
/// The zero polynomial has degree 0.
class Polynomial {
 public:
  Polynomial() : coeffs_{Complex{}} {}
  explicit Polynomial(std::vector<Complex> ascending);
  Polynomial(std::initializer_list<Complex> ascending)
      : Polynomial(std::vector<Complex>(ascending)) {}

  static Polynomial monomial(Complex coefficient, int power);
  /// prod (z - r_i), monic.
  static Polynomial from_roots(std::span<const Complex> roots);

  [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  [[nodiscard]] bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == Complex{}; }
  [[nodiscard]] std::span<const Complex> coefficients() const { return coeffs_; }
  /// Coefficient of z^k; zero beyond the degree.
  [[nodiscard]] Complex coefficient(int k) const;
  [[nodiscard]] Complex leading() const { return coeffs_.back(); }

  /// Horner evaluation.
  [[nodiscard]] Complex operator()(Complex z) const;

  /// Value together with the first and second derivatives.
  struct Jet {
    Complex value, first, second;
  };
  [[nodiscard]] Jet jet(Complex z) const;

  [[nodiscard]] Polynomial derivative() const;
  /// z^d p(1/z) for d = degree().
  [[nodiscard]] Polynomial reversed() const;
  /// Drops leading coefficients with |c| <= rel_tol * max|c_k|.
  [[nodiscard]] Polynomial trimmed(double rel_tol) const;
  [[nodiscard]] Polynomial monic() const;

  [[nodiscard]] double max_abs_coefficient() const;
  /// sum_k |c_k| |z|^k, the natural scale of rounding error in p(z).
  [[nodiscard]] double scale_at(Complex z) const;
  /// Number of exact zero coefficients at the low end (multiplicity of the root z = 0).
  [[nodiscard]] int zero_root_multiplicity() const;
  /// p(z) / z^k for k <= zero_root_multiplicity().
  [[nodiscard]] Polynomial shifted_down(int k) const;

  [[nodiscard]] Polynomial pow(int exponent) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Complex s, const Polynomial& p);
  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

  struct DivMod;
  /// Euclidean division. Throws InvalidArgument on division by zero.
  [[nodiscard]] DivMod divmod(const Polynomial& divisor) const;

 private:
  std::vector<Complex> coeffs_;
};

struct Polynomial::DivMod {
  Polynomial quotient;
  Polynomial remainder;
};

/// Numerical monic gcd by the Euclidean algorithm; remainders whose
/// coefficients are all below rel_tol times the dividend scale count as zero.
Polynomial approximate_gcd(const Polynomial& a, const Polynomial& b, double rel_tol = 1e-9);

}  // namespace chdyn
