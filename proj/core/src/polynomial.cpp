#include "chdyn/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "chdyn/error.hpp"

namespace chdyn {

namespace {

void trim_exact(std::vector<Complex>& c) {
  while (c.size() > 1 && c.back() == Complex{}) c.pop_back();
  if (c.empty()) c.emplace_back();
}

}  // namespace

Polynomial::Polynomial(std::vector<Complex> ascending) : coeffs_(std::move(ascending)) {
  for (const Complex& c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw InvalidArgument("polynomial coefficients must be finite");
    }
  }
  trim_exact(coeffs_);
}

Polynomial Polynomial::monomial(Complex coefficient, int power) {
  if (power < 0) throw InvalidArgument("negative monomial power");
  std::vector<Complex> c(static_cast<std::size_t>(power) + 1);
  c.back() = coefficient;
  return Polynomial(std::move(c));
}

Polynomial Polynomial::from_roots(std::span<const Complex> roots) {
  std::vector<Complex> c{Complex{1.0}};
  for (const Complex& r : roots) {
    std::vector<Complex> next(c.size() + 1);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = std::move(next);
  }
  return Polynomial(std::move(c));
}

Complex Polynomial::coefficient(int k) const {
  if (k < 0 || k > degree()) return {};
  return coeffs_[static_cast<std::size_t>(k)];
}

Complex Polynomial::operator()(Complex z) const {
  // Real arithmetic: avoids the NaN-recovery path of std::complex multiply.
  const double zr = z.real();
  const double zi = z.imag();
  double pr = 0.0;
  double pi = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    const double tr = pr * zr - pi * zi + it->real();
    const double ti = pr * zi + pi * zr + it->imag();
    pr = tr;
    pi = ti;
  }
  return {pr, pi};
}

Polynomial::Jet Polynomial::jet(Complex z) const {
  Complex p = 0.0;
  Complex d1 = 0.0;
  Complex d2 = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    d2 = d2 * z + 2.0 * d1;
    d1 = d1 * z + p;
    p = p * z + *it;
  }
  return {p, d1, d2};
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Complex> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) {
    d[k - 1] = coeffs_[k] * static_cast<double>(k);
  }
  return Polynomial(std::move(d));
}

Polynomial Polynomial::reversed() const {
  std::vector<Complex> r(coeffs_.rbegin(), coeffs_.rend());
  return Polynomial(std::move(r));
}

Polynomial Polynomial::trimmed(double rel_tol) const {
  const double cutoff = rel_tol * max_abs_coefficient();
  std::vector<Complex> c = coeffs_;
  while (c.size() > 1 && std::abs(c.back()) <= cutoff) c.pop_back();
  return Polynomial(std::move(c));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) throw InvalidArgument("zero polynomial has no monic form");
  return (1.0 / leading()) * *this;
}

double Polynomial::max_abs_coefficient() const {
  double m = 0.0;
  for (const Complex& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double Polynomial::scale_at(Complex z) const {
  const double r = std::abs(z);
  double s = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) s = s * r + std::abs(*it);
  return s;
}

int Polynomial::zero_root_multiplicity() const {
  if (is_zero()) return 0;
  int k = 0;
  while (coeffs_[static_cast<std::size_t>(k)] == Complex{}) ++k;
  return k;
}

Polynomial Polynomial::shifted_down(int k) const {
  if (k < 0 || k > zero_root_multiplicity()) {
    throw InvalidArgument("cannot divide by a power of z that is not a factor");
  }
  return Polynomial(std::vector<Complex>(coeffs_.begin() + k, coeffs_.end()));
}

Polynomial Polynomial::pow(int exponent) const {
  if (exponent < 0) throw InvalidArgument("negative polynomial power");
  Polynomial result{Complex{1.0}};
  for (int i = 0; i < exponent; ++i) result = result * *this;
  return result;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Complex> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) c[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) c[k] += b.coeffs_[k];
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  return a + Complex(-1.0) * b;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  std::vector<Complex> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(c));
}

Polynomial operator*(Complex s, const Polynomial& p) {
  std::vector<Complex> c = p.coeffs_;
  for (Complex& x : c) x *= s;
  return Polynomial(std::move(c));
}

Polynomial::DivMod Polynomial::divmod(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw InvalidArgument("polynomial division by zero");
  const int dn = divisor.degree();
  if (degree() < dn) return {Polynomial{}, *this};
  std::vector<Complex> rem = coeffs_;
  std::vector<Complex> quot(static_cast<std::size_t>(degree() - dn) + 1);
  const Complex lead = divisor.leading();
  for (int k = degree() - dn; k >= 0; --k) {
    const Complex q = rem[static_cast<std::size_t>(k + dn)] / lead;
    quot[static_cast<std::size_t>(k)] = q;
    for (int j = 0; j <= dn; ++j) {
      rem[static_cast<std::size_t>(k + j)] -= q * divisor.coeffs_[static_cast<std::size_t>(j)];
    }
    rem[static_cast<std::size_t>(k + dn)] = Complex{};
  }
  rem.resize(static_cast<std::size_t>(std::max(dn, 1)));
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial approximate_gcd(const Polynomial& a, const Polynomial& b, double rel_tol) {
  Polynomial x = a.degree() >= b.degree() ? a : b;
  Polynomial y = a.degree() >= b.degree() ? b : a;
  if (x.is_zero()) throw InvalidArgument("gcd of two zero polynomials");
  while (!y.is_zero()) {
    const double scale = x.max_abs_coefficient() / std::abs(x.leading());
    Polynomial r = x.monic().divmod(y.monic()).remainder;
    if (r.max_abs_coefficient() <= rel_tol * scale) r = Polynomial{};
    x = std::move(y);
    y = r.is_zero() ? r : r.trimmed(rel_tol);
  }
  return x.monic();
}

}  // namespace chdyn
