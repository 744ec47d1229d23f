#include "chdyn/maps.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "chdyn/error.hpp"
#include "chdyn/polyroots.hpp"

namespace chdyn {

namespace {

// Evaluation switches to the reciprocal chart outside the unit disk, so Horner
// never sees |z| > 1 and cannot overflow for any stored degree.
constexpr double kPoleRatio = 1e-300;
constexpr double kCommonRootTol = 1e-8;

void require_order(int n) {
  if (n < 2) throw InvalidArgument("family order n must be >= 2, got " + std::to_string(n));
}

std::string fmt_complex(Complex z) { return to_string(ExtendedComplex(z)); }

double max_component(double re, double im) { return std::max(std::abs(re), std::abs(im)); }

// p / q with overflow and near-pole handling; the caller deals with 0/0.
ExtendedComplex divide(Complex p, Complex q) {
  const double mq = max_component(q.real(), q.imag());
  const double mp = max_component(p.real(), p.imag());
  if (mq == 0.0 || mq < kPoleRatio * mp) return ExtendedComplex::infinity();
  const double qr = q.real() / mq;
  const double qi = q.imag() / mq;
  const double den = qr * qr + qi * qi;
  const double re = (p.real() * qr + p.imag() * qi) / den / mq;
  const double im = (p.imag() * qr - p.real() * qi) / den / mq;
  if (!std::isfinite(re) || !std::isfinite(im)) return ExtendedComplex::infinity();
  return Complex(re, im);
}

Complex mul(Complex a, Complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

// Limit of P/Q at a removable 0/0 via the first non-vanishing derivative pair.
ExtendedComplex removable_limit(const Polynomial& num, const Polynomial& den, Complex z) {
  Polynomial p = num;
  Polynomial q = den;
  for (int k = 0; k <= std::max(num.degree(), den.degree()); ++k) {
    const Complex pv = p(z);
    const Complex qv = q(z);
    if (pv != Complex{} || qv != Complex{}) {
      if (qv == Complex{}) return ExtendedComplex::infinity();
      return divide(pv, qv);
    }
    p = p.derivative();
    q = q.derivative();
  }
  throw Indeterminate("numerator and denominator vanish identically");
}

bool has_common_root(const Polynomial& p, const Polynomial& q) {
  const Polynomial& low = p.degree() <= q.degree() ? p : q;
  const Polynomial& high = p.degree() <= q.degree() ? q : p;
  if (low.degree() < 1) return false;
  RootSet roots;
  try {
    roots = find_roots(low);
  } catch (const NonConvergence& e) {
    roots = e.partial();
  }
  for (const Complex& r : roots.roots) {
    if (std::abs(high(r)) <= kCommonRootTol * high.scale_at(r)) return true;
  }
  return false;
}

Polynomial binomial_power(Complex u, Complex v, int k) {
  // (u w + v)^k
  return Polynomial{v, u}.pow(k);
}

}  // namespace

AlphaSplit o_family_split(int n) {
  require_order(n);
  const double nd = n;
  std::vector<Complex> n0(2 * n + 1), n1(2 * n + 1), d0(2 * n), d1(2 * n);
  n0[0] = nd - 1.0;
  n1[0] = -2.0 * (nd - 1.0);
  n0[n] = 2.0 - 4.0 * nd;
  n1[n] = -4.0 + 6.0 * nd - 2.0 * nd * nd;
  n0[2 * n] = (nd - 1.0) * (1.0 - 2.0 * nd);
  n1[2 * n] = (nd - 1.0) * (2.0 * nd - 2.0);
  d1[n - 1] = 2.0 * nd * (1.0 - nd);
  d0[2 * n - 1] = -2.0 * nd * nd;
  d1[2 * n - 1] = 2.0 * nd * (nd - 1.0);
  return {Polynomial(n0), Polynomial(n1), Polynomial(d0), Polynomial(d1)};
}

AlphaSplit r_family_split(int n) {
  const AlphaSplit o = o_family_split(n);
  const MobiusMap m = MobiusMap::one_to_infinity();
  // Conjugation is linear in the coefficient pair, so each alpha-part maps separately.
  RationalPair part0 = conjugate_pair(o.num0, o.den0, 2 * n, m);
  RationalPair part1 = conjugate_pair(o.num1, o.den1, 2 * n, m);
  return {part0.num, part1.num, part0.den, part1.den};
}

RationalPair conjugate_pair(const Polynomial& p, const Polynomial& q, int degree,
                            const MobiusMap& m) {
  // f(z) with z = (A w + B) / (C w + D) = m^{-1}(w), cleared by (C w + D)^degree.
  const MobiusMap inv = m.inverse();
  Polynomial pt, qt;
  for (int k = 0; k <= degree; ++k) {
    const Polynomial term = binomial_power(inv.a(), inv.b(), k) *
                            binomial_power(inv.c(), inv.d(), degree - k);
    pt = pt + p.coefficient(k) * term;
    qt = qt + q.coefficient(k) * term;
  }
  return {m.a() * pt + m.b() * qt, m.c() * pt + m.d() * qt};
}

MapSpec::MapSpec(MapKind kind, Polynomial num, Polynomial den)
    : kind_(kind), num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw InvalidArgument("rational map with zero denominator");
  num_rev_ = num_.reversed();
  den_rev_ = den_.reversed();
  // Reversal drops low-order zeros; keep the degree bookkeeping from the originals.
  const int k = num_.degree() - den_.degree();
  if (num_.is_zero()) {
    at_infinity_ = Complex{};
  } else if (k > 0) {
    at_infinity_ = ExtendedComplex::infinity();
  } else if (k == 0) {
    at_infinity_ = num_.leading() / den_.leading();
  } else {
    at_infinity_ = Complex{};
  }
}

int MapSpec::degree() const { return std::max(num_.degree(), den_.degree()); }

std::string MapSpec::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case MapKind::GenericCH:
      os << "GenericCH(deg=" << g_.degree() << ", alpha=" << fmt_complex(alpha_) << ")";
      break;
    case MapKind::O:
      os << "O(n=" << n_ << ", alpha=" << fmt_complex(alpha_) << ")";
      break;
    case MapKind::Oc:
      os << "Oc(n=" << n_ << ", alpha=" << fmt_complex(alpha_) << ", c=" << fmt_complex(c_)
         << ")";
      break;
    case MapKind::B:
      os << "B(a=" << fmt_complex(a_) << ")";
      break;
    case MapKind::R:
      os << "R(n=" << n_ << ", alpha=" << fmt_complex(alpha_) << ")";
      break;
    case MapKind::NewtonFn:
      os << "NewtonFn(n=" << n_ << ")";
      break;
    case MapKind::Rational:
      os << "Rational(deg=" << degree() << ")";
      break;
  }
  return os.str();
}

MapSpec MapSpec::generic_ch(const Polynomial& g, Complex alpha) {
  if (g.degree() < 1) throw InvalidArgument("Chebyshev-Halley needs a polynomial of degree >= 1");
  const Polynomial g1 = g.derivative();
  const Polynomial g2 = g1.derivative();
  const Polynomial z{0.0, 1.0};
  const Polynomial h = g1 * g1 - alpha * (g * g2);
  Polynomial num = z * g1 * h - g * (g1 * g1 + (0.5 - alpha) * (g * g2));
  Polynomial den = g1 * h;
  const int shared_zero = std::min(num.zero_root_multiplicity(), den.zero_root_multiplicity());
  num = num.shifted_down(shared_zero);
  den = den.shifted_down(shared_zero);
  const Polynomial common = approximate_gcd(num, den);
  if (common.degree() > 0) {
    num = num.divmod(common).quotient;
    den = den.divmod(common).quotient;
  }
  if (has_common_root(num, den)) {
    throw DegenerateParameter("Chebyshev-Halley map has an unresolved common factor");
  }
  MapSpec spec(MapKind::GenericCH, std::move(num), std::move(den));
  spec.alpha_ = alpha;
  spec.g_ = g;
  return spec;
}

MapSpec MapSpec::o_family(int n, Complex alpha, AllowDegenerate allow) {
  require_order(n);
  const bool checked = allow == AllowDegenerate::no;
  if (checked && degenerate_check(n, alpha)) {
    throw DegenerateParameter("alpha=" + fmt_complex(alpha) + " is degenerate for n=" +
                              std::to_string(n));
  }
  const AlphaSplit s = o_family_split(n);
  Polynomial num = s.num0 + alpha * s.num1;
  Polynomial den = s.den0 + alpha * s.den1;
  if (checked) {
    if (std::max(num.degree(), den.degree()) != 2 * n) {
      throw DegenerateParameter("O map drops degree at alpha=" + fmt_complex(alpha));
    }
    // The denominator is 2n z^{n-1} (e4 + e5 z^n). At the roots of e4 + e5 z^n the
    // numerator equals n^2 (n-1) / e5^2 exactly, so only z = 0 can be shared.
    const Complex p0 = num.coefficient(0);
    if (std::abs(p0) <= kCommonRootTol * (n - 1.0) * (1.0 + 2.0 * std::abs(alpha))) {
      throw DegenerateParameter("numerator and denominator of O share the root 0");
    }
  }
  MapSpec spec(MapKind::O, std::move(num), std::move(den));
  spec.n_ = n;
  spec.alpha_ = alpha;
  return spec;
}

MapSpec MapSpec::oc_family(int n, Complex alpha, Complex c, AllowDegenerate allow) {
  if (c == Complex{}) throw InvalidArgument("Oc needs c != 0");
  const MapSpec o = o_family(n, alpha, allow);
  // eta_c sends the roots of z^n + c to the roots of unity; its inverse carries O back.
  const MobiusMap to_roots = MobiusMap::eta(n, c).inverse();
  RationalPair pair = conjugate_pair(o.num_, o.den_, o.degree(), to_roots);
  MapSpec spec(MapKind::Oc, std::move(pair.num), std::move(pair.den));
  spec.n_ = n;
  spec.alpha_ = alpha;
  spec.c_ = c;
  return spec;
}

MapSpec MapSpec::blaschke(Complex a) {
  if (std::abs(a * a - 1.0) <= kDegenerateEps) {
    throw DegenerateParameter("B_a with a^2 = 1 collapses to a constant");
  }
  MapSpec spec(MapKind::B, Polynomial{0.0, 0.0, 0.0, -a, 1.0}, Polynomial{1.0, -a});
  spec.a_ = a;
  return spec;
}

MapSpec MapSpec::r_family(int n, Complex alpha, AllowDegenerate allow) {
  require_order(n);
  const bool checked = allow == AllowDegenerate::no;
  if (checked) (void)o_family(n, alpha);  // same validity conditions as O
  const AlphaSplit s = r_family_split(n);
  Polynomial num = s.num0 + alpha * s.num1;
  Polynomial den = s.den0 + alpha * s.den1;
  if (checked && (num.degree() != 2 * n || den.degree() != 2 * n - 3)) {
    throw DegenerateParameter("R map has unexpected degrees at alpha=" + fmt_complex(alpha));
  }
  MapSpec spec(MapKind::R, std::move(num), std::move(den));
  spec.n_ = n;
  spec.alpha_ = alpha;
  return spec;
}

MapSpec MapSpec::newton(int n) {
  require_order(n);
  MapSpec spec(MapKind::NewtonFn, Polynomial::monomial(n - 1.0, n) + Polynomial{1.0},
               Polynomial::monomial(static_cast<double>(n), n - 1));
  spec.n_ = n;
  return spec;
}

MapSpec MapSpec::rational(Polynomial num, Polynomial den) {
  if (has_common_root(num, den)) {
    throw DegenerateParameter("numerator and denominator share a root");
  }
  return {MapKind::Rational, std::move(num), std::move(den)};
}

MapSpec conjugate(const MapSpec& f, const MobiusMap& m) {
  RationalPair pair = conjugate_pair(f.numerator(), f.denominator(), f.degree(), m);
  constexpr double kTrim = 1e-13;
  // Coprimality survives conjugation; only cancelled leading terms need trimming.
  return MapSpec(MapKind::Rational, pair.num.trimmed(kTrim), pair.den.trimmed(kTrim));
}

ExtendedComplex ch_step(const Polynomial& g, Complex alpha, Complex z) {
  if (g.degree() < 1) throw InvalidArgument("ch_step needs a polynomial of degree >= 1");
  const auto [g0, g1, g2] = g.jet(z);
  if (g0 == Complex{}) return z;
  const Complex top = g0 * (g1 * g1 + (0.5 - alpha) * g0 * g2);
  const Complex bottom = g1 * (g1 * g1 - alpha * g0 * g2);
  if (bottom == Complex{}) {
    if (top == Complex{}) throw Indeterminate("0/0 in Chebyshev-Halley step");
    return ExtendedComplex::infinity();
  }
  const ExtendedComplex q = divide(top, bottom);
  if (q.is_infinite()) return q;
  return z - q.value();
}

ExtendedComplex eval(const MapSpec& spec, const ExtendedComplex& z) {
  if (z.is_infinite()) return spec.at_infinity_;
  const Complex v = z.value();
  if (std::norm(v) <= 1.0) {
    const Complex p = spec.num_(v);
    const Complex q = spec.den_(v);
    if (p == Complex{} && q == Complex{}) return removable_limit(spec.num_, spec.den_, v);
    return divide(p, q);
  }
  const Complex w = 1.0 / v;
  const Complex p = spec.num_rev_(w);
  const Complex q = spec.den_rev_(w);
  if (p == Complex{} && q == Complex{}) return removable_limit(spec.num_, spec.den_, v);
  const ExtendedComplex ratio = divide(p, q);
  if (ratio.is_infinite()) return ratio;
  Complex r = ratio.value();
  if (r == Complex{}) return Complex{};
  const int k = spec.num_.degree() - spec.den_.degree();
  if (k == 0) return r;
  const double magnitude = std::pow(std::abs(v), k) * std::abs(r);
  if (!(magnitude < 1e300)) return ExtendedComplex::infinity();
  const Complex factor = k > 0 ? v : w;
  for (int i = 0; i < std::abs(k); ++i) r = mul(r, factor);
  return r;
}

ExtendedComplex eval_derivative(const MapSpec& spec, Complex z) {
  const auto [p, p1, p2] = spec.numerator().jet(z);
  const auto [q, q1, q2] = spec.denominator().jet(z);
  (void)p2;
  (void)q2;
  if (q == Complex{}) throw PoleAtPoint("derivative requested at a pole: " + fmt_complex(z));
  return divide(p1 * q - p * q1, q * q);
}

ExtendedComplex eval_second_derivative(const MapSpec& spec, Complex z) {
  const auto [p, p1, p2] = spec.numerator().jet(z);
  const auto [q, q1, q2] = spec.denominator().jet(z);
  if (q == Complex{}) throw PoleAtPoint("second derivative requested at a pole");
  const Complex first = p1 * q - p * q1;
  return divide((p2 * q - p * q2) * q - 2.0 * q1 * first, q * q * q);
}

std::vector<Complex> free_critical_points(const MapSpec& spec) {
  switch (spec.kind()) {
    case MapKind::O:
    case MapKind::Oc: {
      const int n = spec.n();
      const Complex alpha = spec.alpha();
      const double nd = n;
      const Complex top = alpha * (nd - 1.0) * (nd - 1.0) * (2.0 * alpha - 1.0);
      const Complex bottom = nd * (2.0 * nd - 1.0) - alpha * (4.0 * nd - 1.0) * (nd - 1.0) +
                             2.0 * alpha * alpha * (nd - 1.0) * (nd - 1.0);
      const double bottom_scale = nd * (2.0 * nd - 1.0) +
                                  std::abs(alpha) * (4.0 * nd - 1.0) * (nd - 1.0) +
                                  2.0 * std::norm(alpha) * (nd - 1.0) * (nd - 1.0);
      if (std::abs(bottom) <= 1e-14 * bottom_scale) {
        throw DegenerateCriticalPoints("critical point formula has a vanishing denominator");
      }
      Complex base = principal_root(top / bottom, n);
      if (spec.kind() == MapKind::Oc) base *= principal_root(-spec.c(), n);
      std::vector<Complex> out;
      for (const Complex& xi : roots_of_unity(n)) out.push_back(xi * base);
      return out;
    }
    case MapKind::B: {
      const Complex a = spec.a();
      if (a == Complex{}) throw DegenerateCriticalPoints("B_0 has no free critical points");
      const Complex root = std::sqrt((a * a - 4.0) * (a * a - 1.0));
      // c_- c_+ = 1; take the larger one from the formula and the other by division.
      const Complex b = 2.0 + a * a;
      if (std::abs(b + root) >= std::abs(b - root)) {
        const Complex plus = (b + root) / (3.0 * a);
        return {1.0 / plus, plus};
      }
      const Complex minus = (b - root) / (3.0 * a);
      return {minus, 1.0 / minus};
    }
    default:
      throw InvalidArgument("free critical points are defined for O, Oc and B only");
  }
}

Complex principal_free_critical_point(const MapSpec& spec) {
  const std::vector<Complex> points = free_critical_points(spec);
  return *std::min_element(points.begin(), points.end(), [](Complex a, Complex b) {
    return std::abs(std::arg(a)) < std::abs(std::arg(b));
  });
}

bool degenerate_check(int n, Complex alpha) {
  require_order(n);
  const double second = (2.0 * n - 1.0) / (2.0 * n - 2.0);
  return std::abs(alpha - 0.5) < kDegenerateEps || std::abs(alpha - second) < kDegenerateEps;
}

std::vector<Complex> roots_of_unity(int n) {
  if (n < 1) throw InvalidArgument("roots of unity need n >= 1");
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(n));
  out.emplace_back(1.0, 0.0);
  for (int j = 1; j < n; ++j) out.push_back(std::polar(1.0, 2.0 * std::numbers::pi * j / n));
  return out;
}

}  // namespace chdyn
