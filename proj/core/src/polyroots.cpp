#include "chdyn/polyroots.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>
#include <numeric>

namespace chdyn {

namespace {

constexpr double kSnapRadius = 1e-3;
constexpr double kSnapDerivativeTol = 1e-7;
constexpr double kStartAngle = 0.4;
constexpr int kRefineSteps = 30;

bool lex_less(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

double cauchy_bound(const Polynomial& p) {
  const double lead = std::abs(p.leading());
  double m = 0.0;
  for (int k = 0; k < p.degree(); ++k) m = std::max(m, std::abs(p.coefficient(k)) / lead);
  return 1.0 + m;
}

double lower_radius(const Polynomial& p) {
  // Reciprocal of the Cauchy bound for the reversed polynomial: all roots lie outside it.
  return 1.0 / cauchy_bound(p.reversed());
}

bool is_converged(const Polynomial& p, Complex z, double tol) {
  return std::abs(p(z)) <= tol * p.scale_at(z);
}

std::vector<Complex> aberth(const Polynomial& p, const RootFinderOptions& options,
                            std::vector<bool>& done) {
  const int d = p.degree();
  const double outer = cauchy_bound(p);
  const double inner = lower_radius(p);
  // Geometric middle of the annulus that contains every root.
  const double radius = std::sqrt(outer * inner);
  std::vector<Complex> z(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    z[static_cast<std::size_t>(k)] =
        std::polar(radius, 2.0 * std::numbers::pi * k / d + kStartAngle);
  }
  done.assign(z.size(), false);
  for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
    bool all = true;
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (done[i]) continue;
      const auto [v, v1, v2] = p.jet(z[i]);
      (void)v2;
      if (v == Complex{} || std::abs(v) <= options.tol * p.scale_at(z[i])) {
        done[i] = true;
        continue;
      }
      all = false;
      Complex repulsion{};
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (j == i) continue;
        const Complex diff = z[i] - z[j];
        if (diff != Complex{}) repulsion += 1.0 / diff;
      }
      const Complex denom = v1 / v - repulsion;
      if (denom == Complex{} || !std::isfinite(std::abs(denom))) {
        z[i] *= Complex(1.0 + 1e-8, 1e-8);
        continue;
      }
      const Complex next = z[i] - 1.0 / denom;
      if (std::isfinite(next.real()) && std::isfinite(next.imag())) z[i] = next;
    }
    if (all) break;
  }
  for (std::size_t i = 0; i < z.size(); ++i) done[i] = done[i] || is_converged(p, z[i], options.tol);
  return z;
}

// An m-fold root of p is a simple root of p^(m-1); Newton there converges quadratically.
Complex refine_multiple(const Polynomial& p, Complex z, int m) {
  Polynomial f = p;
  for (int k = 1; k < m; ++k) f = f.derivative();
  const Polynomial df = f.derivative();
  for (int step = 0; step < kRefineSteps; ++step) {
    const Complex slope = df(z);
    if (slope == Complex{}) break;
    const Complex delta = f(z) / slope;
    if (!std::isfinite(delta.real()) || !std::isfinite(delta.imag())) break;
    z -= delta;
    if (std::abs(delta) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(z)) break;
  }
  return z;
}

// Replaces each tight group of approximants that behaves like a multiple root by its mean.
void snap_clusters(const Polynomial& p, std::vector<Complex>& z) {
  const std::size_t count = z.size();
  std::vector<std::size_t> parent(count);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      const double r = kSnapRadius * (1.0 + std::max(std::abs(z[i]), std::abs(z[j])));
      if (std::abs(z[i] - z[j]) <= r) parent[find(i)] = find(j);
    }
  }
  std::vector<std::vector<std::size_t>> groups(count);
  for (std::size_t i = 0; i < count; ++i) groups[find(i)].push_back(i);
  for (const auto& g : groups) {
    if (g.size() < 2) continue;
    Complex mean{};
    for (std::size_t i : g) mean += z[i];
    mean /= static_cast<double>(g.size());
    mean = refine_multiple(p, mean, static_cast<int>(g.size()));
    Polynomial q = p;
    bool multiple = true;
    for (std::size_t j = 0; j < g.size() && multiple; ++j) {
      multiple = std::abs(q(mean)) <= kSnapDerivativeTol * q.scale_at(mean);
      q = q.derivative();
    }
    if (!multiple) continue;
    for (std::size_t i : g) z[i] = mean;
  }
}

bool is_real(const Polynomial& p) {
  const auto c = p.coefficients();
  return std::all_of(c.begin(), c.end(), [](Complex x) { return x.imag() == 0.0; });
}

// Roots of a real polynomial come in conjugate pairs, so an isolated root with a
// negligible imaginary part is real.
void snap_to_real_axis(const Polynomial& p, std::vector<Complex>& z, double tol) {
  constexpr double kRealTol = 1e-12;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i].imag() == 0.0 || std::abs(z[i].imag()) > kRealTol * (1.0 + std::abs(z[i]))) continue;
    const Complex projected(z[i].real(), 0.0);
    bool isolated = true;
    for (std::size_t j = 0; j < z.size() && isolated; ++j) {
      isolated = j == i || z[j] == z[i] ||
                 std::abs(z[j] - z[i]) > kSnapRadius * (1.0 + std::abs(z[i]));
    }
    const bool repeated = std::count(z.begin(), z.end(), z[i]) > 1;
    if ((isolated || repeated) && is_converged(p, projected, tol)) {
      const Complex old = z[i];
      for (Complex& r : z) {
        if (r == old) r = projected;
      }
    }
  }
}

}  // namespace

bool RootSet::all_converged() const {
  return std::all_of(converged.begin(), converged.end(), [](bool b) { return b; });
}

std::vector<RootSet::Cluster> RootSet::clusters(double tol) const {
  std::vector<Cluster> out;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const Cluster& c) { return std::abs(c.center - roots[i]) <= tol; });
    if (it == out.end()) {
      out.push_back({roots[i], 1, residuals[i]});
    } else {
      ++it->multiplicity;
      it->residual = std::max(it->residual, residuals[i]);
    }
  }
  return out;
}

int RootSet::multiplicity_near(Complex z, double tol) const {
  int best = 0;
  double best_distance = tol;
  for (const Cluster& c : clusters(tol)) {
    const double d = std::abs(c.center - z);
    if (d <= best_distance) {
      best = c.multiplicity;
      best_distance = d;
    }
  }
  return best;
}

RootSet find_roots(const Polynomial& p, const RootFinderOptions& options) {
  if (p.is_zero()) throw InvalidArgument("the zero polynomial has no isolated roots");
  const int zeros = p.zero_root_multiplicity();
  const Polynomial q = p.shifted_down(zeros);
  std::vector<Complex> roots(static_cast<std::size_t>(zeros), Complex{});
  std::vector<bool> done(roots.size(), true);
  if (q.degree() == 1) {
    roots.push_back(-q.coefficient(0) / q.coefficient(1));
    done.push_back(true);
  } else if (q.degree() > 1) {
    std::vector<bool> found;
    std::vector<Complex> z = aberth(q, options, found);
    snap_clusters(q, z);
    if (is_real(q)) snap_to_real_axis(q, z, options.tol);
    for (std::size_t i = 0; i < z.size(); ++i) {
      roots.push_back(z[i]);
      done.push_back(found[i] || is_converged(q, z[i], options.tol));
    }
  }
  std::vector<std::size_t> order(roots.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return lex_less(roots[a], roots[b]); });
  RootSet out;
  for (std::size_t i : order) {
    out.roots.push_back(roots[i]);
    out.residuals.push_back(std::abs(p(roots[i])));
    out.converged.push_back(done[i]);
  }
  if (!out.all_converged()) {
    throw NonConvergence("root finder did not converge in " + std::to_string(options.max_sweeps) +
                             " sweeps",
                         std::move(out));
  }
  return out;
}

Polynomial preimage_polynomial(const MapSpec& spec, const ExtendedComplex& w) {
  if (w.is_infinite()) return spec.denominator();
  return spec.numerator() - w.value() * spec.denominator();
}

RootSet preimages(const MapSpec& spec, const ExtendedComplex& w,
                  const RootFinderOptions& options) {
  return find_roots(preimage_polynomial(spec, w), options);
}

Polynomial deflate(const Polynomial& p, Complex root, int multiplicity, double tol) {
  if (multiplicity < 0) throw InvalidArgument("negative deflation multiplicity");
  Polynomial q = p;
  for (int m = 0; m < multiplicity; ++m) {
    if (q.degree() < 1 || std::abs(q(root)) > tol * q.scale_at(root)) {
      throw RootNotPresent("root " + to_string(ExtendedComplex(root)) +
                           " not present with multiplicity " + std::to_string(multiplicity));
    }
    const auto c = q.coefficients();
    std::vector<Complex> out(c.size() - 1);
    Complex carry{};
    for (std::size_t k = c.size() - 1; k-- > 0;) {
      carry = c[k + 1] + carry * root;
      out[k] = carry;
    }
    q = Polynomial(std::move(out));
  }
  return q;
}

}  // namespace chdyn
