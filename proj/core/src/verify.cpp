#include "chdyn/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "chdyn/error.hpp"
#include "chdyn/polyroots.hpp"
#include "json.hpp"

namespace chdyn {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kKappaSamples = 10001;
constexpr double kZeroResidualTol = 1e-6;

Json to_json(const ReportValue& v) {
  return std::visit(
      [](const auto& x) -> Json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ExtendedComplex>) {
          return to_string(x);
        } else {
          return x;
        }
      },
      v);
}

Json to_json(const ReportFields& fields) {
  Json out = Json::object();
  for (const auto& [k, v] : fields) out[k] = to_json(v);
  return out;
}

// Collects margins and failure witnesses for one report.
class Tally {
 public:
  void check(double margin, const ExtendedComplex& where) {
    ++samples_;
    if (std::isnan(margin)) margin = -std::numeric_limits<double>::infinity();
    worst_ = std::min(worst_, margin);
    if (!(margin > 0.0) && witnesses_.size() < kMaxWitnesses) witnesses_.push_back(where);
  }
  void finish(LemmaReport& r) const {
    r.samples = samples_;
    r.worst_margin = worst_;
    r.pass = worst_ > 0.0;
    r.witnesses = witnesses_;
  }

 private:
  std::int64_t samples_ = 0;
  double worst_ = std::numeric_limits<double>::infinity();
  std::vector<ExtendedComplex> witnesses_;
};

Complex random_in_annulus(SplitMix64& rng, double r_min, double r_max) {
  // |z| in (r_min, r_max]
  const double r = r_max - rng.uniform() * (r_max - r_min);
  const double theta = 2.0 * std::numbers::pi * rng.uniform();
  return std::polar(r, theta);
}

Complex random_in_box(SplitMix64& rng, double half) {
  const double re = (2.0 * rng.uniform() - 1.0) * half;
  const double im = (2.0 * rng.uniform() - 1.0) * half;
  return {re, im};
}

double relative_residual(const ExtendedComplex& a, const ExtendedComplex& b) {
  if (a.is_infinite() || b.is_infinite()) return chordal_distance(a, b);
  return std::abs(a.value() - b.value()) / std::max(1.0, std::abs(b.value()));
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Coefficients in alpha of P(n alpha s) for P = p0 + alpha p1; returns the top
// alpha-degree and its coefficient as a function of s.
struct AlphaLeading {
  int degree;
  std::vector<std::pair<const Polynomial*, int>> terms;  // (part, z-power)
};

AlphaLeading alpha_leading(const Polynomial& p0, const Polynomial& p1) {
  int top = -1;
  for (int k = 0; k <= p0.degree(); ++k) {
    if (p0.coefficient(k) != Complex{}) top = std::max(top, k);
  }
  for (int k = 0; k <= p1.degree(); ++k) {
    if (p1.coefficient(k) != Complex{}) top = std::max(top, k + 1);
  }
  AlphaLeading out{top, {}};
  if (top >= 0 && top <= p0.degree() && p0.coefficient(top) != Complex{}) {
    out.terms.emplace_back(&p0, top);
  }
  if (top >= 1 && top - 1 <= p1.degree() && p1.coefficient(top - 1) != Complex{}) {
    out.terms.emplace_back(&p1, top - 1);
  }
  return out;
}

Complex leading_value(const AlphaLeading& lead, Complex ns) {
  Complex sum{};
  for (const auto& [poly, k] : lead.terms) sum += poly->coefficient(k) * std::pow(ns, k);
  return sum;
}

}  // namespace

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::string LemmaReport::to_json_line() const {
  Json j;
  j["lemma"] = lemma;
  j["parameters"] = to_json(parameters);
  j["seed"] = seed;
  j["samples"] = samples;
  j["worst_margin"] = worst_margin;
  j["pass"] = pass;
  Json w = Json::array();
  for (const auto& z : witnesses) w.push_back(to_string(z));
  j["witnesses"] = std::move(w);
  j["details"] = to_json(details);
  return j.dump();
}

LemmaReport verify_escape_bound_b_at(double a, std::span<const Complex> points) {
  if (!(a > 1.0)) throw InvalidArgument("escape bound for B_a needs a > 1");
  const MapSpec b = MapSpec::blaschke(a);
  LemmaReport r;
  r.lemma = "escape-b";
  r.parameters = {{"a", a}};
  Tally tally;
  double worst_ratio = std::numeric_limits<double>::infinity();
  for (const Complex& z : points) {
    const double image = eval(b, z).abs();
    tally.check(image - std::abs(z), z);
    worst_ratio = std::min(worst_ratio, image / std::abs(z));
  }
  tally.finish(r);
  r.details = {{"min_growth_factor", worst_ratio}};
  return r;
}

LemmaReport verify_escape_bound_b(double a, int n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw InvalidArgument("n_samples must be positive");
  SplitMix64 rng(seed);
  std::vector<Complex> points;
  for (int i = 0; i < n_samples; ++i) points.push_back(random_in_annulus(rng, 2.0 * a, 4.0 * a));
  LemmaReport r = verify_escape_bound_b_at(a, points);
  r.parameters.emplace_back("n_samples", static_cast<std::int64_t>(n_samples));
  r.seed = seed;
  return r;
}

LemmaReport verify_critical_value_escape(double a) {
  if (!(a > 2.0)) throw InvalidArgument("critical value escape needs a > 2");
  const MapSpec b = MapSpec::blaschke(a);
  const Complex c_plus = free_critical_points(b)[1];
  const double value = eval(b, c_plus).abs();
  const double bound = a * a / 162.0;

  LemmaReport r;
  r.lemma = "critical-value-b";
  r.parameters = {{"a", a}};
  Tally tally;
  tally.check(std::min(c_plus.real() - a / 2.0, a - c_plus.real()), c_plus);
  tally.check(std::abs(c_plus.imag()) < 1e-12 * a ? 1.0 : -1.0, c_plus);
  tally.check(value - bound, c_plus);
  bool escaped = false;
  if (a > 400.0) {
    tally.check(value - 2.0 * a, c_plus);
    const OrbitConfig cfg{2000, 1e-9, 2.0 * a};
    const Complex zero{};
    escaped = std::holds_alternative<Escaped>(classify_orbit(b, c_plus, {&zero, 1}, cfg));
    tally.check(escaped ? 1.0 : -1.0, c_plus);
  }
  tally.finish(r);
  r.details = {{"c_plus", ExtendedComplex(c_plus)},
               {"abs_B_c_plus", value},
               {"a2_over_162", bound},
               {"margin_a2_162_minus_2a", bound - 2.0 * a},
               {"threshold_324_holds", a > 324.0},
               {"threshold_400_holds", a > 400.0},
               {"margin_value_minus_2a", value - 2.0 * a},
               {"orbit_escaped", escaped}};
  return r;
}

Polynomial zero_interval_polynomial(int n, double alpha) {
  const double e2 = alpha * (n - 1.0) - n;
  std::vector<Complex> c(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k < n; ++k) c[static_cast<std::size_t>(k)] = e2 * binomial(n, k);
  c[static_cast<std::size_t>(n)] = -static_cast<double>(n);
  return Polynomial(std::move(c));
}

ZeroInterval locate_zero(int n, double alpha) {
  if (n < 3) throw InvalidArgument("zero interval needs n >= 3");
  if (!(alpha > 2.0)) throw InvalidArgument("zero interval needs alpha > 2");
  const Polynomial s = zero_interval_polynomial(n, alpha);
  const double lo0 = alpha * (n - 1.0) - n;
  const double hi0 = alpha * (n - 1.0);
  const double s_lo = s(lo0).real();
  const double s_hi = s(hi0).real();
  if (!(s_lo > 0.0 && s_hi < 0.0)) {
    throw SignCheckFailed("S does not change sign from + to - on [" + std::to_string(lo0) + ", " +
                          std::to_string(hi0) + "]");
  }
  double lo = lo0;
  double hi = hi0;
  for (;;) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double v = s(mid).real();
    if (v == 0.0) {
      lo = hi = mid;
      break;
    }
    (v > 0.0 ? lo : hi) = mid;
  }
  const double root = std::abs(s(lo)) <= std::abs(s(hi)) ? lo : hi;
  return {lo0, hi0, root};
}

LemmaReport verify_zero_interval(int n, double alpha) {
  const ZeroInterval zi = locate_zero(n, alpha);
  const Polynomial s = zero_interval_polynomial(n, alpha);
  const MapSpec r_map = MapSpec::r_family(n, alpha);
  const double z0 = zi.root;
  const double r_value = eval(r_map, z0).abs();
  const double r_scale =
      r_map.numerator().scale_at(z0) / std::abs(r_map.denominator()(Complex{z0}));

  LemmaReport r;
  r.lemma = "zero-interval";
  r.parameters = {{"n", static_cast<std::int64_t>(n)}, {"alpha", alpha}};
  Tally tally;
  tally.check(s(zi.lo).real() / s.scale_at(zi.lo), zi.lo);
  tally.check(-s(zi.hi).real() / s.scale_at(zi.hi), zi.hi);
  tally.check(std::min(z0 - zi.lo, zi.hi - z0), z0);
  tally.check(kZeroResidualTol * r_scale - r_value, z0);
  tally.finish(r);
  r.details = {{"interval_lo", zi.lo},
               {"interval_hi", zi.hi},
               {"z0", z0},
               {"abs_S_z0", std::abs(s(z0))},
               {"S_max_coefficient", s.max_abs_coefficient()},
               {"S_scale_at_z0", s.scale_at(z0)},
               {"abs_R_z0", r_value},
               {"R_scale_at_z0", r_scale}};
  return r;
}

namespace {

struct EscapeRun {
  Tally tally;
  double worst_relative = std::numeric_limits<double>::infinity();
};

EscapeRun run_escape_r(int n, double alpha, int n_samples, std::uint64_t seed) {
  const MapSpec r_map = MapSpec::r_family(n, alpha);
  const double radius = n * alpha;
  SplitMix64 rng(seed);
  EscapeRun run;
  for (int i = 0; i < n_samples; ++i) {
    const Complex z = random_in_annulus(rng, radius, 2.0 * radius);
    const double margin = (eval(r_map, z).abs() - std::abs(z)) / std::abs(z);
    run.tally.check(margin, z);
    run.worst_relative = std::min(run.worst_relative, margin);
  }
  return run;
}

}  // namespace

LemmaReport verify_escape_bound_r(int n, double alpha, int n_samples, std::uint64_t seed) {
  if (n < 3) throw InvalidArgument("escape bound for R needs n >= 3");
  if (!(alpha > 0.0)) throw InvalidArgument("escape bound for R needs alpha > 0");
  if (n_samples < 1) throw InvalidArgument("n_samples must be positive");
  LemmaReport r;
  r.lemma = "escape-r";
  r.parameters = {{"n", static_cast<std::int64_t>(n)},
                  {"alpha", alpha},
                  {"n_samples", static_cast<std::int64_t>(n_samples)}};
  r.seed = seed;
  run_escape_r(n, alpha, n_samples, seed).tally.finish(r);

  ReportValue first_pass = std::string("none");
  for (double rung : kEscapeLadder) {
    if (degenerate_check(n, rung)) continue;
    LemmaReport probe;
    run_escape_r(n, rung, n_samples, seed).tally.finish(probe);
    r.details.emplace_back("ladder_" + std::to_string(static_cast<long>(rung)), probe.pass);
    if (probe.pass && std::holds_alternative<std::string>(first_pass)) first_pass = rung;
  }
  r.details.emplace_back("ladder_first_pass", first_pass);
  return r;
}

SegmentConstants segment_constants(int n) {
  if (n < 3) throw InvalidArgument("segment constants need n >= 3");
  const AlphaSplit split = r_family_split(n);
  const Polynomial square = Polynomial{1.0, 1.0}.pow(2);
  const Polynomial den0 = split.den0 * square;
  const Polynomial den1 = split.den1 * square;
  const AlphaLeading top_num = alpha_leading(split.num0, split.num1);
  const AlphaLeading top_den = alpha_leading(den0, den1);

  SegmentConstants k{top_num.degree, top_den.degree, std::numeric_limits<double>::infinity(), 0.0,
                     0.0};
  for (int i = 0; i < kKappaSamples; ++i) {
    const double t = -1.0 + 2.0 * i / (kKappaSamples - 1);
    const Complex ns = static_cast<double>(n) * Complex(0.5, t);
    k.c_min = std::min(k.c_min, std::abs(leading_value(top_num, ns)));
    k.d_max = std::max(k.d_max, std::abs(leading_value(top_den, ns)));
  }
  k.kappa = k.c_min / (2.0 * k.d_max);
  return k;
}

LemmaReport verify_segment(int n, double alpha, int n_samples) {
  if (n < 3) throw InvalidArgument("segment check needs n >= 3");
  if (n_samples < 2) throw InvalidArgument("segment check needs at least 2 samples");
  const MapSpec r_map = MapSpec::r_family(n, alpha);
  const SegmentConstants k = segment_constants(n);
  const double radius = n * alpha;

  LemmaReport r;
  r.lemma = "segment";
  r.parameters = {{"n", static_cast<std::int64_t>(n)},
                  {"alpha", alpha},
                  {"n_samples", static_cast<std::int64_t>(n_samples)}};
  Tally tally;
  double worst_r = std::numeric_limits<double>::infinity();
  double worst_t = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_samples; ++i) {
    const double t = -1.0 + 2.0 * i / (n_samples - 1);
    const Complex z = radius * Complex(0.5, t);
    const ExtendedComplex value = eval(r_map, z);
    const double r_margin = (value.abs() - radius) / radius;
    const double t_margin = value.abs() / std::norm(1.0 + z) - k.kappa;
    tally.check(r_margin, z);
    tally.check(t_margin, z);
    worst_r = std::min(worst_r, r_margin);
    worst_t = std::min(worst_t, t_margin);
  }
  for (double sign : {-1.0, 1.0}) {
    const Complex end = radius * Complex(0.5, sign);
    tally.check((std::abs(end) - radius) / radius, end);
  }
  double z0 = std::numeric_limits<double>::quiet_NaN();
  if (alpha > 2.0) {
    z0 = locate_zero(n, alpha).root;
    tally.check(std::min(z0 - radius / 2.0, radius - z0) / radius, z0);
  } else {
    tally.check(-1.0, Complex(alpha));
  }
  tally.finish(r);
  r.details = {{"kappa", k.kappa},
               {"c_min", k.c_min},
               {"d_max", k.d_max},
               {"alpha_degree_num", static_cast<std::int64_t>(k.alpha_degree_num)},
               {"alpha_degree_den", static_cast<std::int64_t>(k.alpha_degree_den)},
               {"worst_R_margin", worst_r},
               {"worst_T_margin", worst_t},
               {"z0", z0}};
  return r;
}

LemmaReport verify_conjugacies(int n, Complex alpha, Complex c, int n_samples,
                               std::uint64_t seed) {
  if (n_samples < 1) throw InvalidArgument("n_samples must be positive");
  const MapSpec o = MapSpec::o_family(n, alpha);
  const MapSpec oc = MapSpec::oc_family(n, alpha, c);
  const MapSpec r_map = MapSpec::r_family(n, alpha);
  const MobiusMap eta = MobiusMap::eta(n, c);
  const MobiusMap m = MobiusMap::one_to_infinity();
  const MobiusMap m2 = MobiusMap::plus_minus_one();
  const bool with_b = !degenerate_check(2, alpha);
  std::optional<MapSpec> o2;
  std::optional<MapSpec> b;
  if (with_b) {
    o2 = MapSpec::o_family(2, alpha);
    b = MapSpec::blaschke(2.0 * (alpha - 1.0));
  }
  std::vector<Complex> g_coeffs(static_cast<std::size_t>(n) + 1);
  g_coeffs.front() = -1.0;
  g_coeffs.back() = 1.0;
  const Polynomial g(g_coeffs);
  const std::vector<Complex> rotations = roots_of_unity(n);

  double eta_worst = 0.0, rot_worst = 0.0, b_worst = 0.0, r_worst = 0.0, ch_worst = 0.0;
  Tally tally;
  SplitMix64 rng(seed);
  auto record = [&](double residual, double& worst, Complex z) {
    worst = std::max(worst, residual);
    tally.check(kConjugacyTol - residual, z);
  };
  for (int i = 0; i < n_samples; ++i) {
    const Complex z = random_in_box(rng, 2.0);
    const ExtendedComplex oz = eval(o, z);
    record(relative_residual(eta(eval(oc, z)), eval(o, eta(z))), eta_worst, z);
    for (const Complex& xi : rotations) {
      const ExtendedComplex rotated = oz.is_infinite() ? oz : ExtendedComplex(xi * oz.value());
      record(relative_residual(eval(o, xi * z), rotated), rot_worst, z);
    }
    if (with_b) record(relative_residual(m2(eval(*o2, z)), eval(*b, m2(z))), b_worst, z);
    record(relative_residual(m(oz), eval(r_map, m(z))), r_worst, z);
    try {
      record(relative_residual(ch_step(g, alpha, z), oz), ch_worst, z);
    } catch (const Indeterminate&) {
      record(1.0, ch_worst, z);
    }
  }
  LemmaReport r;
  r.lemma = "conjugacies";
  r.parameters = {{"n", static_cast<std::int64_t>(n)},
                  {"alpha", ExtendedComplex(alpha)},
                  {"c", ExtendedComplex(c)},
                  {"n_samples", static_cast<std::int64_t>(n_samples)}};
  r.seed = seed;
  tally.finish(r);
  r.details = {{"eta_c", eta_worst},
               {"rotation", rot_worst},
               {"m2_blaschke", with_b ? ReportValue(b_worst) : ReportValue(std::string("skipped"))},
               {"m_r", r_worst},
               {"ch_step", ch_worst}};
  return r;
}

LemmaReport symmetry_report(const ClassificationGrid& grid, int n,
                            std::span<const Complex> targets) {
  const GridWindow& w = grid.window;
  if (n < 1) throw InvalidArgument("symmetry order must be positive");
  const double tol = 1e-9 * std::max({std::abs(w.re_min), std::abs(w.re_max), std::abs(w.im_min),
                                      std::abs(w.im_max)});
  if (std::abs(w.re_min + w.re_max) > tol || std::abs(w.im_min + w.im_max) > tol) {
    throw WindowNotSymmetric("window must be centered at 0 for a rotation check");
  }
  const Complex xi = std::polar(1.0, 2.0 * std::numbers::pi / n);

  // Root k rotates to the target nearest xi * targets[k].
  std::vector<int> permutation(targets.size());
  for (std::size_t k = 0; k < targets.size(); ++k) {
    const Complex image = xi * targets[k];
    std::size_t best = 0;
    for (std::size_t m = 1; m < targets.size(); ++m) {
      if (std::abs(targets[m] - image) < std::abs(targets[best] - image)) best = m;
    }
    permutation[k] = static_cast<int>(best);
  }

  auto on_boundary = [&](int i, int j) {
    const OrbitOutcome& here = grid.at(i, j);
    constexpr int kSteps[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    for (const auto& s : kSteps) {
      const int ni = i + s[0];
      const int nj = j + s[1];
      if (ni < 0 || nj < 0 || ni >= w.width || nj >= w.height) continue;
      if (!same_class(here, grid.at(ni, nj))) return true;
    }
    return false;
  };

  std::int64_t considered = 0;
  std::int64_t matched = 0;
  std::vector<ExtendedComplex> witnesses;
  for (int j = 0; j < w.height; ++j) {
    for (int i = 0; i < w.width; ++i) {
      if (on_boundary(i, j)) continue;
      const Complex z = w.pixel_center(i, j);
      const auto pixel = w.pixel_of(xi * z);
      if (!pixel) continue;
      const auto [ri, rj] = *pixel;
      if (on_boundary(ri, rj)) continue;
      ++considered;
      const OrbitOutcome& a = grid.at(i, j);
      const OrbitOutcome& b = grid.at(ri, rj);
      bool ok = a.index() == b.index();
      const int root = outcome_root(a);
      if (ok && root >= 0) {
        ok = static_cast<std::size_t>(root) < permutation.size() &&
             permutation[static_cast<std::size_t>(root)] == outcome_root(b);
      }
      if (ok) {
        ++matched;
      } else if (witnesses.size() < kMaxWitnesses) {
        witnesses.emplace_back(z);
      }
    }
  }
  LemmaReport r;
  r.lemma = "symmetry";
  r.parameters = {{"n", static_cast<std::int64_t>(n)},
                  {"width", static_cast<std::int64_t>(w.width)},
                  {"height", static_cast<std::int64_t>(w.height)}};
  r.samples = considered;
  const double fraction = considered > 0 ? static_cast<double>(matched) / considered : 0.0;
  r.worst_margin = fraction - kSymmetryThreshold;
  r.pass = r.worst_margin > 0.0;
  r.witnesses = std::move(witnesses);
  r.details = {{"matched", matched}, {"fraction", fraction}};
  return r;
}

LemmaReport symmetry_report(const ClassificationGrid& grid, int n) {
  const std::vector<Complex> targets = roots_of_unity(n);
  return symmetry_report(grid, n, targets);
}

}  // namespace chdyn
