// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "chdyn/dynamics.hpp"
#include "chdyn/maps.hpp"
#include "chdyn/polyroots.hpp"
#include "chdyn/probe.hpp"
#include "chdyn/render.hpp"
#include "chdyn/verify.hpp"

using namespace chdyn;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string note;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!note.empty()) note += "; ";
      note += what;
    }
  }
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

Complex random_alpha(SplitMix64& rng, int n) {
  for (;;) {
    const Complex a(10 * rng.uniform() - 5, 10 * rng.uniform() - 5);
    if (!degenerate_check(n, a)) return a;
  }
}

std::map<std::string, std::string> load_golden() {
  std::map<std::string, std::string> out;
  std::ifstream in(CHDYN_GOLDEN_FILE);
  std::string key, value;
  while (in >> key >> value) out[key] = value;
  return out;
}

Outcome closed_form() {
  Outcome o;
  const auto t0 = Clock::now();
  SplitMix64 rng(kDefaultSeed);
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const int n = 2 + static_cast<int>(rng.next() % 5);
    const Complex alpha = random_alpha(rng, n);
    const Complex z(4 * rng.uniform() - 2, 4 * rng.uniform() - 2);
    std::vector<Complex> g(static_cast<std::size_t>(n) + 1, 0.0);
    g.front() = -1.0;
    g.back() = 1.0;
    const ExtendedComplex a = ch_step(Polynomial(g), alpha, z);
    const ExtendedComplex b = eval(MapSpec::o_family(n, alpha), z);
    if (a.is_infinite() || b.is_infinite()) {
      o.require(a == b, "pole mismatch");
      continue;
    }
    worst = std::max(worst, std::abs(a.value() - b.value()) / std::max(1.0, b.abs()));
  }
  const double secs = seconds_since(t0);
  o.require(worst <= 1e-10, "max rel err " + num(worst));
  o.require(secs < 1.0, "runtime " + num(secs) + "s");
  o.note = "max rel err " + num(worst) + ", " + num(secs) + "s" + (o.pass ? "" : " | " + o.note);
  return o;
}

Outcome conjugacy_suite() {
  Outcome o;
  const auto t0 = Clock::now();
  const LemmaReport a = verify_conjugacies(3, 10.0, Complex(-1, 2), 1000);
  const LemmaReport b = verify_conjugacies(2, 3.0, Complex(0.5, -1), 1000);
  const double secs = seconds_since(t0);
  o.require(a.pass, "n=3 suite: " + a.to_json_line());
  o.require(b.pass, "n=2 suite: " + b.to_json_line());
  o.require(secs < 1.0, "runtime " + num(secs) + "s");
  double worst = 0.0;
  for (const auto* r : {&a, &b}) {
    for (const auto& [k, v] : r->details) {
      if (const double* d = std::get_if<double>(&v)) worst = std::max(worst, *d);
    }
  }
  o.note = "max residual " + num(worst) + ", " + num(secs) + "s" + (o.pass ? "" : " | " + o.note);
  return o;
}

Outcome superattraction() {
  Outcome o;
  SplitMix64 rng(kDefaultSeed + 3);
  double w0 = 0, w1 = 0, w2 = 0;
  for (int n = 2; n <= 6; ++n) {
    for (int k = 0; k < 20; ++k) {
      const MapSpec spec = MapSpec::o_family(n, random_alpha(rng, n));
      for (Complex xi : roots_of_unity(n)) {
        w0 = std::max(w0, std::abs(eval(spec, xi).value() - xi));
        w1 = std::max(w1, eval_derivative(spec, xi).abs());
        w2 = std::max(w2, eval_second_derivative(spec, xi).abs());
      }
    }
  }
  o.require(w0 <= 1e-10, "|O(xi)-xi| " + num(w0));
  o.require(w1 <= 1e-8, "|O'(xi)| " + num(w1));
  o.require(w2 <= 1e-6, "|O''(xi)| " + num(w2));
  o.note = "max |O-xi| " + num(w0) + ", |O'| " + num(w1) + ", |O''| " + num(w2);
  return o;
}

Outcome escape_b() {
  Outcome o;
  std::string margins;
  for (double a : {2.0, 20.0, 500.0}) {
    const LemmaReport r = verify_escape_bound_b(a, 1000);
    o.require(r.pass && r.worst_margin > 0.0, "a=" + num(a) + " margin " + num(r.worst_margin));
    margins += (margins.empty() ? "" : ", ") + ("a=" + num(a) + ": " + num(r.worst_margin));
  }
  o.note = "worst margins " + margins + (o.pass ? "" : " | " + o.note);
  return o;
}

Outcome critical_value_b() {
  Outcome o;
  const auto t0 = Clock::now();
  const double a = 500.0;
  const MapSpec b = MapSpec::blaschke(a);
  const Complex cplus = free_critical_points(b)[1];
  const double value = eval(b, cplus).abs();
  o.require(cplus.real() > a / 2 && cplus.real() < a, "c+ outside (a/2, a)");
  o.require(value > a * a / 162 && a * a / 162 > 2 * a, "|B(c+)| bound");
  const std::vector<Complex> zero{0.0};
  const OrbitOutcome fate = classify_orbit(b, cplus, zero, {2000, 1e-9, 2 * a});
  o.require(std::holds_alternative<Escaped>(fate), "orbit of c+ is " + outcome_tag(fate));
  o.require(verify_critical_value_escape(a).pass, "critical-value report fails");
  const ConnectivityVerdict v = connectivity_probe(2, a / 2 + 1);
  const double secs = seconds_since(t0);
  o.require(v.verdict == Connectivity::InfinitelyConnected, "probe " + to_string(v.verdict));
  o.require(secs < 30.0, "runtime " + num(secs) + "s");
  o.note = "|B(c+)|=" + num(value) + ", probe " + to_string(v.verdict) + ", " + num(secs) + "s" +
           (o.pass ? "" : " | " + o.note);
  return o;
}

Outcome quadratic_threshold() {
  Outcome o;
  const ConnectivityVerdict v = connectivity_probe(2, 9.0);
  o.require(v.verdict == Connectivity::InfinitelyConnected, "verdict " + to_string(v.verdict));
  o.note = "probe(n=2, alpha=9) " + to_string(v.verdict);
  return o;
}

Outcome zero_interval() {
  Outcome o;
  std::string roots;
  for (auto [n, alpha] : {std::pair{3, 10.0}, std::pair{4, 50.0}, std::pair{5, 100.0}}) {
    const LemmaReport r = verify_zero_interval(n, alpha);
    const ZeroInterval zi = locate_zero(n, alpha);
    const Polynomial s = zero_interval_polynomial(n, alpha);
    o.require(s(zi.lo).real() > 0 && s(zi.hi).real() < 0, "sign check n=" + std::to_string(n));
    o.require(r.pass, "report n=" + std::to_string(n));
    const MapSpec rm = MapSpec::r_family(n, alpha);
    const double scale = rm.numerator().scale_at(zi.root) / std::abs(rm.denominator()(zi.root));
    o.require(eval(rm, zi.root).abs() <= 1e-6 * scale, "|R(z0)| n=" + std::to_string(n));
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", zi.root);
    roots += (roots.empty() ? "" : ", ") + std::string(buf);
    if (n == 3) {
      o.require(zi.root > 17.9 && zi.root < 18.0, "z0 outside (17.9, 18)");
      o.require(std::abs(zi.root - 17.963902335781402) <= 1e-12, "z0 regression");
    }
  }
  o.note = "z0 = " + roots + (o.pass ? "" : " | " + o.note);
  return o;
}

Outcome large_alpha_r() {
  Outcome o;
  const auto t0 = Clock::now();
  for (auto [n, alpha] : {std::pair{3, 1000.0}, std::pair{4, 2000.0}, std::pair{5, 2000.0}}) {
    const std::string tag = "(" + std::to_string(n) + "," + num(alpha) + ")";
    o.require(verify_escape_bound_r(n, alpha, 1000).pass, "escape-r " + tag);
    o.require(verify_segment(n, alpha, 201).pass, "segment " + tag);
    const double z0 = locate_zero(n, alpha).root;
    o.require(z0 > n * alpha / 2 && z0 < n * alpha, "z0 " + tag);
  }
  const double secs = seconds_since(t0);
  o.require(secs < 2.0, "runtime " + num(secs) + "s");
  o.note = num(secs) + "s" + (o.pass ? "" : " | " + o.note);
  return o;
}

struct Render {
  std::string name;
  std::function<ClassificationGrid(const ExecutionConfig&)> classify;
  int palette_roots;
  int symmetry_order;  // 0: no symmetry check
};

// Hashes of every image rendered, for the determinism criterion.
std::map<std::string, std::vector<std::string>> g_image_hashes;

Outcome renders() {
  Outcome o;
  const auto golden = load_golden();
  const RenderConfig base;
  const GridWindow dyn_window{-10, 10, -10, 10, 800, 800};
  const GridWindow param_window{-1, 4, -2.5, 2.5, 800, 800};
  const std::vector<Render> runs = {
      {"o3_alpha10",
       [&](const ExecutionConfig& e) {
         RenderConfig c = base;
         c.exec = e;
         return classify_dynamical(MapSpec::o_family(3, 10.0), dyn_window, c);
       },
       3, 3},
      {"param3",
       [&](const ExecutionConfig& e) {
         RenderConfig c = base;
         c.exec = e;
         return classify_parameter(3, param_window, c);
       },
       3, 0},
      {"param5",
       [&](const ExecutionConfig& e) {
         RenderConfig c = base;
         c.exec = e;
         return classify_parameter(5, param_window, c);
       },
       5, 0},
  };
  std::string summary;
  for (const Render& f : runs) {
    double slowest = 0.0;
    for (int workers : {1, 2, 8}) {
      const auto t0 = Clock::now();
      const ClassificationGrid g = f.classify({workers});
      const Image img = colorize(g, Palette::for_roots(f.palette_roots), base.orbit.max_iter,
                                 {workers});
      slowest = std::max(slowest, seconds_since(t0));
      const std::string h = hex64(image_hash(img));
      g_image_hashes[f.name].push_back(h);
      const auto it = golden.find(f.name);
      o.require(it != golden.end() && it->second == h,
                f.name + " workers=" + std::to_string(workers) + " hash " + h);
      if (workers == 1 && f.symmetry_order > 0) {
        const LemmaReport r = symmetry_report(g, f.symmetry_order);
        o.require(r.pass, f.name + " symmetry " + r.to_json_line());
      }
    }
    o.require(slowest < 60.0, f.name + " took " + num(slowest) + "s");
    summary += (summary.empty() ? "" : ", ") + f.name + " " + g_image_hashes[f.name].front() +
               " (" + num(slowest) + "s)";
  }
  o.note = summary + (o.pass ? "" : " | " + o.note);
  return o;
}

Outcome newton_and_zoom() {
  Outcome o;
  RenderConfig cfg;
  const GridWindow sq2{-2, 2, -2, 2, 400, 400};
  const GridWindow sq10{-10, 10, -10, 10, 400, 400};
  const LemmaReport rn = symmetry_report(classify_dynamical(MapSpec::newton(3), sq2, cfg), 3);
  const LemmaReport ro = symmetry_report(classify_dynamical(MapSpec::o_family(3, 10.0), sq10, cfg), 3);
  o.require(rn.pass, "newton symmetry");
  o.require(ro.pass, "O(3,10) symmetry");
  const GridWindow zoom{1.620, 1.623, -0.0015, 0.0015, 400, 400};
  RenderConfig deep = cfg;
  deep.orbit.max_iter = 2000;
  const ClassificationGrid g = classify_dynamical(MapSpec::o_family(3, 10.0), zoom, deep);
  std::size_t other = 0;
  for (const auto& c : g.cells) other += outcome_root(c) != 0;
  const double frac = static_cast<double>(other) / static_cast<double>(g.cells.size());
  o.require(frac >= 0.01, "zoom fraction " + num(frac));
  o.note = "zoom: " + num(100 * frac) + "% pixels not in basin of 1" + (o.pass ? "" : " | " + o.note);
  return o;
}

Outcome preimage_bookkeeping() {
  Outcome o;
  SplitMix64 rng(kDefaultSeed + 11);
  double worst = 0.0;
  for (int n = 2; n <= 4; ++n) {
    for (int k = 0; k < 5; ++k) {
      const Complex alpha = random_alpha(rng, n);
      const MapSpec spec = MapSpec::o_family(n, alpha);
      const RootSet rs = preimages(spec, 1.0);
      const std::string tag = "n=" + std::to_string(n) + " alpha=" + to_string(alpha);
      o.require(rs.multiplicity_near(1.0, 1e-6) == 3, tag + " multiplicity at 1");
      int others = 0;
      for (std::size_t i = 0; i < rs.size(); ++i) {
        if (std::abs(rs.roots[i] - 1.0) <= 1e-6) continue;
        ++others;
        const double res = std::abs(eval(spec, rs.roots[i]).value() - 1.0);
        worst = std::max(worst, res);
        o.require(res <= 1e-6, tag + " residual " + num(res));
      }
      o.require(others == 2 * n - 3, tag + " has " + std::to_string(others) + " other roots");
    }
  }
  o.note = "max residual " + num(worst) + (o.pass ? "" : " | " + o.note);
  return o;
}

Outcome determinism() {
  Outcome o;
  for (const auto& [name, hashes] : g_image_hashes) {
    for (const auto& h : hashes) o.require(h == hashes.front(), name + " differs across workers");
  }
  o.require(!g_image_hashes.empty(), "no images rendered");
  // Reports twice each.
  auto reports = [] {
    std::string s;
    s += verify_escape_bound_b(20.0, 500).to_json_line();
    s += verify_critical_value_escape(500.0).to_json_line();
    s += verify_zero_interval(3, 10.0).to_json_line();
    s += verify_escape_bound_r(3, 1000.0, 500).to_json_line();
    s += verify_segment(3, 1000.0, 201).to_json_line();
    s += verify_conjugacies(3, 10.0, Complex(-1, 2), 500).to_json_line();
    return s;
  };
  const std::string first = reports();
  o.require(first == reports(), "reports differ between runs");
  const GridWindow w{-2, 2, -2, 2, 200, 200};
  RenderConfig cfg;
  std::vector<std::uint64_t> hs;
  for (int workers : {1, 2, 8, 1}) {
    cfg.exec.workers = workers;
    hs.push_back(image_hash(render_dynamical(MapSpec::o_family(3, Complex(0.2, 1.592)), w,
                                             Palette::for_roots(3), cfg)));
  }
  for (auto h : hs) o.require(h == hs.front(), "render differs across runs");
  o.note = "reports " + hex64(fnv1a64(std::span(reinterpret_cast<const std::uint8_t*>(first.data()),
                                                first.size()))) +
           (o.pass ? "" : " | " + o.note);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"closed-form agreement", closed_form},
      {"conjugacy suite", conjugacy_suite},
      {"superattraction", superattraction},
      {"B escape bound", escape_b},
      {"B critical value and probe a=500", critical_value_b},
      {"probe n=2 alpha=9", quadratic_threshold},
      {"zero of S", zero_interval},
      {"R escape and segment", large_alpha_r},
      {"800x800 renders", renders},
      {"symmetry and zoom", newton_and_zoom},
      {"preimage bookkeeping", preimage_bookkeeping},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::printf("criterion %zu: %s %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL",
                criteria[i].first.c_str(), o.note.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
