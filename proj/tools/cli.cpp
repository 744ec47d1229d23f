#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "chdyn/error.hpp"
#include "chdyn/maps.hpp"
#include "chdyn/polyroots.hpp"
#include "chdyn/probe.hpp"
#include "chdyn/render.hpp"
#include "chdyn/verify.hpp"
#include "json.hpp"

namespace chdyn::cli {

namespace {

using Json = nlohmann::ordered_json;

// Bad user input detected after CLI11 has parsed the flags.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double parse_double(std::string_view text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw InvalidArgument("not a number: '" + std::string(text) + "'");
  }
  return v;
}

std::string fmt(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc{} ? std::string(buf, ptr) : std::to_string(v);
}

std::string fmt(const ExtendedComplex& z) { return to_string(z); }

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return s;
}

// Flags as they were resolved, in a fixed order, for the report header.
class Echo {
 public:
  explicit Echo(std::string command) : command_(std::move(command)) {}
  void add(const std::string& name, const std::string& value) { flags_.emplace_back(name, value); }
  [[nodiscard]] Json header() const {
    Json j;
    j["command"] = command_;
    Json f = Json::object();
    std::string replay = command_;
    for (const auto& [k, v] : flags_) {
      f[k] = v;
      replay += v == "true" ? " --" + k : " --" + k + " " + v;
    }
    j["flags"] = std::move(f);
    j["replay"] = replay;
    return j;
  }

 private:
  std::string command_;
  std::vector<std::pair<std::string, std::string>> flags_;
};

struct MapOptions {
  std::string family = "O";
  int n = 3;
  std::string alpha;
  std::string a;
  std::string c;
};

struct GridOptions {
  std::string window;
  std::string size;
  int max_iter = 256;
  double conv_tol = 1e-9;
  std::string escape_radius;
};

struct Common {
  int workers = 0;
  std::string report;
};

int default_workers() {
  const char* env = std::getenv("HD_WORKERS");
  if (env == nullptr || *env == '\0') return 0;
  int v = 0;
  const std::string_view s(env);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || v < 0) {
    throw UsageError("HD_WORKERS must be a non-negative integer, got '" + std::string(s) + "'");
  }
  return v;
}

Complex require_complex(const std::string& text, const std::string& flag) {
  if (text.empty()) throw UsageError("--" + flag + " is required here");
  return parse_complex(text);
}

double require_real(const std::string& text, const std::string& flag) {
  const Complex z = require_complex(text, flag);
  if (z.imag() != 0.0) throw UsageError("--" + flag + " must be real here");
  return z.real();
}

void require_order(int n) {
  if (n < 2) throw UsageError("--n must be >= 2, got " + std::to_string(n));
}

MapSpec build_map(const MapOptions& o, Echo& echo) {
  const std::string family = lower(o.family);
  if (family == "o" || family == "oc" || family == "r") {
    require_order(o.n);
    const Complex alpha = require_complex(o.alpha, "alpha");
    echo.add("family", family == "o" ? "O" : family == "oc" ? "Oc" : "R");
    echo.add("n", std::to_string(o.n));
    echo.add("alpha", fmt(alpha));
    if (family == "o") return MapSpec::o_family(o.n, alpha);
    if (family == "r") return MapSpec::r_family(o.n, alpha);
    const Complex c = require_complex(o.c, "c");
    echo.add("c", fmt(c));
    return MapSpec::oc_family(o.n, alpha, c);
  }
  if (family == "b") {
    Complex a;
    if (!o.a.empty()) {
      a = parse_complex(o.a);
    } else if (!o.alpha.empty()) {
      a = 2.0 * (parse_complex(o.alpha) - 1.0);
    } else {
      throw UsageError("family B needs --a or --alpha");
    }
    echo.add("family", "B");
    echo.add("a", fmt(a));
    return MapSpec::blaschke(a);
  }
  if (family == "newton") {
    require_order(o.n);
    echo.add("family", "newton");
    echo.add("n", std::to_string(o.n));
    return MapSpec::newton(o.n);
  }
  throw UsageError("unknown family '" + o.family + "'");
}

OrbitConfig orbit_config(const GridOptions& g, Echo& echo) {
  if (g.max_iter < 1) throw UsageError("--max-iter must be >= 1");
  if (!(g.conv_tol > 0.0)) throw UsageError("--conv-tol must be positive");
  OrbitConfig cfg{g.max_iter, g.conv_tol, std::nullopt};
  echo.add("max-iter", std::to_string(g.max_iter));
  echo.add("conv-tol", fmt(g.conv_tol));
  if (!g.escape_radius.empty()) {
    cfg.escape_radius = parse_double(g.escape_radius);
    echo.add("escape-radius", fmt(*cfg.escape_radius));
  }
  return cfg;
}

GridWindow grid_window(const GridOptions& g, Echo& echo) {
  GridWindow w = parse_window(g.window, g.size);
  echo.add("window", fmt(w.re_min) + "," + fmt(w.re_max) + "," + fmt(w.im_min) + "," + fmt(w.im_max));
  echo.add("size", std::to_string(w.width) + "x" + std::to_string(w.height));
  return w;
}

Json outcome_json(const OrbitOutcome& o) {
  Json j;
  j["outcome"] = outcome_tag(o);
  j["iterations"] = outcome_iterations(o);
  if (const auto* r = std::get_if<ConvergedToRoot>(&o)) j["root"] = r->index;
  if (const auto* c = std::get_if<ConvergedToCycle>(&o)) {
    j["period"] = c->period;
    j["representative"] = fmt(c->representative);
  }
  return j;
}

Json histogram(const ClassificationGrid& grid) {
  std::map<int, std::int64_t> roots;
  std::int64_t cycles = 0, escaped = 0, undecided = 0;
  for (const OrbitOutcome& o : grid.cells) {
    if (const auto* r = std::get_if<ConvergedToRoot>(&o)) {
      ++roots[r->index];
    } else if (std::holds_alternative<ConvergedToCycle>(o)) {
      ++cycles;
    } else if (std::holds_alternative<Escaped>(o)) {
      ++escaped;
    } else {
      ++undecided;
    }
  }
  Json j;
  Json r = Json::object();
  for (const auto& [k, v] : roots) r[std::to_string(k)] = v;
  j["root"] = std::move(r);
  j["cycle"] = cycles;
  j["escaped"] = escaped;
  j["undecided"] = undecided;
  return j;
}

// Writes report lines to --report when given, otherwise to the command's stdout.
class ReportSink {
 public:
  ReportSink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::trunc);
      if (!*file_) throw IoError("cannot open report file " + path);
      out_ = file_.get();
    }
  }
  void line(const Json& j) { *out_ << j.dump() << '\n'; }
  void line(const std::string& s) { *out_ << s << '\n'; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* out_;
};

void finish_image(const ClassificationGrid& grid, const Palette& palette, int max_iter,
                  const ExecutionConfig& exec, const std::string& output,
                  const std::string& dump, Json& record) {
  const Image img = colorize(grid, palette, max_iter, exec);
  write_ppm(img, output);
  if (!dump.empty()) {
    std::ofstream d(dump, std::ios::trunc);
    if (!d) throw IoError("cannot open grid dump " + dump);
    write_grid_dump(grid, d);
  }
  record["image_fnv1a64"] = hex64(image_hash(img));
  record["grid_fnv1a64"] = hex64(grid_hash(grid));
  record["histogram"] = histogram(grid);
}

struct DynCommand {
  MapOptions map;
  GridOptions grid{"-2,2,-2,2", "800x800", 256, 1e-9, ""};
  std::string output;
  std::string dump;

  int run(const Common& common, std::ostream& out) const {
    Echo echo("dyn");
    const MapSpec spec = build_map(map, echo);
    const GridWindow window = grid_window(grid, echo);
    const OrbitConfig orbit = orbit_config(grid, echo);
    echo.add("output", output);
    if (!dump.empty()) echo.add("dump", dump);
    ReportSink sink(common.report, out);
    const RenderConfig cfg{orbit, {common.workers}};
    const ClassificationGrid g = classify_dynamical(spec, window, cfg);
    Json record = echo.header();
    record["map"] = spec.describe();
    const auto targets = default_targets(spec);
    finish_image(g, Palette::for_roots(static_cast<int>(targets.size())), orbit.max_iter,
                 cfg.exec, output, dump, record);
    sink.line(record);
    return kExitOk;
  }
};

struct ParamCommand {
  int n = 3;
  GridOptions grid{"-1,4,-2.5,2.5", "500x500", 256, 1e-9, ""};
  std::string output;
  std::string dump;

  int run(const Common& common, std::ostream& out) const {
    Echo echo("param");
    require_order(n);
    echo.add("n", std::to_string(n));
    const GridWindow window = grid_window(grid, echo);
    const OrbitConfig orbit = orbit_config(grid, echo);
    echo.add("output", output);
    if (!dump.empty()) echo.add("dump", dump);
    ReportSink sink(common.report, out);
    const RenderConfig cfg{orbit, {common.workers}};
    const ClassificationGrid g = classify_parameter(n, window, cfg);
    Json record = echo.header();
    finish_image(g, Palette::for_roots(n), orbit.max_iter, cfg.exec, output, dump, record);
    sink.line(record);
    return kExitOk;
  }
};

struct ProbeCommand {
  int n = 3;
  std::string alpha;
  int resolution = 1024;
  double window_scale = 1.5;
  int max_iter = 2000;
  double conv_tol = 1e-9;

  int run(const Common& common, std::ostream& out) const {
    Echo echo("probe");
    require_order(n);
    const Complex a = require_complex(alpha, "alpha");
    if (resolution < 2) throw UsageError("--resolution must be >= 2");
    if (!(window_scale > 0.0)) throw UsageError("--window-scale must be positive");
    if (max_iter < 1) throw UsageError("--max-iter must be >= 1");
    if (!(conv_tol > 0.0)) throw UsageError("--conv-tol must be positive");
    echo.add("n", std::to_string(n));
    echo.add("alpha", fmt(a));
    echo.add("resolution", std::to_string(resolution));
    echo.add("window-scale", fmt(window_scale));
    echo.add("max-iter", std::to_string(max_iter));
    echo.add("conv-tol", fmt(conv_tol));
    if (degenerate_check(n, a)) {
      throw DegenerateParameter("alpha=" + fmt(a) + " is degenerate for n=" + std::to_string(n));
    }
    ReportSink sink(common.report, out);
    ProbeConfig cfg;
    cfg.resolution = resolution;
    cfg.window_scale = window_scale;
    cfg.orbit = {max_iter, conv_tol, std::nullopt};
    cfg.exec.workers = common.workers;
    const ConnectivityVerdict v = connectivity_probe(n, a, cfg);

    Json record = echo.header();
    record["verdict"] = to_string(v.verdict);
    const ConnectivityEvidence& ev = v.evidence;
    Json e;
    e["critical_point"] = fmt(ev.critical_point);
    if (ev.critical_orbit) e["critical_orbit"] = outcome_json(*ev.critical_orbit);
    e["critical_converges_elsewhere"] = ev.critical_converges_elsewhere;
    e["critical_in_immediate"] = to_string(ev.critical_in_immediate);
    e["extra_preimage_in_immediate"] = to_string(ev.extra_preimage_in_immediate);
    Json pre = Json::array();
    for (const auto& p : ev.preimages_checked) {
      pre.push_back({{"z", fmt(p.point)}, {"in_immediate", to_string(p.in_immediate)}});
    }
    e["preimages_checked"] = std::move(pre);
    if (ev.window) {
      e["window"] = fmt(ev.window->re_min) + "," + fmt(ev.window->re_max) + "," +
                    fmt(ev.window->im_min) + "," + fmt(ev.window->im_max);
    }
    record["evidence"] = std::move(e);
    sink.line(record);
    return v.verdict == Connectivity::Undecided ? kExitUndecided : kExitOk;
  }
};

struct VerifyCommand {
  std::string lemma;
  bool all = false;
  int n = 3;
  std::string alpha;
  std::string a;
  std::string c = "-1+2i";
  int samples = 1000;
  int segment_samples = 201;
  std::uint64_t seed = kDefaultSeed;

  int run(const Common& common, std::ostream& out) const {
    Echo echo("verify");
    if (all == !lemma.empty()) throw UsageError("give exactly one of --lemma and --all");
    if (samples < 1 || segment_samples < 2) throw UsageError("sample counts are too small");
    std::vector<std::function<LemmaReport()>> jobs;

    auto real_a = [&]() -> double {
      if (!a.empty()) return require_real(a, "a");
      return 2.0 * (require_real(alpha, "alpha") - 1.0);
    };
    auto add = [&](const std::string& name) {
      if (name == "escape-b") {
        const double av = real_a();
        jobs.emplace_back([=, this] { return verify_escape_bound_b(av, samples, seed); });
      } else if (name == "critical-value-b") {
        const double av = real_a();
        jobs.emplace_back([=] { return verify_critical_value_escape(av); });
      } else if (name == "zero-interval") {
        const double al = require_real(alpha, "alpha");
        jobs.emplace_back([=, this] { return verify_zero_interval(n, al); });
      } else if (name == "escape-r") {
        const double al = require_real(alpha, "alpha");
        jobs.emplace_back([=, this] { return verify_escape_bound_r(n, al, samples, seed); });
      } else if (name == "segment") {
        const double al = require_real(alpha, "alpha");
        jobs.emplace_back([=, this] { return verify_segment(n, al, segment_samples); });
      } else if (name == "conjugacies") {
        const Complex al = require_complex(alpha, "alpha");
        const Complex cv = require_complex(c, "c");
        jobs.emplace_back([=, this] { return verify_conjugacies(n, al, cv, samples, seed); });
      } else {
        throw UsageError("unknown lemma '" + name + "'");
      }
    };

    if (all) {
      require_order(n);
      const Complex al = require_complex(alpha, "alpha");
      echo.add("all", "true");
      echo.add("n", std::to_string(n));
      echo.add("alpha", fmt(al));
      echo.add("c", fmt(require_complex(c, "c")));
      add("conjugacies");
      if (al.imag() == 0.0) {
        const double av = real_a();
        echo.add("a", fmt(av));
        if (av > 1.0) add("escape-b");
        if (av > 2.0) add("critical-value-b");
        if (n >= 3) {
          if (al.real() > 2.0) add("zero-interval");
          add("escape-r");
          add("segment");
        }
      }
    } else {
      echo.add("lemma", lemma);
      add(lemma);
      const bool uses_a = lemma == "escape-b" || lemma == "critical-value-b";
      if (uses_a) {
        echo.add("a", fmt(real_a()));
      } else {
        echo.add("n", std::to_string(n));
        echo.add("alpha", fmt(require_complex(alpha, "alpha")));
        if (lemma == "conjugacies") echo.add("c", fmt(require_complex(c, "c")));
      }
    }
    echo.add("samples", std::to_string(samples));
    echo.add("segment-samples", std::to_string(segment_samples));
    echo.add("seed", std::to_string(seed));

    ReportSink sink(common.report, out);
    sink.line(echo.header());
    bool pass = true;
    for (const auto& job : jobs) {
      LemmaReport r;
      try {
        r = job();
      } catch (const SignCheckFailed& e) {
        r.lemma = "zero-interval";
        r.parameters = {{"n", static_cast<std::int64_t>(n)}, {"alpha", alpha}};
        r.worst_margin = -1.0;
        r.pass = false;
        r.details = {{"error", std::string(e.what())}};
      }
      pass = pass && r.pass;
      sink.line(r.to_json_line());
    }
    return pass ? kExitOk : kExitFailure;
  }
};

struct PreimagesCommand {
  MapOptions map;
  std::string w;

  int run(const Common& common, std::ostream& out) const {
    Echo echo("preimages");
    const MapSpec spec = build_map(map, echo);
    if (w.empty()) throw UsageError("--w is required");
    const ExtendedComplex target = parse_point(w);
    echo.add("w", fmt(target));
    ReportSink sink(common.report, out);
    const RootSet roots = preimages(spec, target);
    Json record = echo.header();
    record["map"] = spec.describe();
    Json list = Json::array();
    for (const auto& cl : roots.clusters()) {
      list.push_back({{"z", fmt(cl.center)},
                      {"multiplicity", cl.multiplicity},
                      {"residual", cl.residual}});
    }
    record["count"] = roots.size();
    record["preimages"] = std::move(list);
    sink.line(record);
    return kExitOk;
  }
};

void add_map_options(CLI::App* cmd, MapOptions& m) {
  cmd->add_option("--family", m.family, "Map family: O, Oc, B, R or newton")
      ->capture_default_str();
  cmd->add_option("--n", m.n, "Order n of z^n - 1")->capture_default_str();
  cmd->add_option("--alpha", m.alpha, "Family parameter, e.g. 10+0i");
  cmd->add_option("--a", m.a, "Parameter of B (default 2(alpha-1))");
  cmd->add_option("--c", m.c, "Constant of z^n + c for Oc");
}

void add_grid_options(CLI::App* cmd, GridOptions& g) {
  cmd->add_option("--window", g.window, "re_min,re_max,im_min,im_max")->capture_default_str();
  cmd->add_option("--size", g.size, "WIDTHxHEIGHT")->capture_default_str();
  cmd->add_option("--max-iter", g.max_iter, "Iteration cap per orbit")->capture_default_str();
  cmd->add_option("--conv-tol", g.conv_tol, "Distance to a root counted as converged")
      ->capture_default_str();
  cmd->add_option("--escape-radius", g.escape_radius,
                  "Escape radius (default 2|a| for B, n|alpha| for R)");
}

}  // namespace

Complex parse_complex(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (ch != ' ') s.push_back(ch);
  }
  if (s.empty()) throw InvalidArgument("empty complex number");
  if (s.back() != 'i') return {parse_double(s), 0.0};
  s.pop_back();
  // Split at the last sign that is not a leading sign or part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const std::string re = split == std::string::npos ? "" : s.substr(0, split);
  std::string im = split == std::string::npos ? s : s.substr(split);
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  return {re.empty() ? 0.0 : parse_double(re), parse_double(im)};
}

ExtendedComplex parse_point(std::string_view text) {
  if (lower(std::string(text)) == "inf") return ExtendedComplex::infinity();
  return parse_complex(text);
}

GridWindow parse_window(std::string_view bounds, std::string_view size) {
  std::vector<double> v;
  std::size_t start = 0;
  while (start <= bounds.size()) {
    const std::size_t comma = bounds.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? bounds.size() : comma;
    v.push_back(parse_double(bounds.substr(start, end - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (v.size() != 4) throw InvalidArgument("window needs four comma-separated numbers");
  const std::size_t x = size.find('x');
  if (x == std::string_view::npos) throw InvalidArgument("size must look like 800x800");
  auto parse_int = [](std::string_view s) {
    int out = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
      throw InvalidArgument("bad size component '" + std::string(s) + "'");
    }
    return out;
  };
  GridWindow w{v[0], v[1], v[2], v[3], parse_int(size.substr(0, x)), parse_int(size.substr(x + 1))};
  w.validate();
  return w;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Chebyshev-Halley dynamics on z^n - 1", "chdyn"};
  app.require_subcommand(1);
  Common common;
  try {
    common.workers = default_workers();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  DynCommand dyn;
  ParamCommand param;
  ProbeCommand probe;
  VerifyCommand verify;
  PreimagesCommand pre;

  auto common_options = [&](CLI::App* cmd) {
    cmd->add_option("--workers", common.workers,
                    "Worker threads, 0 = all cores (default: $HD_WORKERS or 0)")
        ->capture_default_str();
    cmd->add_option("--report", common.report, "Write the report here instead of stdout");
  };

  CLI::App* c_dyn = app.add_subcommand("dyn", "Render a dynamical plane to PPM");
  add_map_options(c_dyn, dyn.map);
  add_grid_options(c_dyn, dyn.grid);
  c_dyn->add_option("-o,--output", dyn.output, "Output PPM path")->required();
  c_dyn->add_option("--dump", dyn.dump, "Also write the per-pixel classification here");
  common_options(c_dyn);

  CLI::App* c_param = app.add_subcommand("param", "Render the parameter plane of O(n, alpha)");
  c_param->add_option("--n", param.n, "Order n of z^n - 1")->capture_default_str();
  add_grid_options(c_param, param.grid);
  c_param->add_option("-o,--output", param.output, "Output PPM path")->required();
  c_param->add_option("--dump", param.dump, "Also write the per-pixel classification here");
  common_options(c_param);

  CLI::App* c_probe = app.add_subcommand("probe", "Connectivity of the immediate basin of 1");
  c_probe->add_option("--n", probe.n, "Order n of z^n - 1")->capture_default_str();
  c_probe->add_option("--alpha", probe.alpha, "Family parameter, e.g. 10+0i")->required();
  c_probe->add_option("--resolution", probe.resolution, "Grid side in pixels")->capture_default_str();
  c_probe->add_option("--window-scale", probe.window_scale,
                      "Window half-width over the farthest point of interest")
      ->capture_default_str();
  c_probe->add_option("--max-iter", probe.max_iter, "Iteration cap per orbit")->capture_default_str();
  c_probe->add_option("--conv-tol", probe.conv_tol, "Convergence distance")->capture_default_str();
  common_options(c_probe);

  CLI::App* c_verify = app.add_subcommand("verify", "Numerical lemma checks as JSON lines");
  c_verify->add_option("--lemma", verify.lemma,
                       "escape-b, critical-value-b, zero-interval, escape-r, segment, conjugacies");
  c_verify->add_flag("--all", verify.all, "Run every check that applies to --n/--alpha");
  c_verify->add_option("--n", verify.n, "Order n")->capture_default_str();
  c_verify->add_option("--alpha", verify.alpha, "Family parameter");
  c_verify->add_option("--a", verify.a, "Parameter of B (default 2(alpha-1))");
  c_verify->add_option("--c", verify.c, "Constant for the z^n + c conjugacy")->capture_default_str();
  c_verify->add_option("--samples", verify.samples, "Random samples per check")->capture_default_str();
  c_verify->add_option("--segment-samples", verify.segment_samples, "Points on the segment")
      ->capture_default_str();
  c_verify->add_option("--seed", verify.seed, "splitmix64 seed")->capture_default_str();
  common_options(c_verify);

  CLI::App* c_pre = app.add_subcommand("preimages", "Preimages of a point, with multiplicities");
  add_map_options(c_pre, pre.map);
  c_pre->add_option("--w", pre.w, "Target point, complex or inf")->required();
  common_options(c_pre);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (common.workers < 0) throw UsageError("--workers must be >= 0");
    if (c_dyn->parsed()) return dyn.run(common, out);
    if (c_param->parsed()) return param.run(common, out);
    if (c_probe->parsed()) return probe.run(common, out);
    if (c_verify->parsed()) return verify.run(common, out);
    return pre.run(common, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DegenerateParameter& e) {
    err << "error: degenerate parameter: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DegenerateCriticalPoints& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace chdyn::cli
