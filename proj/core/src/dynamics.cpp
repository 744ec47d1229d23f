#include "chdyn/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "chdyn/error.hpp"
#include "chdyn/parallel.hpp"
#include "chdyn/polyroots.hpp"

namespace chdyn {

namespace {

// Beyond this modulus the reciprocal chart treats an orbit as having reached w = infinity.
constexpr double kChartEscape = 1e150;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

int nearest_target(const ExtendedComplex& z, std::span<const Complex> targets, double tol) {
  if (z.is_infinite()) return -1;
  const Complex v = z.value();
  for (std::size_t k = 0; k < targets.size(); ++k) {
    if (std::abs(v - targets[k]) < tol) return static_cast<int>(k);
  }
  return -1;
}

PixelMask flood_fill(const ClassificationGrid& grid, int i0, int j0,
                     const std::function<bool(const OrbitOutcome&)>& member) {
  const GridWindow& w = grid.window;
  PixelMask mask(w.width, w.height);
  std::vector<std::pair<int, int>> stack{{i0, j0}};
  mask.insert(i0, j0);
  constexpr std::array<std::pair<int, int>, 4> kSteps{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
  while (!stack.empty()) {
    const auto [i, j] = stack.back();
    stack.pop_back();
    for (const auto& [di, dj] : kSteps) {
      const int ni = i + di;
      const int nj = j + dj;
      if (ni < 0 || nj < 0 || ni >= w.width || nj >= w.height) continue;
      if (mask.contains(ni, nj) || !member(grid.at(ni, nj))) continue;
      mask.insert(ni, nj);
      stack.emplace_back(ni, nj);
    }
  }
  return mask;
}

std::pair<int, int> anchor_pixel(const GridWindow& window, Complex anchor) {
  const auto pixel = window.pixel_of(anchor);
  if (!pixel) throw PointOutsideWindow("anchor " + to_string(ExtendedComplex(anchor)) +
                                       " lies outside the window");
  return *pixel;
}

}  // namespace

std::string outcome_tag(const OrbitOutcome& outcome) {
  return std::visit(overloaded{[](const ConvergedToRoot&) { return std::string("root"); },
                               [](const ConvergedToCycle&) { return std::string("cycle"); },
                               [](const Escaped&) { return std::string("escaped"); },
                               [](const Undecided&) { return std::string("undecided"); }},
                    outcome);
}

int outcome_iterations(const OrbitOutcome& outcome) {
  return std::visit(overloaded{[](const ConvergedToRoot& o) { return o.iterations; },
                               [](const ConvergedToCycle& o) { return o.iterations; },
                               [](const Escaped& o) { return o.iterations; },
                               [](const Undecided&) { return 0; }},
                    outcome);
}

int outcome_root(const OrbitOutcome& outcome) {
  if (const auto* r = std::get_if<ConvergedToRoot>(&outcome)) return r->index;
  return -1;
}

bool same_class(const OrbitOutcome& a, const OrbitOutcome& b) {
  return a.index() == b.index() && outcome_root(a) == outcome_root(b);
}

OrbitOutcome classify_orbit(const MapSpec& spec, const ExtendedComplex& z0,
                            std::span<const Complex> targets, const OrbitConfig& cfg) {
  if (cfg.max_iter < 1) throw InvalidArgument("max_iter must be >= 1");
  if (!(cfg.conv_tol > 0.0)) throw InvalidArgument("conv_tol must be positive");

  constexpr int kRing = kMaxCyclePeriod + 1;
  std::array<ExtendedComplex, kRing> history{};
  std::array<int, kMaxCyclePeriod + 1> cycle_hits{};
  int root_run = 0;
  int root_index = -1;
  ExtendedComplex z = z0;

  try {
    for (int k = 0;; ++k) {
      if (cfg.escape_radius && z.abs() > *cfg.escape_radius) return Escaped{k};

      const int hit = nearest_target(z, targets, cfg.conv_tol);
      if (hit >= 0 && hit == root_index) {
        ++root_run;
      } else {
        root_index = hit;
        root_run = hit >= 0 ? 1 : 0;
      }
      if (root_run >= kConsecutiveHits) return ConvergedToRoot{root_index, k - kConsecutiveHits + 1};

      history[static_cast<std::size_t>(k % kRing)] = z;
      if (k >= kCycleBurnIn) {
        for (int p = 1; p <= kMaxCyclePeriod; ++p) {
          const ExtendedComplex& past = history[static_cast<std::size_t>((k - p) % kRing)];
          if (sphere_aware_distance(z, past) < cfg.conv_tol) {
            if (++cycle_hits[static_cast<std::size_t>(p)] >= kConsecutiveHits) {
              return ConvergedToCycle{p, z, k - kConsecutiveHits + 1};
            }
          } else {
            cycle_hits[static_cast<std::size_t>(p)] = 0;
          }
        }
        // The smallest matching period wins: a p-cycle also matches at 2p.
      }

      if (k == cfg.max_iter) break;
      z = eval(spec, z);
    }
  } catch (const Error&) {
    return Undecided{};
  }
  return Undecided{};
}

void GridWindow::validate() const {
  if (!(re_min < re_max) || !(im_min < im_max)) {
    throw InvalidArgument("window needs re_min < re_max and im_min < im_max");
  }
  if (width <= 0 || height <= 0) throw InvalidArgument("window size must be positive");
}

Complex GridWindow::pixel_center(int i, int j) const {
  return {re_min + (i + 0.5) * dx(), im_max - (j + 0.5) * dy()};
}

std::optional<std::pair<int, int>> GridWindow::pixel_of(Complex z) const {
  if (z.real() < re_min || z.real() > re_max || z.imag() < im_min || z.imag() > im_max) {
    return std::nullopt;
  }
  const int i = std::min(width - 1, static_cast<int>(std::floor((z.real() - re_min) / dx())));
  const int j = std::min(height - 1, static_cast<int>(std::floor((im_max - z.imag()) / dy())));
  return std::pair{i, j};
}

ClassificationGrid classify_pixels(const GridWindow& window, const ExecutionConfig& exec,
                                   const std::function<OrbitOutcome(Complex)>& classify) {
  window.validate();
  ClassificationGrid grid{window, std::vector<OrbitOutcome>(window.pixel_count(), Undecided{})};
  for_each_tile(window.width, window.height, exec.workers, [&](const Tile& tile) {
    for (int j = tile.y0; j < tile.y1; ++j) {
      for (int i = tile.x0; i < tile.x1; ++i) {
        grid.cells[static_cast<std::size_t>(j) * static_cast<std::size_t>(window.width) +
                   static_cast<std::size_t>(i)] = classify(window.pixel_center(i, j));
      }
    }
  });
  return grid;
}

ClassificationGrid classify_grid(const MapSpec& spec, const GridWindow& window,
                                 std::span<const Complex> targets, const OrbitConfig& cfg,
                                 const ExecutionConfig& exec) {
  return classify_pixels(window, exec,
                         [&](Complex z) { return classify_orbit(spec, z, targets, cfg); });
}

std::size_t PixelMask::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::vector<std::size_t> PixelMask::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < bits_.size(); ++k) {
    if (bits_[k] != 0) out.push_back(k);
  }
  return out;
}

PixelMask immediate_component(const ClassificationGrid& grid, Complex anchor, int root_index) {
  const auto [i, j] = anchor_pixel(grid.window, anchor);
  if (outcome_root(grid.at(i, j)) != root_index) {
    throw AnchorMisclassified("anchor pixel is " + outcome_tag(grid.at(i, j)) +
                              ", expected root " + std::to_string(root_index));
  }
  return flood_fill(grid, i, j,
                    [root_index](const OrbitOutcome& o) { return outcome_root(o) == root_index; });
}

PixelMask escaped_component(const ClassificationGrid& grid, Complex anchor) {
  const auto [i, j] = anchor_pixel(grid.window, anchor);
  const auto escaped = [](const OrbitOutcome& o) { return std::holds_alternative<Escaped>(o); };
  if (!escaped(grid.at(i, j))) {
    throw AnchorMisclassified("anchor pixel is " + outcome_tag(grid.at(i, j)) +
                              ", expected escaped");
  }
  return flood_fill(grid, i, j, escaped);
}

std::string to_string(Ternary t) {
  switch (t) {
    case Ternary::no:
      return "no";
    case Ternary::yes:
      return "yes";
    case Ternary::undecided:
      break;
  }
  return "undecided";
}

Ternary membership(const PixelMask& component, const GridWindow& window, Complex point) {
  const auto pixel = window.pixel_of(point);
  if (!pixel) throw PointOutsideWindow("point " + to_string(ExtendedComplex(point)) +
                                       " lies outside the window");
  const auto [i, j] = *pixel;
  const bool inside = component.contains(i, j);
  constexpr std::array<std::pair<int, int>, 4> kSteps{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
  for (const auto& [di, dj] : kSteps) {
    const int ni = i + di;
    const int nj = j + dj;
    if (ni < 0 || nj < 0 || ni >= window.width || nj >= window.height) continue;
    if (component.contains(ni, nj) != inside) return Ternary::undecided;
  }
  return inside ? Ternary::yes : Ternary::no;
}

std::vector<Complex> default_targets(const MapSpec& spec) {
  switch (spec.kind()) {
    case MapKind::O:
    case MapKind::NewtonFn:
      return roots_of_unity(spec.n());
    case MapKind::Oc: {
      const Complex base = principal_root(-spec.c(), spec.n());
      std::vector<Complex> out;
      for (const Complex& xi : roots_of_unity(spec.n())) out.push_back(base * xi);
      return out;
    }
    case MapKind::GenericCH: {
      std::vector<Complex> out;
      for (const auto& c : find_roots(spec.target_polynomial()).clusters()) out.push_back(c.center);
      return out;
    }
    case MapKind::B:
      return {Complex{}};
    case MapKind::R: {
      const auto roots = roots_of_unity(spec.n());
      std::vector<Complex> out;
      for (std::size_t j = 1; j < roots.size(); ++j) out.push_back(1.0 / (roots[j] - 1.0));
      return out;
    }
    case MapKind::Rational:
      break;
  }
  return {};
}

std::optional<double> default_escape_radius(const MapSpec& spec) {
  if (spec.kind() == MapKind::B) return 2.0 * std::abs(spec.a());
  if (spec.kind() == MapKind::R) return spec.n() * std::abs(spec.alpha());
  return std::nullopt;
}

Ternary in_immediate_basin(const MapSpec& spec, const ExtendedComplex& point,
                           const ExtendedComplex& root, const GridWindow& window,
                           const OrbitConfig& cfg, const ExecutionConfig& exec) {
  window.validate();
  std::vector<Complex> targets;
  OrbitConfig run = cfg;
  Complex seed;
  Complex anchor;
  const MapSpec* map = &spec;
  std::optional<MapSpec> chart;

  if (root.is_infinite()) {
    chart = conjugate(spec, MobiusMap::reciprocal());
    map = &*chart;
    targets.push_back(Complex{});
    for (const Complex& t : default_targets(spec)) {
      if (t != Complex{}) targets.push_back(1.0 / t);
    }
    if (!run.escape_radius) run.escape_radius = kChartEscape;
    if (point.is_infinite()) {
      seed = Complex{};
    } else {
      if (point.value() == Complex{}) return Ternary::no;
      seed = 1.0 / point.value();
    }
    anchor = Complex{};
  } else {
    targets = default_targets(spec);
    if (!run.escape_radius) run.escape_radius = default_escape_radius(spec);
    if (point.is_infinite()) return Ternary::no;
    seed = point.value();
    anchor = root.value();
  }

  auto it = std::find_if(targets.begin(), targets.end(),
                         [&](Complex t) { return std::abs(t - anchor) < cfg.conv_tol; });
  int root_index;
  if (it == targets.end()) {
    targets.push_back(anchor);
    root_index = static_cast<int>(targets.size()) - 1;
  } else {
    root_index = static_cast<int>(it - targets.begin());
  }

  if (!window.pixel_of(seed) || !window.pixel_of(anchor)) {
    throw PointOutsideWindow("point and root must both lie inside the window");
  }
  // An orbit that settles anywhere else cannot lie in the basin at all.
  const OrbitOutcome fate = classify_orbit(*map, seed, targets, run);
  if (!std::holds_alternative<Undecided>(fate) && outcome_root(fate) != root_index) {
    return Ternary::no;
  }
  const ClassificationGrid grid = classify_grid(*map, window, targets, run, exec);
  const PixelMask component = immediate_component(grid, anchor, root_index);
  return membership(component, window, seed);
}

}  // namespace chdyn
