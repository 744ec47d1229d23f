#include "chdyn/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "chdyn/error.hpp"
#include "chdyn/parallel.hpp"
#include "json.hpp"

namespace chdyn {

namespace {

constexpr double kMinBrightness = 0.3;

std::uint8_t channel(double unit) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(unit, 0.0, 1.0) * 255.0));
}

Rgb hue_color(double hue, double value) {
  const double h = std::fmod(hue, 360.0) / 60.0;
  const int sector = static_cast<int>(h) % 6;
  const double f = h - std::floor(h);
  const double rising = value * f;
  const double falling = value * (1.0 - f);
  switch (sector) {
    case 0:
      return {channel(value), channel(rising), 0};
    case 1:
      return {channel(falling), channel(value), 0};
    case 2:
      return {0, channel(value), channel(rising)};
    case 3:
      return {0, channel(falling), channel(value)};
    case 4:
      return {channel(rising), 0, channel(value)};
    default:
      return {channel(value), 0, channel(falling)};
  }
}

}  // namespace

double iteration_shade(int iterations, int max_iter) {
  if (max_iter <= 0) return 0.0;
  const double t = std::log1p(static_cast<double>(std::max(iterations, 0))) /
                   std::log1p(static_cast<double>(max_iter));
  return std::clamp(t, 0.0, 1.0);
}

Palette Palette::for_roots(int count) {
  Palette p;
  for (int k = 0; k < count; ++k) p.root_hues.push_back(360.0 * k / count);
  return p;
}

Rgb Palette::color(const OrbitOutcome& outcome, int max_iter) const {
  const double shade = iteration_shade(outcome_iterations(outcome), max_iter);
  if (const auto* r = std::get_if<ConvergedToRoot>(&outcome)) {
    if (r->index < 0 || static_cast<std::size_t>(r->index) >= root_hues.size()) return undecided;
    const double value = 1.0 - (1.0 - kMinBrightness) * shade;
    return hue_color(root_hues[static_cast<std::size_t>(r->index)], value);
  }
  if (std::holds_alternative<ConvergedToCycle>(outcome)) {
    const auto level = static_cast<std::uint8_t>(110 + std::lround(100.0 * (1.0 - shade)));
    return {level, level, level};
  }
  if (std::holds_alternative<Escaped>(outcome)) {
    const auto level = static_cast<std::uint8_t>(60 + std::lround(120.0 * (1.0 - shade)));
    return {level, level, 255};
  }
  return undecided;
}

Image colorize(const ClassificationGrid& grid, const Palette& palette, int max_iter,
               const ExecutionConfig& exec) {
  const GridWindow& w = grid.window;
  Image img(w.width, w.height);
  for_each_tile(w.width, w.height, exec.workers, [&](const Tile& tile) {
    for (int j = tile.y0; j < tile.y1; ++j) {
      for (int i = tile.x0; i < tile.x1; ++i) img.at(i, j) = palette.color(grid.at(i, j), max_iter);
    }
  });
  return img;
}

ClassificationGrid classify_dynamical(const MapSpec& spec, const GridWindow& window,
                                      const RenderConfig& cfg) {
  const std::vector<Complex> targets = default_targets(spec);
  OrbitConfig orbit = cfg.orbit;
  if (!orbit.escape_radius) orbit.escape_radius = default_escape_radius(spec);
  return classify_grid(spec, window, targets, orbit, cfg.exec);
}

Image render_dynamical(const MapSpec& spec, const GridWindow& window, const Palette& palette,
                       const RenderConfig& cfg) {
  return colorize(classify_dynamical(spec, window, cfg), palette, cfg.orbit.max_iter, cfg.exec);
}

ClassificationGrid classify_parameter(int n, const GridWindow& window, const RenderConfig& cfg) {
  if (n < 2) throw InvalidArgument("parameter plane needs n >= 2");
  const std::vector<Complex> targets = roots_of_unity(n);
  return classify_pixels(window, cfg.exec, [&](Complex alpha) -> OrbitOutcome {
    if (degenerate_check(n, alpha)) return Undecided{};
    try {
      const MapSpec spec = MapSpec::o_family(n, alpha);
      return classify_orbit(spec, principal_free_critical_point(spec), targets, cfg.orbit);
    } catch (const Error&) {
      return Undecided{};
    }
  });
}

Image render_parameter(int n, const GridWindow& window, const Palette& palette,
                       const RenderConfig& cfg) {
  return colorize(classify_parameter(n, window, cfg), palette, cfg.orbit.max_iter, cfg.exec);
}

Image side_by_side(const Image& a, const Image& b) {
  Image out(a.width + b.width, std::max(a.height, b.height));
  for (int j = 0; j < a.height; ++j) {
    for (int i = 0; i < a.width; ++i) out.at(i, j) = a.at(i, j);
  }
  for (int j = 0; j < b.height; ++j) {
    for (int i = 0; i < b.width; ++i) out.at(a.width + i, j) = b.at(i, j);
  }
  return out;
}

std::vector<std::uint8_t> encode_ppm(const Image& img) {
  const std::string header =
      "P6\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() + 3 * img.pixels.size());
  for (const Rgb& p : img.pixels) {
    out.push_back(p.r);
    out.push_back(p.g);
    out.push_back(p.b);
  }
  return out;
}

void write_ppm(const Image& img, const std::string& path) {
  const std::vector<std::uint8_t> bytes = encode_ppm(img);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing " + path);
}

void write_grid_dump(const ClassificationGrid& grid, std::ostream& out) {
  for (std::size_t k = 0; k < grid.cells.size(); ++k) {
    const OrbitOutcome& o = grid.cells[k];
    nlohmann::ordered_json j;
    j["pixel"] = k;
    j["outcome"] = outcome_tag(o);
    j["iterations"] = outcome_iterations(o);
    if (const auto* r = std::get_if<ConvergedToRoot>(&o)) j["root"] = r->index;
    if (const auto* c = std::get_if<ConvergedToCycle>(&o)) j["period"] = c->period;
    out << j.dump() << '\n';
  }
}

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::uint8_t b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t image_hash(const Image& img) { return fnv1a64(encode_ppm(img)); }

std::uint64_t grid_hash(const ClassificationGrid& grid) {
  std::vector<std::uint8_t> bytes;
  bytes.reserve(grid.cells.size() * 9);
  auto put = [&](std::int32_t v) {
    for (int s = 0; s < 32; s += 8) bytes.push_back(static_cast<std::uint8_t>(v >> s));
  };
  for (const OrbitOutcome& o : grid.cells) {
    bytes.push_back(static_cast<std::uint8_t>(o.index()));
    put(outcome_iterations(o));
    put(outcome_root(o));
  }
  return fnv1a64(bytes);
}

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace chdyn
