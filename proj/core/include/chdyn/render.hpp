#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "chdyn/dynamics.hpp"
#include "chdyn/maps.hpp"

namespace chdyn {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

struct Image {
  int width = 0;
  int height = 0;
  std::vector<Rgb> pixels;  // row-major

  Image() = default;
  Image(int w, int h) : width(w), height(h), pixels(static_cast<std::size_t>(w) * h) {}
  [[nodiscard]] Rgb& at(int i, int j) {
    return pixels[static_cast<std::size_t>(j) * static_cast<std::size_t>(width) +
                  static_cast<std::size_t>(i)];
  }
  [[nodiscard]] const Rgb& at(int i, int j) const {
    return pixels[static_cast<std::size_t>(j) * static_cast<std::size_t>(width) +
                  static_cast<std::size_t>(i)];
  }
};

/// Root k gets a fully saturated hue, darkened with the iteration count.
/// Cycles are gray, escapes a pale blue ramp, undecided pixels black.
struct Palette {
  std::vector<double> root_hues;  // degrees
  Rgb undecided{0, 0, 0};

  /// Evenly spaced hues starting at red.
  static Palette for_roots(int count);

  [[nodiscard]] Rgb color(const OrbitOutcome& outcome, int max_iter) const;
};

/// log(1 + iterations) / log(1 + max_iter), clamped to [0, 1].
double iteration_shade(int iterations, int max_iter);

Image colorize(const ClassificationGrid& grid, const Palette& palette, int max_iter,
               const ExecutionConfig& exec = {});

struct RenderConfig {
  OrbitConfig orbit{256, 1e-9, std::nullopt};
  ExecutionConfig exec;
};

/// Dynamical plane of spec over window, using default_targets(spec) and, when
/// the config leaves it unset, default_escape_radius(spec).
ClassificationGrid classify_dynamical(const MapSpec& spec, const GridWindow& window,
                                      const RenderConfig& cfg);
Image render_dynamical(const MapSpec& spec, const GridWindow& window, const Palette& palette,
                       const RenderConfig& cfg);

/// Parameter plane of O(n, alpha) for alpha over window: the fate of the
/// principal free critical point. Degenerate alpha are left Undecided.
ClassificationGrid classify_parameter(int n, const GridWindow& window, const RenderConfig& cfg);
Image render_parameter(int n, const GridWindow& window, const Palette& palette,
                       const RenderConfig& cfg);

/// a and b next to each other, b on the right; the shorter one is padded with black.
Image side_by_side(const Image& a, const Image& b);

/// Binary PPM (P6, maxval 255).
std::vector<std::uint8_t> encode_ppm(const Image& img);
/// Throws IoError naming the path.
void write_ppm(const Image& img, const std::string& path);

/// One JSON object per pixel: index, outcome tag, iterations, and root index or period.
void write_grid_dump(const ClassificationGrid& grid, std::ostream& out);

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes);
std::uint64_t image_hash(const Image& img);
/// Hash of the outcome classes and iteration counts of every pixel.
std::uint64_t grid_hash(const ClassificationGrid& grid);
/// 16 lowercase hex digits.
std::string hex64(std::uint64_t h);

}  // namespace chdyn
