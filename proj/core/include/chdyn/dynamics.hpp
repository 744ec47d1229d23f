#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "chdyn/extended_complex.hpp"
#include "chdyn/maps.hpp"

namespace chdyn {

struct ConvergedToRoot {
  int index;
  int iterations;
  friend bool operator==(const ConvergedToRoot&, const ConvergedToRoot&) = default;
};

struct ConvergedToCycle {
  int period;
  ExtendedComplex representative;
  int iterations;
  friend bool operator==(const ConvergedToCycle&, const ConvergedToCycle&) = default;
};

struct Escaped {
  int iterations;
  friend bool operator==(const Escaped&, const Escaped&) = default;
};

struct Undecided {
  friend bool operator==(const Undecided&, const Undecided&) = default;
};

using OrbitOutcome = std::variant<ConvergedToRoot, ConvergedToCycle, Escaped, Undecided>;

/// Short tag: "root", "cycle", "escaped" or "undecided".
std::string outcome_tag(const OrbitOutcome& outcome);
/// Iteration count, 0 for Undecided.
int outcome_iterations(const OrbitOutcome& outcome);
/// Root index for ConvergedToRoot, -1 otherwise.
int outcome_root(const OrbitOutcome& outcome);
/// Same kind of outcome and, for roots, the same index. Iteration counts are ignored.
bool same_class(const OrbitOutcome& a, const OrbitOutcome& b);

inline constexpr int kCycleBurnIn = 50;
inline constexpr int kMaxCyclePeriod = 8;
inline constexpr int kConsecutiveHits = 3;

struct OrbitConfig {
  int max_iter = 2000;
  double conv_tol = 1e-9;
  /// Orbits with |z| > escape_radius count as escaped. Unset: no escape test.
  std::optional<double> escape_radius;
};

/// Iterates spec from z0 and classifies the orbit.
///
/// A root is reached when kConsecutiveHits successive iterates lie within
/// conv_tol of it; the reported iteration count is the index of the first of
/// them (z0 has index 0). Cycles of period <= kMaxCyclePeriod are looked for
/// after kCycleBurnIn iterations. Arithmetic failures along the orbit give Undecided.
OrbitOutcome classify_orbit(const MapSpec& spec, const ExtendedComplex& z0,
                            std::span<const Complex> targets, const OrbitConfig& cfg);

struct GridWindow {
  double re_min, re_max, im_min, im_max;
  int width, height;

  /// Throws InvalidArgument unless re_min < re_max, im_min < im_max and sizes are positive.
  void validate() const;
  [[nodiscard]] double dx() const { return (re_max - re_min) / width; }
  [[nodiscard]] double dy() const { return (im_max - im_min) / height; }
  /// Center of pixel (i, j); row 0 is the top edge (im_max).
  [[nodiscard]] Complex pixel_center(int i, int j) const;
  /// The pixel containing z, or nullopt outside the window.
  [[nodiscard]] std::optional<std::pair<int, int>> pixel_of(Complex z) const;
  [[nodiscard]] std::size_t pixel_count() const {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
  friend bool operator==(const GridWindow&, const GridWindow&) = default;
};

struct ExecutionConfig {
  /// Worker threads; 0 means one per hardware thread. Never affects results.
  int workers = 0;
};

struct ClassificationGrid {
  GridWindow window;
  std::vector<OrbitOutcome> cells;  // row-major

  [[nodiscard]] const OrbitOutcome& at(int i, int j) const {
    return cells[static_cast<std::size_t>(j) * static_cast<std::size_t>(window.width) +
                 static_cast<std::size_t>(i)];
  }
};

/// Classifies every pixel center with `classify`, tile by tile.
ClassificationGrid classify_pixels(const GridWindow& window, const ExecutionConfig& exec,
                                   const std::function<OrbitOutcome(Complex)>& classify);

ClassificationGrid classify_grid(const MapSpec& spec, const GridWindow& window,
                                 std::span<const Complex> targets, const OrbitConfig& cfg,
                                 const ExecutionConfig& exec = {});

/// A set of pixels of one grid.
class PixelMask {
 public:
  PixelMask(int width, int height)
      : width_(width), height_(height),
        bits_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0) {}
  [[nodiscard]] bool contains(int i, int j) const {
    return i >= 0 && j >= 0 && i < width_ && j < height_ && bits_[index(i, j)] != 0;
  }
  void insert(int i, int j) { bits_[index(i, j)] = 1; }
  [[nodiscard]] std::size_t count() const;
  /// Row-major pixel indices j * width + i, ascending.
  [[nodiscard]] std::vector<std::size_t> indices() const;
  [[nodiscard]] int width() const { return width_; }
  [[nodiscard]] int height() const { return height_; }

 private:
  [[nodiscard]] std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(i);
  }
  int width_, height_;
  std::vector<std::uint8_t> bits_;
};

/// 4-connected flood fill over pixels classified ConvergedToRoot(root_index),
/// seeded at the pixel of anchor. Throws PointOutsideWindow or AnchorMisclassified.
PixelMask immediate_component(const ClassificationGrid& grid, Complex anchor, int root_index);

/// The same over Escaped pixels.
PixelMask escaped_component(const ClassificationGrid& grid, Complex anchor);

enum class Ternary { no, yes, undecided };
std::string to_string(Ternary t);

/// Whether point's pixel lies in component. Undecided when that pixel and one of
/// its 4-neighbors disagree about membership, i.e. the point sits on the
/// component's pixel boundary.
Ternary membership(const PixelMask& component, const GridWindow& window, Complex point);

/// Finite superattracting targets of the family: the roots of the iterated
/// polynomial for O, Oc, NewtonFn and GenericCH; 0 for B; the images of the
/// roots of unity other than 1 for R. Empty for Rational.
std::vector<Complex> default_targets(const MapSpec& spec);

/// 2|a| for B and n|alpha| for R, where the basin of infinity is known to
/// contain everything outside the disk. Unset for the other families.
std::optional<double> default_escape_radius(const MapSpec& spec);

/// Grid-approximate test of whether point lies in the immediate basin of root.
/// A point whose own orbit settles on another target, a cycle or an escape is
/// answered no without consulting the grid.
///
/// For a finite root the window is in z coordinates. For root = infinity the
/// map is conjugated by w = 1/z and both window and flood fill live in the w
/// chart, where the root sits at w = 0; point is mapped to 1/point.
Ternary in_immediate_basin(const MapSpec& spec, const ExtendedComplex& point,
                           const ExtendedComplex& root, const GridWindow& window,
                           const OrbitConfig& cfg, const ExecutionConfig& exec = {});

}  // namespace chdyn
