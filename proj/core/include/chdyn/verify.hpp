#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "chdyn/dynamics.hpp"
#include "chdyn/extended_complex.hpp"
#include "chdyn/maps.hpp"

namespace chdyn {

inline constexpr std::uint64_t kDefaultSeed = 0x5eed2024ULL;

/// splitmix64.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();

 private:
  std::uint64_t state_;
};

using ReportValue = std::variant<bool, std::int64_t, double, std::string, ExtendedComplex>;
using ReportFields = std::vector<std::pair<std::string, ReportValue>>;

struct LemmaReport {
  std::string lemma;
  ReportFields parameters;
  std::uint64_t seed = kDefaultSeed;
  std::int64_t samples = 0;
  /// Smallest margin over all checks; the report passes iff it is positive.
  double worst_margin = 0.0;
  bool pass = false;
  /// Points where a check failed (at most kMaxWitnesses).
  std::vector<ExtendedComplex> witnesses;
  /// Check-specific values, in insertion order.
  ReportFields details;

  /// One JSON object on one line, keys in a fixed order.
  [[nodiscard]] std::string to_json_line() const;
};

inline constexpr std::size_t kMaxWitnesses = 16;

/// |B_a(z)| > |z| for n_samples random z with |z| in (2a, 4a].
LemmaReport verify_escape_bound_b(double a, int n_samples, std::uint64_t seed = kDefaultSeed);
/// The same check at caller-chosen points.
LemmaReport verify_escape_bound_b_at(double a, std::span<const Complex> points);

/// a/2 < c_+ < a and |B_a(c_+)| > a^2/162. The bound |B_a(c_+)| > 2a and the
/// escape of the orbit of c_+ are checked for a > 400; margins of both the
/// 324 and 400 thresholds are recorded.
LemmaReport verify_critical_value_escape(double a);

/// S(z) = -n z^n + (alpha(n-1) - n) sum_{k<n} C(n,k) z^k.
Polynomial zero_interval_polynomial(int n, double alpha);

struct ZeroInterval {
  double lo, hi;  // alpha(n-1) - n and alpha(n-1)
  double root;
};
/// Sign check at both ends and bisection to machine precision. Throws SignCheckFailed.
ZeroInterval locate_zero(int n, double alpha);

/// Sign change of S on (alpha(n-1) - n, alpha(n-1)) and the bisected root as a zero of R.
LemmaReport verify_zero_interval(int n, double alpha);

inline constexpr double kEscapeLadder[] = {10.0, 50.0, 100.0, 500.0, 1000.0, 5000.0};

/// |R(z)| > |z| for random z with |z| in (n alpha, 2 n alpha]. Also reports the
/// smallest ladder value of alpha at which every sample passes.
LemmaReport verify_escape_bound_r(int n, double alpha, int n_samples,
                                  std::uint64_t seed = kDefaultSeed);

struct SegmentConstants {
  int alpha_degree_num;  // top alpha-degree of N(t, alpha)
  int alpha_degree_den;  // and of M(t, alpha)
  double c_min;          // min |c(t)| over t in [-1, 1]
  double d_max;          // max |d(t)|
  double kappa;          // c_min / (2 d_max)
};
/// Leading alpha-coefficients of numerator c(t) and denominator d(t) of
/// T(z) = R(z) / (1 + z)^2 on z = n alpha (1/2 + i t), sampled at 10001 points.
SegmentConstants segment_constants(int n);

/// On z = n alpha (1/2 + i t), t in [-1, 1]: |R(z)| > n alpha and |T(z)| > kappa;
/// the segment ends lie outside the disk of radius n alpha; the zero of S lies in
/// (n alpha / 2, n alpha).
LemmaReport verify_segment(int n, double alpha, int n_samples);

/// Residuals of eta_c(Oc(z)) = O(eta_c(z)), O(xi z) = xi O(z), M_2 o O_2 = B o M_2,
/// M o O = R o M and ch_step = O at random points; passes when all are <= 1e-9.
LemmaReport verify_conjugacies(int n, Complex alpha, Complex c, int n_samples,
                               std::uint64_t seed = kDefaultSeed);

inline constexpr double kConjugacyTol = 1e-9;
inline constexpr double kSymmetryThreshold = 0.99;

/// Agreement of each pixel with the pixel nearest to its rotation by e^{2 pi i/n},
/// roots permuted accordingly. Pixels next to a class boundary, and pixels
/// whose rotation leaves the window, are skipped. Throws WindowNotSymmetric
/// unless the window is centered at 0.
LemmaReport symmetry_report(const ClassificationGrid& grid, int n,
                            std::span<const Complex> targets);
LemmaReport symmetry_report(const ClassificationGrid& grid, int n);

}  // namespace chdyn
