#pragma once

#include <vector>

#include "chdyn/error.hpp"
#include "chdyn/extended_complex.hpp"
#include "chdyn/maps.hpp"
#include "chdyn/polynomial.hpp"

namespace chdyn {

inline constexpr double kRootTol = 1e-10;
inline constexpr double kClusterTol = 1e-6;

/// Roots of one polynomial, sorted lexicographically by (re, im).
///
/// residuals[i] = |p(roots[i])|. A root is converged when its residual is
/// within kRootTol of the rounding scale sum_k |c_k| |root|^k.
struct RootSet {
  std::vector<Complex> roots;
  std::vector<double> residuals;
  std::vector<bool> converged;

  [[nodiscard]] bool all_converged() const;
  [[nodiscard]] std::size_t size() const { return roots.size(); }

  struct Cluster {
    Complex center;
    int multiplicity;
    double residual;
  };
  /// Roots grouped within `tol` of each other, in the same order.
  [[nodiscard]] std::vector<Cluster> clusters(double tol = kClusterTol) const;
  /// Multiplicity of the cluster nearest to z within `tol`, 0 if none.
  [[nodiscard]] int multiplicity_near(Complex z, double tol = kClusterTol) const;
};

class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, RootSet partial)
      : Error(what), partial_(std::move(partial)) {}
  [[nodiscard]] const RootSet& partial() const { return partial_; }

 private:
  RootSet partial_;
};

struct RootFinderOptions {
  int max_sweeps = 500;
  double tol = kRootTol;
};

/// All roots by Aberth-Ehrlich simultaneous iteration.
///
/// Exact zero roots are split off first; near-coincident roots that pass a
/// derivative test are snapped to their common mean so multiple roots come
/// back as exact repeats. Throws NonConvergence with the partial result.
RootSet find_roots(const Polynomial& p, const RootFinderOptions& options = {});

/// P - w Q for finite w, Q for w = infinity, where spec = P/Q.
Polynomial preimage_polynomial(const MapSpec& spec, const ExtendedComplex& w);
RootSet preimages(const MapSpec& spec, const ExtendedComplex& w,
                  const RootFinderOptions& options = {});

/// Synthetic division by (z - root), `multiplicity` times. Each step first
/// checks |p(root)| <= tol * scale and throws RootNotPresent otherwise.
Polynomial deflate(const Polynomial& p, Complex root, int multiplicity, double tol = kRootTol);

}  // namespace chdyn
