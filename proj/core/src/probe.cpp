#include "chdyn/probe.hpp"

#include <algorithm>
#include <cmath>

#include "chdyn/error.hpp"
#include "chdyn/polyroots.hpp"

namespace chdyn {

std::string to_string(Connectivity c) {
  switch (c) {
    case Connectivity::SimplyConnectedCase1:
      return "SimplyConnectedCase1";
    case Connectivity::SimplyConnectedCase2:
      return "SimplyConnectedCase2";
    case Connectivity::InfinitelyConnected:
      return "InfinitelyConnected";
    case Connectivity::Undecided:
      break;
  }
  return "Undecided";
}

Connectivity verdict_from_evidence(Ternary critical, Ternary extra_preimage) {
  if (critical == Ternary::no) return Connectivity::SimplyConnectedCase1;
  if (critical == Ternary::undecided) return Connectivity::Undecided;
  if (extra_preimage == Ternary::yes) return Connectivity::SimplyConnectedCase2;
  if (extra_preimage == Ternary::no) return Connectivity::InfinitelyConnected;
  return Connectivity::Undecided;
}

Ternary combine_preimages(const std::vector<PreimageCheck>& checks) {
  bool undecided = false;
  for (const auto& c : checks) {
    if (c.in_immediate == Ternary::yes) return Ternary::yes;
    if (c.in_immediate == Ternary::undecided) undecided = true;
  }
  return undecided ? Ternary::undecided : Ternary::no;
}

ConnectivityVerdict connectivity_probe(int n, Complex alpha, const ProbeConfig& cfg) {
  if (cfg.resolution < 2) throw InvalidArgument("probe resolution must be >= 2");
  const MapSpec spec = MapSpec::o_family(n, alpha);
  const std::vector<Complex> targets = roots_of_unity(n);

  // c1: the free critical point closest to the ray through 1.
  const Complex c1 = principal_free_critical_point(spec);

  // Preimages of 1 other than 1 itself (which has local degree 3).
  const Polynomial extra = deflate(preimage_polynomial(spec, Complex{1.0}), Complex{1.0}, 3, 1e-8);
  std::vector<Complex> points;
  if (extra.degree() >= 1) points = find_roots(extra).roots;

  double reach = std::max(1.0, std::abs(c1));
  for (const Complex& p : points) reach = std::max(reach, std::abs(p));
  const double half = cfg.window_scale * reach;
  const GridWindow window{-half, half, -half, half, cfg.resolution, cfg.resolution};

  ConnectivityVerdict out;
  ConnectivityEvidence& ev = out.evidence;
  ev.window = window;
  ev.critical_point = c1;
  ev.critical_orbit = classify_orbit(spec, c1, targets, cfg.orbit);
  const int fate = outcome_root(*ev.critical_orbit);
  ev.critical_converges_elsewhere = fate > 0;

  const ClassificationGrid grid = classify_grid(spec, window, targets, cfg.orbit, cfg.exec);
  const PixelMask basin = immediate_component(grid, Complex{1.0}, 0);
  const bool settles_elsewhere = !std::holds_alternative<Undecided>(*ev.critical_orbit) && fate != 0;
  ev.critical_in_immediate = settles_elsewhere ? Ternary::no : membership(basin, window, c1);
  for (const Complex& p : points) ev.preimages_checked.push_back({p, membership(basin, window, p)});
  ev.extra_preimage_in_immediate = combine_preimages(ev.preimages_checked);
  out.verdict = verdict_from_evidence(ev.critical_in_immediate, ev.extra_preimage_in_immediate);
  return out;
}

}  // namespace chdyn
