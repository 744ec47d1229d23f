#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chdyn/dynamics.hpp"

namespace chdyn {

enum class Connectivity { SimplyConnectedCase1, SimplyConnectedCase2, InfinitelyConnected, Undecided };
std::string to_string(Connectivity c);

struct PreimageCheck {
  Complex point;
  Ternary in_immediate;
};

struct ConnectivityEvidence {
  Ternary critical_in_immediate = Ternary::undecided;
  /// yes if some extra preimage of 1 is in the immediate basin, no if none is.
  Ternary extra_preimage_in_immediate = Ternary::undecided;
  std::vector<PreimageCheck> preimages_checked;
  Complex critical_point{};
  /// Fate of the free critical orbit, for diagnostics.
  std::optional<OrbitOutcome> critical_orbit;
  /// The critical orbit converges to a root of unity other than 1.
  bool critical_converges_elsewhere = false;
  std::optional<GridWindow> window;
};

struct ConnectivityVerdict {
  Connectivity verdict = Connectivity::Undecided;
  ConnectivityEvidence evidence;
};

/// The trichotomy for the immediate basin of 1:
///   critical no                -> SimplyConnectedCase1
///   critical yes, preimage yes -> SimplyConnectedCase2
///   critical yes, preimage no  -> InfinitelyConnected
///   anything undecided on the deciding branch -> Undecided
Connectivity verdict_from_evidence(Ternary critical, Ternary extra_preimage);

/// Combines per-preimage answers: yes if any is yes, no if all are no.
Ternary combine_preimages(const std::vector<PreimageCheck>& checks);

struct ProbeConfig {
  int resolution = 1024;
  /// Half-width of the square window relative to the farthest point of interest.
  double window_scale = 1.5;
  OrbitConfig orbit{2000, 1e-9, std::nullopt};
  ExecutionConfig exec;
};

/// Decides the connectivity of the immediate basin of z = 1 under O(n, alpha)
/// from one classified grid. Throws DegenerateParameter for degenerate alpha.
ConnectivityVerdict connectivity_probe(int n, Complex alpha, const ProbeConfig& cfg = {});

}  // namespace chdyn
