#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "collfree/geometry.hpp"

namespace collfree {

/// A finite window of a moving configuration. Conclusions drawn from it hold
/// for the pairs present in the window, not for any infinite extension.
struct MovingConfiguration {
  std::vector<Particle> particles;
  /// Claimed lower bound on pairwise initial distances.
  double discreteness_radius = 1.0;
};

/// Builds a configuration and checks it exhaustively: finite data, no
/// duplicated particles, all initial distances >= discreteness_radius.
MovingConfiguration make_configuration(std::vector<Particle> particles, double discreteness_radius,
                                       unsigned workers = 0);

/// Smallest pairwise initial distance (+inf for fewer than two particles).
double measured_discreteness(std::span<const Particle> particles, unsigned workers = 0);

struct PairWitness {
  std::size_t i = 0;
  std::size_t j = 0;
  PairApproach approach;
};

struct HardCoreReport {
  /// Minimum over all pairs of the closest-approach distance; +inf if no pairs.
  double min_alltime_distance = 0.0;
  std::optional<PairWitness> witness;
  double threshold = 1.0;
  /// min_alltime_distance - threshold.
  double margin = 0.0;
  bool passed = false;
  std::size_t pair_count = 0;
};

/// Positions x + t v(x), in input order.
std::vector<Vec2> slice_at(const MovingConfiguration& config, double t);

/// Exact all-time hard-core check over every pair. The witness is the
/// lexicographically smallest minimizing pair. Passes when the margin is at
/// least -kMarginTolerance.
HardCoreReport verify_hardcore(const MovingConfiguration& config, double threshold = 1.0,
                               unsigned workers = 0);

struct Frame {
  double time = 0.0;
  std::vector<Vec2> positions;
};

/// `frames` uniformly spaced slices on [t0, t1], endpoints included.
std::vector<Frame> snapshot_series(const MovingConfiguration& config, double t0, double t1, int frames);

}  // namespace collfree
