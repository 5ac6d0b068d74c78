#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "collfree/evolution.hpp"
#include "collfree/geometry.hpp"
#include "collfree/parallel.hpp"

namespace collfree {

enum class ProfileKind { Arctan, Tanh, RationalSaturating, TableDriven };

/// A bounded, strictly increasing map from the integers to the reals. The
/// analytic kinds are defined everywhere; a table-driven profile is defined
/// only on the integers it lists and is never extrapolated.
class MonotoneProfile {
 public:
  static MonotoneProfile arctan();
  static MonotoneProfile tanh();
  /// n / (1 + |n|).
  static MonotoneProfile rational_saturating();
  /// Entries must have distinct keys; they are sorted on construction.
  static MonotoneProfile table(std::vector<std::pair<std::int64_t, double>> entries);

  ProfileKind kind() const { return kind_; }
  /// Supremum of |phi|.
  double bound() const { return bound_; }
  const std::vector<std::pair<std::int64_t, double>>& entries() const { return table_; }
  bool covers(std::int64_t n) const;

 private:
  MonotoneProfile(ProfileKind kind, double bound) : kind_(kind), bound_(bound) {}

  ProfileKind kind_;
  double bound_;
  std::vector<std::pair<std::int64_t, double>> table_;
};

/// phi(n). Throws Error{OutOfDomain} when a table does not cover n.
double profile_eval(const MonotoneProfile& phi, std::int64_t n);

struct LatticePoint {
  std::int64_t x1 = 0;
  std::int64_t x2 = 0;

  friend bool operator==(LatticePoint, LatticePoint) = default;
};

/// Integer rectangle [x1_lo, x1_hi] x [x2_lo, x2_hi], bounds inclusive.
struct Window {
  std::int64_t x1_lo = 0;
  std::int64_t x1_hi = 0;
  std::int64_t x2_lo = 0;
  std::int64_t x2_hi = 0;

  /// {-n..n}^2.
  static Window square(std::int64_t n) { return {-n, n, -n, n}; }
  bool empty() const { return x1_lo > x1_hi || x2_lo > x2_hi; }
  std::size_t size() const;
  friend bool operator==(const Window&, const Window&) = default;
};

/// Componentwise profile: w(x1, x2) = (phi(x1), phi(x2)).
Vec2 assign_w(const MonotoneProfile& phi, LatticePoint point);

/// Velocities v = -I w + a for every site of a window, with a common shift a
/// along the first axis that keeps all speeds at least `shift_margin`.
struct FlowAssignment {
  std::vector<LatticePoint> sites;
  std::vector<Vec2> w;
  std::vector<Particle> particles;
  Vec2 shift;
  double speed_min = 0.0;
  double speed_max = 0.0;
  double disk_radius = 0.0;

  /// The particles as a moving configuration with unit discreteness radius.
  MovingConfiguration configuration() const;
};

/// Throws EmptyWindow, NonMonotoneProfile, OutOfDomain (table gaps) or
/// InvalidArgument (negative or non-finite shift margin).
FlowAssignment build_flow(const MonotoneProfile& phi, const Window& window, double shift_margin);

struct VerifyFlowOptions {
  std::uint64_t seed = kDefaultSeed;
  unsigned workers = 0;
  /// Above this many pairs the check samples `sample_budget` random pairs.
  std::size_t exhaustive_limit = 10'000'000;
};

enum class CheckMode { Vacuous, Exhaustive, Sampled };

struct FlowReport {
  CheckMode mode = CheckMode::Vacuous;
  std::size_t pairs_checked = 0;
  std::uint64_t seed = kDefaultSeed;

  /// Minimum closest-approach distance over the checked pairs (+inf if none).
  double min_distance = 0.0;
  std::optional<std::pair<std::size_t, std::size_t>> witness;

  /// Minimum over checked pairs of <x-y, dw> - sum_i |dphi_i|.
  double chain_inner_margin = 0.0;
  /// Minimum over checked pairs of sum_i |dphi_i| - |dw|.
  double chain_norm_margin = 0.0;
  /// Pairs where either margin falls below -kChainTolerance.
  std::size_t chain_failures = 0;

  bool injective = true;
  std::optional<std::pair<std::size_t, std::size_t>> duplicate_velocity;

  double measured_speed_min = 0.0;
  double measured_speed_max = 0.0;
  bool speeds_within_bounds = true;
  bool radius_ok = true;
  bool passed = false;
};

inline constexpr double kChainTolerance = 1e-12;

FlowReport verify_flow(const FlowAssignment& flow, std::size_t sample_budget,
                       const VerifyFlowOptions& options = {});

const char* to_string(ProfileKind kind);
const char* to_string(CheckMode mode);

}  // namespace collfree
