#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "collfree/geometry.hpp"
#include "collfree/parallel.hpp"

namespace collfree {

/// Cone aperture cosine a = min(c/2, 1/2) tied to a separation constant c.
double aperture_for(double c);
/// delta = arcsin(a): the cone excludes directions within delta of u's normal.
double cone_half_gap(double aperture_cos);

/// Closed convex cone {z : <u, z> >= a |u| |z|}. The axis is stored
/// normalized, so cones built from positive multiples of u coincide.
class Cone {
 public:
  /// Throws ZeroAxis for u == 0, InvalidArgument unless 0 < a < 1.
  Cone(Vec2 axis, double aperture_cos);

  Vec2 unit_axis() const { return axis_; }
  double aperture_cos() const { return aperture_; }

 private:
  Vec2 axis_;
  double aperture_;
};

struct ConeTest {
  bool member = false;
  /// <u, z> - a |z| with u the unit axis; members have margin >= 0.
  double margin = 0.0;
};

ConeTest cone_contains(const Cone& cone, Vec2 z);

enum class FieldKind { Constant, SaturatedRadial, Rotational, ClampedLinear, SampledGrid };

/// A bounded continuous vector field on the plane.
class CandidateField {
 public:
  static CandidateField constant(Vec2 value);
  /// bound * x / sqrt(scale^2 + |x|^2).
  static CandidateField saturated_radial(double bound, double scale = 1.0);
  /// bound * I x / max(|x|, core): rigid rotation inside the core disk,
  /// unit tangential field of length `bound` outside.
  static CandidateField rotational(double bound, double core = 1.0);
  /// A x, radially clamped to the disk of radius `bound`. Matrix row-major.
  static CandidateField clamped_linear(double bound, std::array<double, 4> matrix);
  /// Bilinear interpolation of node values at origin + (i hx, j hy),
  /// extended as a constant beyond the grid. values[j * nx + i].
  static CandidateField sampled_grid(Vec2 origin, double hx, double hy, std::size_t nx, std::size_t ny,
                                     std::vector<Vec2> values);
  /// Grid from particle-list rows: position = node, velocity = value.
  static CandidateField sampled_grid(const std::vector<Particle>& nodes);

  Vec2 operator()(Vec2 x) const;

  FieldKind kind() const { return kind_; }
  /// Sup norm over the plane.
  double bound() const { return bound_; }
  std::string describe() const;

 private:
  CandidateField() = default;

  FieldKind kind_ = FieldKind::Constant;
  double bound_ = 0.0;
  Vec2 value_;
  double scale_ = 1.0;
  std::array<double, 4> matrix_{};
  Vec2 origin_;
  double hx_ = 1.0;
  double hy_ = 1.0;
  std::size_t nx_ = 0;
  std::size_t ny_ = 0;
  std::vector<Vec2> grid_;
};

/// Number of subdivision segments ceil(L/2) used by the chaining step.
std::int64_t chain_segments(double length);

struct ChainReport {
  std::int64_t segments = 0;
  double length = 0.0;
  double step = 0.0;  // length / segments, in (1, 2]
  /// Cone margins of w(z_i) - w(z_{i+1}) in C_{x-y}.
  std::vector<double> increment_margins;
  std::size_t members = 0;
  bool all_members = false;
  /// w(x) - w(y), evaluated directly.
  ConeTest sum;
  /// Sum of the increments; equals `sum` up to rounding.
  ConeTest telescoped;
  /// all increments in the cone implies the sum is in the cone (within rounding).
  bool implication_holds = false;
};

/// Subdivides [x, y] into ceil(L/2) equal segments and tests every increment
/// and the telescoped sum against C_{x-y}. Throws DegenerateSegment for L <= 1.
ChainReport chain_check(const CandidateField& field, Vec2 x, Vec2 y, double aperture_cos);

/// c |w(x) - w(y)| - |<x - y, w(x) - w(y)>|; >= 0 means the strict separation
/// inequality fails at (x, y).
double violation_margin(const CandidateField& field, Vec2 x, Vec2 y, double c);

enum class SearchRoute { Probe, Random, Refine, SignChange };

struct ViolationReport {
  Vec2 x;
  Vec2 y;
  double margin = 0.0;
  double c = 0.0;
  std::size_t evaluations_used = 0;
  SearchRoute route = SearchRoute::Probe;
  std::size_t slot = 0;
};

struct FalsifyOptions {
  std::uint64_t seed = kDefaultSeed;
  unsigned workers = 0;
  /// Largest radius reached by structured probes and random pairs.
  double search_radius = 1024.0;
};

struct FalsifyResult {
  /// False means the search exhausted its budget. That carries no
  /// mathematical meaning: the search is heuristic.
  bool found = false;
  /// The violation, or the best pair seen when exhausted (negative margin).
  ViolationReport report;
  /// Normalized score c - |<d, dw>| / |dw| of the reported pair.
  double score = 0.0;
  /// Pairs at distance > 1 with opposite signs of <x - y, dw> were seen.
  bool sign_change_seen = false;
  std::size_t evaluations_used = 0;
};

/// Searches for a pair with |x - y| > 1 violating |<x-y, dw>| > c |dw|.
/// The budget counts field evaluations and is split over a fixed number of
/// search slots, so the outcome does not depend on `workers`.
FalsifyResult falsify(const CandidateField& field, double c, std::size_t budget,
                      const FalsifyOptions& options = {});

inline constexpr std::size_t kSearchSlots = 8;

double circular_distance(double a, double b);

/// Largest number of directions with pairwise circular distance >= 2 delta.
std::int64_t max_separated_directions(double delta);

struct ProbeOptions {
  double aperture_cos = 0.05;
  /// Values within this distance (times the field bound) share a cluster.
  double cluster_tolerance = 1e-2;
  /// Clusters holding fewer samples than this fraction are minor.
  double min_cluster_fraction = 0.01;
};

struct ValueCluster {
  Vec2 centroid;
  std::size_t count = 0;
  /// Circular mean of the sample directions in the cluster.
  double direction = 0.0;
  bool major = false;
};

struct ClusterSeparation {
  std::size_t a = 0;
  std::size_t b = 0;
  double distance = 0.0;
  bool meets_floor = false;
};

struct AngularProbeReport {
  double radius = 0.0;
  std::size_t samples = 0;
  double delta = 0.0;
  double floor = 0.0;  // 2 delta
  std::int64_t max_directions = 0;
  std::vector<ValueCluster> clusters;
  std::size_t major_clusters = 0;
  /// Pairwise separations between major clusters (omitted above 64 clusters).
  std::vector<ClusterSeparation> separations;
  double min_separation = 0.0;
  std::size_t pairs_below_floor = 0;
  /// At least two major clusters, so the angular floor has something to say.
  bool constraints_apply = false;
};

/// Samples the field on a circle and clusters the values. A diagnostic for
/// the behaviour at infinity; it does not compute any limit set.
AngularProbeReport angular_separation_probe(const CandidateField& field, double radius, std::size_t samples,
                                            const ProbeOptions& options = {});

const char* to_string(FieldKind kind);
const char* to_string(SearchRoute route);

}  // namespace collfree
