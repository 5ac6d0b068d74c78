#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "collfree/evolution.hpp"
#include "collfree/geometry.hpp"

namespace collfree {

/// The space-time line {(x + t v, t)}. The direction keeps the form (v, 1);
/// it is normalized only on export.
struct WorldLine {
  Vec3 base;
  Vec3 direction;

  Vec2 velocity() const { return {direction.x1, direction.x2}; }
};

WorldLine worldline_of(const Particle& p);

/// Angle between the worldline and the time axis; its tangent is the speed.
double angle_to_vertical(const WorldLine& line);

/// Guaranteed worldline separation 1 / sqrt(1 + M^2) for speeds bounded by M
/// under the unit hard-core condition.
double lemma1_bound(double max_speed);

/// (1 - M u)^2 + u^2, whose minimum over u >= 0 gives the squared bound.
double worldline_gap_profile(double max_speed, double u);
/// Minimizer M / (1 + M^2) of worldline_gap_profile.
double worldline_gap_minimizer(double max_speed);

/// Largest admissible common cylinder radius: lemma1_bound(M) / 2.
double max_cylinder_radius(double max_speed);

struct Cylinder {
  WorldLine axis;
  double radius = 0.0;
};

struct CylinderScene {
  std::vector<Cylinder> cylinders;
  double speed_min = 0.0;
  double speed_max = 0.0;
};

struct SceneReport {
  double speed_min = 0.0;
  double speed_max = 0.0;
  double radius = 0.0;
  double bound = 0.0;     // lemma1_bound(speed_max)
  double required = 0.0;  // max(2 radius, bound)

  /// Minimum pairwise worldline distance (+inf with fewer than two lines).
  double min_distance = 0.0;
  std::optional<std::pair<std::size_t, std::size_t>> witness;
  double margin = 0.0;  // min_distance - required
  bool distances_ok = false;

  /// Velocity injectivity, checked directly on velocities.
  bool velocities_distinct = false;
  /// Pairwise distinct worldline directions (v, 1).
  bool directions_distinct = false;
  std::optional<std::pair<std::size_t, std::size_t>> parallel_pair;

  /// arctan|v| within [arctan m, arctan M] for every particle.
  bool annulus_by_angle = false;
  /// m <= |v| <= M for every particle.
  bool annulus_by_speed = false;

  bool passed = false;
};

/// Checks the worldline cylinders of a configuration. Requires the unit
/// hard-core condition (Error{HardCoreNotVerified}) and radius <=
/// max_cylinder_radius(M) for the measured M (Error{RadiusTooLarge}).
SceneReport verify_scene(const MovingConfiguration& config, double radius, unsigned workers = 0);

/// Cylinders of the given radius around every worldline, with measured speed bounds.
CylinderScene make_scene(const MovingConfiguration& config, double radius);

/// Text document: header `cylinder-scene v1`, then `px,py,pz,dx,dy,dz,r`
/// per cylinder with unit direction, sorted by axis point.
std::string export_scene(const CylinderScene& scene);

/// Parses export_scene output back into cylinders with (v, 1) directions.
/// Throws Error{ParseError} with the offending line number.
CylinderScene import_scene(std::string_view text);

}  // namespace collfree
