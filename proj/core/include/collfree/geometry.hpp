#pragma once

#include <cmath>
#include <optional>

namespace collfree {

struct Vec2 {
  double x1 = 0.0;
  double x2 = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x1 + b.x1, a.x2 + b.x2}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x1 - b.x1, a.x2 - b.x2}; }
  friend constexpr Vec2 operator-(Vec2 a) { return {-a.x1, -a.x2}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x1, s * a.x2}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;
};

struct Vec3 {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;

  friend constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x1 + b.x1, a.x2 + b.x2, a.x3 + b.x3}; }
  friend constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x1 - b.x1, a.x2 - b.x2, a.x3 - b.x3}; }
  friend constexpr Vec3 operator*(double s, Vec3 a) { return {s * a.x1, s * a.x2, s * a.x3}; }
  friend constexpr bool operator==(Vec3, Vec3) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x1 * b.x1 + a.x2 * b.x2; }
constexpr double dot(Vec3 a, Vec3 b) { return a.x1 * b.x1 + a.x2 * b.x2 + a.x3 * b.x3; }
constexpr Vec3 cross(Vec3 a, Vec3 b) {
  return {a.x2 * b.x3 - a.x3 * b.x2, a.x3 * b.x1 - a.x1 * b.x3, a.x1 * b.x2 - a.x2 * b.x1};
}
inline double norm(Vec2 a) { return std::hypot(a.x1, a.x2); }
inline double norm(Vec3 a) { return std::hypot(a.x1, a.x2, a.x3); }

inline bool is_finite(Vec2 a) { return std::isfinite(a.x1) && std::isfinite(a.x2); }
inline bool is_finite(Vec3 a) {
  return std::isfinite(a.x1) && std::isfinite(a.x2) && std::isfinite(a.x3);
}

/// A point particle: initial position and constant velocity.
struct Particle {
  Vec2 position;
  Vec2 velocity;

  /// Position at time t.
  Vec2 at(double t) const { return position + t * velocity; }

  friend bool operator==(const Particle&, const Particle&) = default;
};

/// Result of minimizing the separation of two linearly moving points over all
/// real times. `time_at_min` is empty when the relative velocity is zero: the
/// separation is then attained at every time.
struct PairApproach {
  double distance = 0.0;
  std::optional<double> time_at_min;

  bool all_times() const { return !time_at_min.has_value(); }
};

/// Rotation by a quarter turn counter-clockwise: (u1, u2) -> (-u2, u1).
Vec2 rotate_quarter(Vec2 u);

/// Exact infimum over t of |(x + t vx) - (y + t vy)|.
///
/// Equal velocities are legal and yield the constant initial separation.
/// Throws Error{IdenticalParticle} when both position and velocity coincide.
PairApproach closest_approach(Vec2 x, Vec2 vx, Vec2 y, Vec2 vy);
PairApproach closest_approach(const Particle& a, const Particle& b);

/// |<x - y, wx - wy>| / |wx - wy|. Equals the closest-approach distance of the
/// pair moving with v = -I w. Throws Error{DegenerateVelocity} when wx == wy.
double separation_margin(Vec2 x, Vec2 y, Vec2 wx, Vec2 wy);

/// Euclidean distance between the infinite lines p1 + t d1 and p2 + s d2.
/// Throws Error{ZeroDirection} if either direction vanishes.
double line_distance_3d(Vec3 p1, Vec3 d1, Vec3 p2, Vec3 d2);

/// Relative threshold under which two directions count as parallel.
inline constexpr double kParallelTolerance = 1e-12;

/// Absolute tolerance for ">=" assertions on reported margins.
inline constexpr double kMarginTolerance = 1e-9;

}  // namespace collfree
