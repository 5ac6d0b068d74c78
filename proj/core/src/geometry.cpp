#include "collfree/geometry.hpp"

#include "collfree/error.hpp"

namespace collfree {
namespace {

template <typename... V>
void require_finite(const char* op, V... v) {
  if (!(is_finite(v) && ...)) throw Error(ErrorCode::NonFinite, std::string(op) + ": non-finite input");
}

}  // namespace

Vec2 rotate_quarter(Vec2 u) {
  require_finite("rotate_quarter", u);
  return {-u.x2, u.x1};
}

PairApproach closest_approach(Vec2 x, Vec2 vx, Vec2 y, Vec2 vy) {
  require_finite("closest_approach", x, vx, y, vy);
  const Vec2 dx = x - y;
  const Vec2 dv = vx - vy;
  if (dv == Vec2{}) {
    if (dx == Vec2{}) throw Error(ErrorCode::IdenticalParticle, "closest_approach: identical particles");
    return {norm(dx), std::nullopt};
  }
  const double speed = norm(dv);
  // Distance from x - y to the line spanned by the relative velocity.
  const double distance = std::abs(dot(dx, rotate_quarter(dv))) / speed;
  const double time = -dot(dx, dv) / (speed * speed);
  return {distance, time};
}

PairApproach closest_approach(const Particle& a, const Particle& b) {
  return closest_approach(a.position, a.velocity, b.position, b.velocity);
}

double separation_margin(Vec2 x, Vec2 y, Vec2 wx, Vec2 wy) {
  require_finite("separation_margin", x, y, wx, wy);
  const Vec2 dw = wx - wy;
  if (dw == Vec2{}) throw Error(ErrorCode::DegenerateVelocity, "separation_margin: wx == wy");
  return std::abs(dot(x - y, dw)) / norm(dw);
}

double line_distance_3d(Vec3 p1, Vec3 d1, Vec3 p2, Vec3 d2) {
  require_finite("line_distance_3d", p1, d1, p2, d2);
  const double n1 = norm(d1);
  const double n2 = norm(d2);
  if (n1 == 0.0 || n2 == 0.0) throw Error(ErrorCode::ZeroDirection, "line_distance_3d: zero direction");
  const Vec3 offset = p2 - p1;
  const Vec3 normal = cross(d1, d2);
  const double normal_len = norm(normal);
  if (normal_len < kParallelTolerance * n1 * n2) {
    // Parallel: distance from p2 to the first line.
    return norm(cross(offset, d1)) / n1;
  }
  return std::abs(dot(offset, normal)) / normal_len;
}

}  // namespace collfree
