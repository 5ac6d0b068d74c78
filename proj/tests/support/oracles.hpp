#pragma once

// Test-only reference computations. Nothing here calls the library's
// closed forms; each routine minimizes or enumerates directly.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include "collfree/geometry.hpp"

namespace oracle {

using collfree::Vec2;
using collfree::Vec3;

inline double planar_gap(Vec2 x, Vec2 vx, Vec2 y, Vec2 vy, double t) {
  return std::hypot(x.x1 + t * vx.x1 - y.x1 - t * vy.x1, x.x2 + t * vx.x2 - y.x2 - t * vy.x2);
}

/// min over t in {lo, lo + h, ..., hi} of the separation of two moving points.
inline double grid_min_gap(Vec2 x, Vec2 vx, Vec2 y, Vec2 vy, double lo, double hi, double h) {
  double best = std::numeric_limits<double>::infinity();
  for (double t = lo; t <= hi; t += h) best = std::min(best, planar_gap(x, vx, y, vy, t));
  return best;
}

/// Golden-section minimum of a convex function on [lo, hi].
inline std::pair<double, double> golden_min(const std::function<double(double)>& f, double lo, double hi,
                                            int iterations = 200) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  for (int k = 0; k < iterations && b - a > 0.0; ++k) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  const double t = 0.5 * (a + b);
  return {t, f(t)};
}

/// Distance between lines p1 + t d1 and p2 + s d2 by nested minimization of
/// the squared point distance over (t, s) in [-bound, bound]^2.
inline double nested_line_distance(Vec3 p1, Vec3 d1, Vec3 p2, Vec3 d2, double bound = 1e6) {
  auto sq = [&](double t, double s) {
    const double a = p1.x1 + t * d1.x1 - p2.x1 - s * d2.x1;
    const double b = p1.x2 + t * d1.x2 - p2.x2 - s * d2.x2;
    const double c = p1.x3 + t * d1.x3 - p2.x3 - s * d2.x3;
    return a * a + b * b + c * c;
  };
  auto inner = [&](double t) { return golden_min([&](double s) { return sq(t, s); }, -bound, bound).second; };
  return std::sqrt(std::max(0.0, golden_min(inner, -bound, bound).second));
}

/// Grid minimum of (1 - M u)^2 + u^2 over u in [0, 1] with step h, plus arg-min.
inline std::pair<double, double> gap_profile_grid_min(double m, double h) {
  double best = std::numeric_limits<double>::infinity();
  double arg = 0.0;
  const auto steps = static_cast<std::int64_t>(std::ceil(1.0 / h));
  for (std::int64_t k = 0; k <= steps; ++k) {
    const double u = static_cast<double>(k) * h;
    const double a = 1.0 - m * u;
    const double v = a * a + u * u;
    if (v < best) {
      best = v;
      arg = u;
    }
  }
  return {best, arg};
}

/// Greedy placement of directions 0, 2 delta, 4 delta, ... on the circle,
/// stopping before the wrap-around gap to the first one drops below 2 delta.
inline std::int64_t greedy_direction_count(double delta) {
  const double two_pi = 2.0 * std::numbers::pi;
  std::int64_t count = 1;
  while (true) {
    const double next = static_cast<double>(count) * 2.0 * delta;
    if (two_pi - next < 2.0 * delta) break;
    ++count;
  }
  return count;
}

/// Seeded generator for hand-rolled property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  Vec2 vec2(double scale) { return {real(-scale, scale), real(-scale, scale)}; }
  Vec2 unit() {
    const double a = real(0.0, 2.0 * std::numbers::pi);
    return {std::cos(a), std::sin(a)};
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle
