#include "collfree/spacetime.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "collfree/error.hpp"
#include "collfree/format.hpp"
#include "collfree/parallel.hpp"

namespace collfree {

WorldLine worldline_of(const Particle& p) {
  if (!is_finite(p.position) || !is_finite(p.velocity))
    throw Error(ErrorCode::NonFinite, "worldline_of: non-finite particle");
  return {{p.position.x1, p.position.x2, 0.0}, {p.velocity.x1, p.velocity.x2, 1.0}};
}

double angle_to_vertical(const WorldLine& line) { return std::atan(norm(line.velocity())); }

double lemma1_bound(double max_speed) {
  if (!std::isfinite(max_speed) || max_speed < 0.0)
    throw Error(ErrorCode::InvalidArgument, "lemma1_bound: speed bound must be finite and non-negative");
  return 1.0 / std::sqrt(1.0 + max_speed * max_speed);
}

double worldline_gap_profile(double max_speed, double u) {
  const double a = 1.0 - max_speed * u;
  return a * a + u * u;
}

double worldline_gap_minimizer(double max_speed) { return max_speed / (1.0 + max_speed * max_speed); }

double max_cylinder_radius(double max_speed) { return lemma1_bound(max_speed) / 2.0; }

namespace {

std::pair<double, double> speed_range(const std::vector<Particle>& ps) {
  if (ps.empty()) return {0.0, 0.0};
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const auto& p : ps) {
    const double s = norm(p.velocity);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  return {lo, hi};
}

}  // namespace

SceneReport verify_scene(const MovingConfiguration& config, double radius, unsigned workers) {
  if (!std::isfinite(radius) || radius <= 0.0)
    throw Error(ErrorCode::InvalidArgument, "verify_scene: radius must be positive");
  const auto hardcore = verify_hardcore(config, 1.0, workers);
  if (!hardcore.passed)
    throw Error(ErrorCode::HardCoreNotVerified, "verify_scene: configuration fails the unit hard-core check");

  const auto& ps = config.particles;
  SceneReport report;
  std::tie(report.speed_min, report.speed_max) = speed_range(ps);
  report.radius = radius;
  report.bound = lemma1_bound(report.speed_max);
  if (radius > report.bound / 2.0)
    throw Error(ErrorCode::RadiusTooLarge, "verify_scene: radius exceeds 1/(2 sqrt(1+M^2))");
  report.required = std::max(2.0 * radius, report.bound);

  std::vector<WorldLine> lines;
  lines.reserve(ps.size());
  for (const auto& p : ps) lines.push_back(worldline_of(p));

  const auto best = minimize_over_pairs(lines.size(), workers, [&](std::size_t i, std::size_t j) {
    return line_distance_3d(lines[i].base, lines[i].direction, lines[j].base, lines[j].direction);
  });
  report.min_distance = best.value;
  if (best.found) report.witness = std::pair{best.i, best.j};
  report.margin = report.min_distance - report.required;
  report.distances_ok = report.margin >= -kMarginTolerance;

  // Velocities and directions are checked separately; the third coordinate
  // of (v, 1) makes the two tests equivalent, and both must agree.
  auto first_equal = [&](auto key) -> std::optional<std::pair<std::size_t, std::size_t>> {
    std::vector<std::size_t> order(ps.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::pair{key(a), a} < std::pair{key(b), b};
    });
    std::optional<std::pair<std::size_t, std::size_t>> found;
    for (std::size_t k = 1; k < order.size(); ++k) {
      if (key(order[k]) == key(order[k - 1])) {
        const std::pair c{std::min(order[k], order[k - 1]), std::max(order[k], order[k - 1])};
        if (!found || c < *found) found = c;
      }
    }
    return found;
  };
  const auto equal_velocity = first_equal([&](std::size_t k) {
    return std::pair{ps[k].velocity.x1, ps[k].velocity.x2};
  });
  const auto parallel = first_equal([&](std::size_t k) {
    // Parallel directions (v,1) ~ (v',1) means identical unit directions.
    const Vec3 d = lines[k].direction;
    const double len = norm(d);
    return std::tuple{d.x1 / len, d.x2 / len, d.x3 / len};
  });
  report.velocities_distinct = !equal_velocity.has_value();
  report.directions_distinct = !parallel.has_value();
  report.parallel_pair = parallel ? parallel : equal_velocity;

  const double angle_lo = std::atan(report.speed_min);
  const double angle_hi = std::atan(report.speed_max);
  report.annulus_by_angle = true;
  report.annulus_by_speed = true;
  for (std::size_t k = 0; k < ps.size(); ++k) {
    const double theta = angle_to_vertical(lines[k]);
    const double speed = norm(ps[k].velocity);
    report.annulus_by_angle = report.annulus_by_angle && theta >= angle_lo && theta <= angle_hi;
    report.annulus_by_speed = report.annulus_by_speed && speed >= report.speed_min && speed <= report.speed_max;
  }

  report.passed = report.distances_ok && report.velocities_distinct && report.directions_distinct &&
                  report.annulus_by_angle && report.annulus_by_speed;
  return report;
}

CylinderScene make_scene(const MovingConfiguration& config, double radius) {
  if (!std::isfinite(radius) || radius <= 0.0)
    throw Error(ErrorCode::InvalidArgument, "make_scene: radius must be positive");
  CylinderScene scene;
  std::tie(scene.speed_min, scene.speed_max) = speed_range(config.particles);
  scene.cylinders.reserve(config.particles.size());
  for (const auto& p : config.particles) scene.cylinders.push_back({worldline_of(p), radius});
  return scene;
}

std::string export_scene(const CylinderScene& scene) {
  struct Record {
    Vec3 point;
    Vec3 unit;
    double radius;
  };
  std::vector<Record> records;
  records.reserve(scene.cylinders.size());
  for (const auto& c : scene.cylinders) {
    const Vec3 d = c.axis.direction;
    records.push_back({c.axis.base, (1.0 / norm(d)) * d, c.radius});
  }
  std::stable_sort(records.begin(), records.end(), [](const Record& a, const Record& b) {
    return std::tuple{a.point.x1, a.point.x2, a.point.x3} < std::tuple{b.point.x1, b.point.x2, b.point.x3};
  });
  std::string out = "cylinder-scene v1\n";
  for (const auto& r : records) {
    out += join_reals({r.point.x1, r.point.x2, r.point.x3, r.unit.x1, r.unit.x2, r.unit.x3, r.radius});
    out += '\n';
  }
  return out;
}

CylinderScene import_scene(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty() || lines.front() != "cylinder-scene v1")
    throw Error(ErrorCode::ParseError, "line 1: expected header 'cylinder-scene v1'");
  CylinderScene scene;
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    if (lines[k].empty()) continue;
    const auto f = parse_reals(lines[k], 7, k + 1);
    if (!(f[5] > 0.0)) throw Error(ErrorCode::ParseError, "line " + std::to_string(k + 1) + ": direction must point forward in time");
    if (!(f[6] > 0.0)) throw Error(ErrorCode::ParseError, "line " + std::to_string(k + 1) + ": radius must be positive");
    const Vec3 direction{f[3] / f[5], f[4] / f[5], 1.0};
    scene.cylinders.push_back({{{f[0], f[1], f[2]}, direction}, f[6]});
    const double s = std::hypot(direction.x1, direction.x2);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  scene.speed_min = scene.cylinders.empty() ? 0.0 : lo;
  scene.speed_max = hi;
  return scene;
}

}  // namespace collfree
