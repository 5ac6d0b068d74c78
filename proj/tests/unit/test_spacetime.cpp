#include <cmath>
#include <numbers>

#include "collfree/error.hpp"
#include "collfree/evolution.hpp"
#include "collfree/lattice_flow.hpp"
#include "collfree/spacetime.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace collfree;

namespace {

MovingConfiguration arctan_flow(std::int64_t n) {
  return build_flow(MonotoneProfile::arctan(), Window::square(n), 1.0).configuration();
}

double max_speed(const MovingConfiguration& cfg) {
  double m = 0.0;
  for (const auto& p : cfg.particles) m = std::max(m, norm(p.velocity));
  return m;
}

}  // namespace

TEST_CASE("worldline_of examples") {
  const auto still = worldline_of({{0, 0}, {0, 0}});
  CHECK(still.base == Vec3{0, 0, 0});
  CHECK(still.direction == Vec3{0, 0, 1});

  const auto moving = worldline_of({{1, 2}, {3, 4}});
  CHECK(moving.base == Vec3{1, 2, 0});
  CHECK(moving.direction == Vec3{3, 4, 1});
  CHECK(moving.velocity() == Vec2{3, 4});

  CHECK(angle_to_vertical(worldline_of({{0, 0}, {1, 0}})) == doctest::Approx(std::numbers::pi / 4).epsilon(1e-15));
}

TEST_CASE("lemma1_bound examples") {
  CHECK(lemma1_bound(0.0) == 1.0);
  CHECK(lemma1_bound(1.0) == doctest::Approx(0.70710678).epsilon(1e-8));
  CHECK(worldline_gap_minimizer(2.0) == doctest::Approx(0.4));
  CHECK(worldline_gap_profile(2.0, worldline_gap_minimizer(2.0)) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(max_cylinder_radius(0.0) == 0.5);
  CHECK_THROWS_AS(lemma1_bound(-1.0), Error);
}

TEST_CASE("gap profile minimum matches the closed form on a fine grid") {
  oracle::Gen gen(1001);
  const double h = 1e-5;
  for (int k = 0; k < 1000; ++k) {
    const double m = gen.real(1e-6, 10.0);
    const auto [least, arg] = oracle::gap_profile_grid_min(m, h);
    const double exact = 1.0 / (1.0 + m * m);
    // Quadratic grid error: (1 + M^2) (h/2)^2.
    const double tol = (1.0 + m * m) * h * h / 4.0 + 1e-15;
    CHECK(least - exact <= tol);
    CHECK(least - exact >= -1e-15);
    CHECK(std::abs(arg - worldline_gap_minimizer(m)) <= h);
  }
}

TEST_CASE("verify_scene on two static particles") {
  const auto cfg = make_configuration({{{0, 0}, {0, 0}}, {{1, 0}, {0, 0}}}, 1.0);
  const auto r = verify_scene(cfg, 0.5);
  CHECK(r.min_distance == 1.0);
  CHECK(r.bound == 1.0);
  CHECK(r.required == 1.0);
  CHECK(r.distances_ok);
  // Vertical worldlines share a direction.
  CHECK_FALSE(r.directions_distinct);
  CHECK_FALSE(r.velocities_distinct);
  CHECK_FALSE(r.passed);
}

TEST_CASE("verify_scene on a shifted 3x3 lattice flow") {
  const auto cfg = arctan_flow(1);
  const double m = max_speed(cfg);
  const auto r = verify_scene(cfg, max_cylinder_radius(m));
  CHECK(r.speed_max == m);
  CHECK(r.bound == lemma1_bound(m));
  CHECK(r.min_distance >= lemma1_bound(m) - 1e-9);
  CHECK(r.distances_ok);
  CHECK(r.directions_distinct);
  CHECK(r.velocities_distinct);
  CHECK(r.annulus_by_angle);
  CHECK(r.annulus_by_speed);
  CHECK(r.passed);
}

TEST_CASE("verify_scene errors") {
  auto cfg = arctan_flow(1);
  CHECK_THROWS_WITH_AS(verify_scene(cfg, 0.5), doctest::Contains("RadiusTooLarge"), Error);
  const auto crash = make_configuration({{{0, 0}, {1, 0}}, {{4, 0}, {-1, 0}}}, 1.0);
  CHECK_THROWS_WITH_AS(verify_scene(crash, 0.1), doctest::Contains("HardCoreNotVerified"), Error);
}

TEST_CASE("duplicated velocities make parallel worldlines") {
  const auto cfg = make_configuration({{{0, 0}, {0, 0.1}}, {{0, 5}, {0.1, 0}}, {{5, 5}, {0, 0.1}}}, 1.0);
  const auto r = verify_scene(cfg, 0.01);
  CHECK(r.distances_ok);
  CHECK_FALSE(r.velocities_distinct);
  CHECK_FALSE(r.directions_distinct);
  REQUIRE(r.parallel_pair);
  CHECK(*r.parallel_pair == std::pair<std::size_t, std::size_t>{0, 2});
  CHECK_FALSE(r.passed);
}

TEST_CASE("worldline distances respect the bound on random hard-core configurations") {
  oracle::Gen gen(8);
  int checked = 0;
  for (int trial = 0; trial < 200 && checked < 40; ++trial) {
    std::vector<Particle> ps;
    for (int k = 0; k < 6; ++k) ps.push_back({Vec2{3.0 * k, gen.real(-1, 1)}, gen.vec2(0.3)});
    const auto cfg = make_configuration(std::move(ps), 1.0);
    if (!verify_hardcore(cfg).passed) continue;
    ++checked;
    const double m = max_speed(cfg);
    const auto r = verify_scene(cfg, max_cylinder_radius(m));
    CHECK(r.min_distance >= lemma1_bound(m) - 1e-9);
    CHECK(r.annulus_by_angle == r.annulus_by_speed);
    CHECK(r.directions_distinct == r.velocities_distinct);
  }
  CHECK(checked >= 10);
}

TEST_CASE("export_scene examples") {
  CHECK(export_scene({}) == "cylinder-scene v1\n");

  const auto one = make_scene(make_configuration({{{0, 0}, {0, 0}}}, 1.0), 0.5);
  CHECK(export_scene(one) == "cylinder-scene v1\n0,0,0,0,0,1,0.5\n");

  const auto nine = make_scene(arctan_flow(1), 0.2);
  const std::string text = export_scene(nine);
  const auto back = import_scene(text);
  REQUIRE(back.cylinders.size() == 9);
  CHECK(export_scene(back) == text);

  // Sorting permutes cylinders; compare the multiset of pairwise distances.
  auto distances = [](const CylinderScene& s) {
    std::vector<double> d;
    for (std::size_t i = 0; i < s.cylinders.size(); ++i)
      for (std::size_t j = i + 1; j < s.cylinders.size(); ++j) {
        const auto& a = s.cylinders[i].axis;
        const auto& b = s.cylinders[j].axis;
        d.push_back(line_distance_3d(a.base, a.direction, b.base, b.direction));
      }
    std::sort(d.begin(), d.end());
    return d;
  };
  const auto before = distances(nine), after = distances(back);
  REQUIRE(before.size() == after.size());
  for (std::size_t k = 0; k < before.size(); ++k) CHECK(std::abs(before[k] - after[k]) <= 1e-12);
  for (const auto& c : back.cylinders) {
    CHECK(c.axis.direction.x3 == 1.0);
    CHECK(c.radius == 0.2);
  }
}

TEST_CASE("import_scene reports the offending line") {
  CHECK_THROWS_WITH_AS(import_scene("nope\n"), doctest::Contains("line 1"), Error);
  CHECK_THROWS_WITH_AS(import_scene("cylinder-scene v1\n0,0,0,0,0,1,0.5\n0,0,0,1,0,0,0.5\n"),
                       doctest::Contains("line 3"), Error);
  CHECK_THROWS_WITH_AS(import_scene("cylinder-scene v1\n0,0,0,0,0,1\n"), doctest::Contains("ParseError"), Error);
}
