#include <cmath>
#include <numbers>

#include "collfree/error.hpp"
#include "collfree/lattice_flow.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace collfree;

TEST_CASE("profile_eval examples") {
  const auto arctan = MonotoneProfile::arctan();
  CHECK(profile_eval(arctan, 0) == 0.0);
  CHECK(profile_eval(arctan, 1) == doctest::Approx(0.7853981634).epsilon(1e-10));
  CHECK(profile_eval(MonotoneProfile::tanh(), -2) == doctest::Approx(-0.9640275801).epsilon(1e-10));
  CHECK(profile_eval(MonotoneProfile::rational_saturating(), 3) == 0.75);
}

TEST_CASE("analytic profiles are strictly increasing and bounded on a scan") {
  for (const auto& phi : {MonotoneProfile::arctan(), MonotoneProfile::tanh(), MonotoneProfile::rational_saturating()}) {
    // tanh saturates to 1.0 in double precision past |n| = 18.
    const std::int64_t reach = phi.kind() == ProfileKind::Tanh ? 17 : 1000;
    for (std::int64_t n = -reach; n < reach; ++n) {
      CHECK(profile_eval(phi, n + 1) > profile_eval(phi, n));
      CHECK(std::abs(profile_eval(phi, n)) <= phi.bound());
    }
  }
}

TEST_CASE("table profiles never extrapolate") {
  const auto phi = MonotoneProfile::table({{2, 0.5}, {0, -1.0}, {1, 0.0}});
  CHECK(phi.bound() == 1.0);
  CHECK(profile_eval(phi, 0) == -1.0);
  CHECK(profile_eval(phi, 2) == 0.5);
  CHECK_THROWS_WITH_AS(profile_eval(phi, 3), doctest::Contains("OutOfDomain"), Error);
  CHECK_THROWS_WITH_AS(assign_w(phi, {0, 5}), doctest::Contains("OutOfDomain"), Error);
  CHECK_THROWS_WITH_AS(build_flow(phi, {0, 3, 0, 0}, 1.0), doctest::Contains("OutOfDomain"), Error);
  CHECK_THROWS_AS(MonotoneProfile::table({{1, 0.0}, {1, 1.0}}), Error);
}

TEST_CASE("assign_w examples") {
  const auto arctan = MonotoneProfile::arctan();
  CHECK(assign_w(arctan, {0, 0}) == Vec2{0, 0});
  CHECK(assign_w(arctan, {1, 0}) == Vec2{std::numbers::pi / 4, 0});
  CHECK(assign_w(arctan, {-1, 2}) == Vec2{-std::numbers::pi / 4, std::atan(2.0)});
}

TEST_CASE("build_flow on a two-site window") {
  const auto flow = build_flow(MonotoneProfile::arctan(), {0, 1, 0, 0}, 1.0);
  REQUIRE(flow.particles.size() == 2);
  const Vec2 dv = flow.particles[1].velocity - flow.particles[0].velocity;
  CHECK(dv.x1 == 0.0);
  CHECK(dv.x2 == doctest::Approx(-std::numbers::pi / 4).epsilon(1e-15));
  CHECK(closest_approach(flow.particles[0], flow.particles[1]).distance == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(flow.speed_min == 1.0);
  CHECK(flow.shift == Vec2{std::numbers::pi / 4 + 1.0, 0});
  for (const auto& p : flow.particles) CHECK(norm(p.velocity) >= flow.speed_min);
}

TEST_CASE("build_flow on a single site") {
  const auto flow = build_flow(MonotoneProfile::tanh(), {3, 3, -2, -2}, 0.25);
  REQUIRE(flow.particles.size() == 1);
  CHECK(flow.speed_min == 0.25);
  const auto report = verify_flow(flow, 10);
  CHECK(report.mode == CheckMode::Vacuous);
  CHECK(std::isinf(report.min_distance));
  CHECK(report.passed);
}

TEST_CASE("build_flow errors") {
  CHECK_THROWS_WITH_AS(build_flow(MonotoneProfile::arctan(), {1, 0, 0, 0}, 1.0), doctest::Contains("EmptyWindow"), Error);
  CHECK_THROWS_WITH_AS(build_flow(MonotoneProfile::tanh(), Window::square(25), 1.0),
                       doctest::Contains("NonMonotoneProfile"), Error);
  CHECK_THROWS_WITH_AS(build_flow(MonotoneProfile::table({{0, 1.0}, {1, 1.0}}), {0, 1, 0, 0}, 1.0),
                       doctest::Contains("NonMonotoneProfile"), Error);
  CHECK_THROWS_AS(build_flow(MonotoneProfile::arctan(), Window::square(1), -1.0), Error);
}

TEST_CASE("3x3 window: exhaustive pairs all approach to at least 1") {
  const auto flow = build_flow(MonotoneProfile::arctan(), Window::square(1), 0.5);
  REQUIRE(flow.particles.size() == 9);
  // Independent enumeration through separation_margin on w.
  double least = INFINITY;
  int pairs = 0;
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = i + 1; j < 9; ++j, ++pairs)
      least = std::min(least, separation_margin(flow.particles[i].position, flow.particles[j].position, flow.w[i], flow.w[j]));
  CHECK(pairs == 36);
  CHECK(least == doctest::Approx(1.0).epsilon(1e-12));

  const auto report = verify_flow(flow, 100);
  CHECK(report.mode == CheckMode::Exhaustive);
  CHECK(report.pairs_checked == 36);
  CHECK(report.min_distance == doctest::Approx(1.0).epsilon(1e-12));
  REQUIRE(report.witness);
  // Axis neighbours attain the minimum.
  const auto a = flow.sites[report.witness->first], b = flow.sites[report.witness->second];
  CHECK(std::abs(a.x1 - b.x1) + std::abs(a.x2 - b.x2) == 1);
  CHECK(report.chain_inner_margin >= -kChainTolerance);
  CHECK(report.chain_norm_margin >= -kChainTolerance);
  CHECK(report.chain_failures == 0);
  CHECK(report.injective);
  CHECK(report.passed);
}

TEST_CASE("verify_flow flags duplicated velocities") {
  auto flow = build_flow(MonotoneProfile::arctan(), Window::square(1), 0.5);
  flow.particles[7].velocity = flow.particles[2].velocity;
  const auto report = verify_flow(flow, 100);
  CHECK_FALSE(report.injective);
  REQUIRE(report.duplicate_velocity);
  CHECK(*report.duplicate_velocity == std::pair<std::size_t, std::size_t>{2, 7});
  CHECK_FALSE(report.passed);
}

TEST_CASE("proof chain holds for every profile on random windows") {
  oracle::Gen gen(314);
  const MonotoneProfile profiles[] = {MonotoneProfile::arctan(), MonotoneProfile::tanh(),
                                      MonotoneProfile::rational_saturating()};
  for (int trial = 0; trial < 30; ++trial) {
    const auto& phi = profiles[trial % 3];
    const std::int64_t a = gen.integer(-9, 5), c = gen.integer(-9, 5);
    const Window window{a, a + gen.integer(0, 4), c, c + gen.integer(0, 4)};
    const auto flow = build_flow(phi, window, gen.real(0.0, 3.0));
    for (std::size_t i = 0; i < flow.sites.size(); ++i) {
      for (std::size_t j = i + 1; j < flow.sites.size(); ++j) {
        const Vec2 dx{double(flow.sites[i].x1 - flow.sites[j].x1), double(flow.sites[i].x2 - flow.sites[j].x2)};
        const Vec2 dw = flow.w[i] - flow.w[j];
        const double sum = std::abs(dw.x1) + std::abs(dw.x2);
        CHECK(dot(dx, dw) - sum >= -1e-12);
        CHECK(sum - norm(dw) >= -1e-12);
        CHECK(norm(dw) > 0.0);
        CHECK(closest_approach(flow.particles[i], flow.particles[j]).distance >= 1.0 - 1e-9);
      }
    }
    for (const auto& p : flow.particles) {
      CHECK(norm(p.velocity) >= flow.speed_min - 1e-12);
      CHECK(norm(p.velocity) <= norm(flow.shift) + std::sqrt(2.0) * phi.bound() + 1e-12);
    }
    CHECK(verify_flow(flow, 100).passed);
  }
}

TEST_CASE("minimum distance does not depend on the shift") {
  const auto base = verify_flow(build_flow(MonotoneProfile::arctan(), Window::square(3), 0.0), 100);
  for (double margin : {0.5, 2.0, 10.0}) {
    const auto shifted = verify_flow(build_flow(MonotoneProfile::arctan(), Window::square(3), margin), 100);
    CHECK(shifted.min_distance == doctest::Approx(base.min_distance).epsilon(1e-12));
  }
}

TEST_CASE("sampled mode is deterministic and independent of worker count") {
  const auto flow = build_flow(MonotoneProfile::arctan(), Window::square(6), 1.0);
  VerifyFlowOptions one{kDefaultSeed, 1, 100};
  VerifyFlowOptions four{kDefaultSeed, 4, 100};
  const auto a = verify_flow(flow, 200000, one);
  const auto b = verify_flow(flow, 200000, four);
  CHECK(a.mode == CheckMode::Sampled);
  CHECK(a.pairs_checked == 200000);
  CHECK(a.seed == 0x5EED);
  CHECK(a.min_distance == b.min_distance);
  CHECK(a.witness == b.witness);
  CHECK(a.chain_inner_margin == b.chain_inner_margin);
  CHECK(a.passed);
}
