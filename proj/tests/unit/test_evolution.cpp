#include <cmath>

#include "collfree/error.hpp"
#include "collfree/evolution.hpp"
#include "collfree/lattice_flow.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace collfree;

namespace {

MovingConfiguration head_on() { return make_configuration({{{0, 0}, {1, 0}}, {{4, 0}, {-1, 0}}}, 1.0); }

MovingConfiguration random_config(oracle::Gen& gen, int n) {
  std::vector<Particle> ps;
  // Jittered lattice keeps initial distances above 0.5.
  for (int k = 0; k < n; ++k) {
    const Vec2 site{2.0 * (k % 5), 2.0 * (k / 5)};
    ps.push_back({site + gen.vec2(0.7), gen.vec2(2.0)});
  }
  return make_configuration(std::move(ps), 0.5);
}

}  // namespace

TEST_CASE("slice_at examples") {
  const auto flow = build_flow(MonotoneProfile::arctan(), {0, 1, 0, 0}, 1.0).configuration();
  const auto at0 = slice_at(flow, 0.0);
  CHECK(at0[0] == flow.particles[0].position);
  CHECK(at0[1] == flow.particles[1].position);

  const auto one = make_configuration({{{0, 0}, {1, 2}}}, 1.0);
  CHECK(slice_at(one, 3.0)[0] == Vec2{3, 6});

  for (double t : {10.0, -10.0}) {
    const auto s = slice_at(flow, t);
    CHECK(norm(s[0] - s[1]) >= 1.0);
    CHECK(norm(s[0] - s[1]) >= verify_hardcore(flow).min_alltime_distance - 1e-9);
  }
}

TEST_CASE("configuration validation") {
  CHECK_THROWS_WITH_AS(make_configuration({{{0, 0}, {0, 0}}, {{0.5, 0}, {0, 0}}}, 1.0),
                       doctest::Contains("NotUniformlyDiscrete"), Error);
  CHECK_THROWS_WITH_AS(make_configuration({{{0, 0}, {1, 0}}, {{0, 0}, {1, 0}}}, 1.0),
                       doctest::Contains("DuplicateParticle"), Error);
  CHECK_THROWS_WITH_AS(make_configuration({{{NAN, 0}, {1, 0}}}, 1.0), doctest::Contains("NonFinite"), Error);
  CHECK_THROWS_AS(make_configuration({}, 0.0), Error);
  CHECK(measured_discreteness(std::vector<Particle>{{{0, 0}, {0, 0}}, {{3, 4}, {0, 0}}}) == 5.0);
  CHECK(std::isinf(measured_discreteness(std::vector<Particle>{{{0, 0}, {0, 0}}})));
}

TEST_CASE("verify_hardcore examples") {
  SUBCASE("static pair") {
    const auto r = verify_hardcore(make_configuration({{{0, 0}, {0, 0}}, {{2, 0}, {0, 0}}}, 1.0));
    CHECK(r.min_alltime_distance == 2.0);
    CHECK(r.margin == 1.0);
    REQUIRE(r.witness);
    CHECK_FALSE(r.witness->approach.time_at_min);
    CHECK(r.passed);
  }
  SUBCASE("head-on collision") {
    const auto r = verify_hardcore(head_on());
    CHECK(r.min_alltime_distance == 0.0);
    REQUIRE(r.witness);
    CHECK(r.witness->i == 0);
    CHECK(r.witness->j == 1);
    REQUIRE(r.witness->approach.time_at_min);
    CHECK(*r.witness->approach.time_at_min == 2.0);
    CHECK(r.margin == -1.0);
    CHECK_FALSE(r.passed);
  }
  SUBCASE("5x5 lattice flow sits exactly on the threshold") {
    const auto r = verify_hardcore(build_flow(MonotoneProfile::arctan(), Window::square(2), 1.0).configuration());
    CHECK(r.pair_count == 300);
    CHECK(std::abs(r.min_alltime_distance - 1.0) <= 1e-9);
    CHECK(std::abs(r.margin) <= 1e-9);
    CHECK(r.passed);
  }
  SUBCASE("single particle has no pairs") {
    const auto r = verify_hardcore(make_configuration({{{0, 0}, {1, 0}}}, 1.0));
    CHECK(r.pair_count == 0);
    CHECK(std::isinf(r.min_alltime_distance));
    CHECK_FALSE(r.witness);
    CHECK(r.passed);
  }
}

TEST_CASE("witness is the lexicographically smallest minimizing pair") {
  // Four static particles on a unit square: every edge ties at distance 1.
  const auto r = verify_hardcore(make_configuration(
      {{{0, 0}, {0, 0}}, {{1, 0}, {0, 0}}, {{0, 1}, {0, 0}}, {{1, 1}, {0, 0}}}, 1.0, 3));
  REQUIRE(r.witness);
  CHECK(r.witness->i == 0);
  CHECK(r.witness->j == 1);
}

TEST_CASE("snapshot_series examples") {
  const auto cfg = head_on();
  const auto single = snapshot_series(cfg, 0.5, 9.0, 1);
  REQUIRE(single.size() == 1);
  CHECK(single[0].time == 0.5);

  const auto three = snapshot_series(cfg, 0.0, 2.0, 3);
  REQUIRE(three.size() == 3);
  CHECK(three[0].time == 0.0);
  CHECK(three[1].time == 1.0);
  CHECK(three[2].time == 2.0);
  CHECK(three[2].positions[0] == three[2].positions[1]);

  const auto still = make_configuration({{{0, 0}, {0, 0}}, {{5, 1}, {0, 0}}}, 1.0);
  const auto frames = snapshot_series(still, -3.0, 7.0, 6);
  for (const auto& f : frames) CHECK(f.positions == frames[0].positions);

  CHECK_THROWS_WITH_AS(snapshot_series(cfg, 1.0, 0.0, 2), doctest::Contains("BadRange"), Error);
  CHECK_THROWS_WITH_AS(snapshot_series(cfg, 0.0, 1.0, 0), doctest::Contains("BadRange"), Error);
}

TEST_CASE("time reversal and translation leave the all-time minimum unchanged") {
  oracle::Gen gen(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const auto cfg = random_config(gen, 12);
    const auto base = verify_hardcore(cfg);

    auto reversed = cfg;
    for (auto& p : reversed.particles) p.velocity = -1.0 * p.velocity;
    const auto rev = verify_hardcore(reversed);
    CHECK(rev.min_alltime_distance == doctest::Approx(base.min_alltime_distance).epsilon(1e-12));

    auto moved = cfg;
    const Vec2 shift = gen.vec2(1e3);
    for (auto& p : moved.particles) p.position = p.position + shift;
    const auto tr = verify_hardcore(moved);
    CHECK(std::abs(tr.min_alltime_distance - base.min_alltime_distance) <= 1e-9);
    CHECK(tr.witness->i == base.witness->i);
    CHECK(tr.witness->j == base.witness->j);
    CHECK(tr.passed == base.passed);
  }
}

TEST_CASE("sampled slices never undercut the all-time minimum") {
  oracle::Gen gen(77);
  for (int trial = 0; trial < 20; ++trial) {
    const auto cfg = random_config(gen, 10);
    const double least = verify_hardcore(cfg).min_alltime_distance;
    for (const auto& frame : snapshot_series(cfg, -20.0, 20.0, 401))
      for (std::size_t i = 0; i < frame.positions.size(); ++i)
        for (std::size_t j = i + 1; j < frame.positions.size(); ++j)
          CHECK(norm(frame.positions[i] - frame.positions[j]) >= least - 1e-9);
  }
}

TEST_CASE("worker count does not change the report") {
  oracle::Gen gen(5);
  const auto cfg = random_config(gen, 25);
  const auto a = verify_hardcore(cfg, 1.0, 1);
  const auto b = verify_hardcore(cfg, 1.0, 4);
  CHECK(a.min_alltime_distance == b.min_alltime_distance);
  CHECK(a.witness->i == b.witness->i);
  CHECK(a.witness->j == b.witness->j);
}

TEST_CASE("lattice flows pass the hard-core check up to 101x101") {
  for (std::int64_t n : {0, 1, 3, 10, 50}) {
    const auto cfg = build_flow(MonotoneProfile::arctan(), Window::square(n), 1.0).configuration();
    const auto r = verify_hardcore(cfg);
    CHECK(r.pair_count == cfg.particles.size() * (cfg.particles.size() - 1) / 2);
    CHECK(r.passed);
  }
}
