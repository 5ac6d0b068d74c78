#include "collfree/evolution.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "collfree/error.hpp"
#include "collfree/parallel.hpp"

namespace collfree {

double measured_discreteness(std::span<const Particle> particles, unsigned workers) {
  const auto best = minimize_over_pairs(particles.size(), workers, [&](std::size_t i, std::size_t j) {
    return norm(particles[i].position - particles[j].position);
  });
  return best.value;
}

MovingConfiguration make_configuration(std::vector<Particle> particles, double discreteness_radius,
                                       unsigned workers) {
  if (!std::isfinite(discreteness_radius) || discreteness_radius <= 0.0)
    throw Error(ErrorCode::InvalidArgument, "discreteness radius must be finite and positive");
  for (std::size_t i = 0; i < particles.size(); ++i) {
    if (!is_finite(particles[i].position) || !is_finite(particles[i].velocity))
      throw Error(ErrorCode::NonFinite, "particle " + std::to_string(i) + " has non-finite data");
  }
  const auto closest = minimize_over_pairs(particles.size(), workers, [&](std::size_t i, std::size_t j) {
    return norm(particles[i].position - particles[j].position);
  });
  if (closest.found) {
    const Particle& a = particles[closest.i];
    const Particle& b = particles[closest.j];
    if (a == b) {
      throw Error(ErrorCode::DuplicateParticle, "particles " + std::to_string(closest.i) + " and " +
                                                    std::to_string(closest.j) + " are identical");
    }
    if (closest.value < discreteness_radius - kMarginTolerance) {
      throw Error(ErrorCode::NotUniformlyDiscrete,
                  "particles " + std::to_string(closest.i) + " and " + std::to_string(closest.j) +
                      " start closer than the declared radius");
    }
  }
  return {std::move(particles), discreteness_radius};
}

std::vector<Vec2> slice_at(const MovingConfiguration& config, double t) {
  if (!std::isfinite(t)) throw Error(ErrorCode::NonFinite, "slice_at: non-finite time");
  std::vector<Vec2> out;
  out.reserve(config.particles.size());
  for (const auto& p : config.particles) out.push_back(p.at(t));
  return out;
}

HardCoreReport verify_hardcore(const MovingConfiguration& config, double threshold, unsigned workers) {
  if (!std::isfinite(threshold)) throw Error(ErrorCode::NonFinite, "verify_hardcore: non-finite threshold");
  const auto& ps = config.particles;
  const auto best = minimize_over_pairs(ps.size(), workers, [&](std::size_t i, std::size_t j) {
    return closest_approach(ps[i], ps[j]).distance;
  });

  HardCoreReport report;
  report.threshold = threshold;
  report.pair_count = ps.size() < 2 ? 0 : ps.size() * (ps.size() - 1) / 2;
  report.min_alltime_distance = best.value;
  if (best.found) report.witness = PairWitness{best.i, best.j, closest_approach(ps[best.i], ps[best.j])};
  report.margin = report.min_alltime_distance - threshold;
  report.passed = report.margin >= -kMarginTolerance;
  return report;
}

std::vector<Frame> snapshot_series(const MovingConfiguration& config, double t0, double t1, int frames) {
  if (!std::isfinite(t0) || !std::isfinite(t1) || t0 > t1 || frames < 1)
    throw Error(ErrorCode::BadRange, "snapshot_series: need finite t0 <= t1 and frames >= 1");
  std::vector<Frame> out;
  out.reserve(static_cast<std::size_t>(frames));
  for (int k = 0; k < frames; ++k) {
    double t = t0;
    if (k == frames - 1 && frames > 1) {
      t = t1;
    } else if (k > 0) {
      t = t0 + (t1 - t0) * static_cast<double>(k) / static_cast<double>(frames - 1);
    }
    out.push_back({t, slice_at(config, t)});
  }
  return out;
}

}  // namespace collfree
