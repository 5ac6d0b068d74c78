#include "collfree/lattice_flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "collfree/error.hpp"

namespace collfree {

MonotoneProfile MonotoneProfile::arctan() { return {ProfileKind::Arctan, std::numbers::pi / 2}; }
MonotoneProfile MonotoneProfile::tanh() { return {ProfileKind::Tanh, 1.0}; }
MonotoneProfile MonotoneProfile::rational_saturating() { return {ProfileKind::RationalSaturating, 1.0}; }

MonotoneProfile MonotoneProfile::table(std::vector<std::pair<std::int64_t, double>> entries) {
  if (entries.empty()) throw Error(ErrorCode::InvalidArgument, "table profile needs at least one entry");
  std::sort(entries.begin(), entries.end());
  double bound = 0.0;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (!std::isfinite(entries[k].second)) throw Error(ErrorCode::NonFinite, "table profile value");
    if (k > 0 && entries[k].first == entries[k - 1].first)
      throw Error(ErrorCode::InvalidArgument, "table profile repeats key " + std::to_string(entries[k].first));
    bound = std::max(bound, std::abs(entries[k].second));
  }
  MonotoneProfile profile(ProfileKind::TableDriven, bound);
  profile.table_ = std::move(entries);
  return profile;
}

bool MonotoneProfile::covers(std::int64_t n) const {
  if (kind_ != ProfileKind::TableDriven) return true;
  return std::binary_search(table_.begin(), table_.end(), std::pair{n, 0.0},
                            [](const auto& a, const auto& b) { return a.first < b.first; });
}

double profile_eval(const MonotoneProfile& phi, std::int64_t n) {
  const auto x = static_cast<double>(n);
  switch (phi.kind()) {
    case ProfileKind::Arctan: return std::atan(x);
    case ProfileKind::Tanh: return std::tanh(x);
    case ProfileKind::RationalSaturating: return x / (1.0 + std::abs(x));
    case ProfileKind::TableDriven: {
      const auto& t = phi.entries();
      auto it = std::lower_bound(t.begin(), t.end(), n, [](const auto& e, std::int64_t k) { return e.first < k; });
      if (it == t.end() || it->first != n)
        throw Error(ErrorCode::OutOfDomain, "table profile has no value at " + std::to_string(n));
      return it->second;
    }
  }
  return 0.0;
}

std::size_t Window::size() const {
  if (empty()) return 0;
  return static_cast<std::size_t>(x1_hi - x1_lo + 1) * static_cast<std::size_t>(x2_hi - x2_lo + 1);
}

Vec2 assign_w(const MonotoneProfile& phi, LatticePoint point) {
  return {profile_eval(phi, point.x1), profile_eval(phi, point.x2)};
}

MovingConfiguration FlowAssignment::configuration() const { return {particles, 1.0}; }

FlowAssignment build_flow(const MonotoneProfile& phi, const Window& window, double shift_margin) {
  if (window.empty()) throw Error(ErrorCode::EmptyWindow, "build_flow: window has no sites");
  if (!std::isfinite(shift_margin) || shift_margin < 0.0)
    throw Error(ErrorCode::InvalidArgument, "build_flow: shift margin must be finite and non-negative");

  const std::int64_t lo = std::min(window.x1_lo, window.x2_lo);
  const std::int64_t hi = std::max(window.x1_hi, window.x2_hi);
  double previous = profile_eval(phi, lo);
  for (std::int64_t n = lo + 1; n <= hi; ++n) {
    const double value = profile_eval(phi, n);
    if (!(value > previous))
      throw Error(ErrorCode::NonMonotoneProfile, "profile is not strictly increasing at " + std::to_string(n));
    previous = value;
  }

  FlowAssignment flow;
  const std::size_t count = window.size();
  flow.sites.reserve(count);
  flow.w.reserve(count);
  double sup = 0.0;
  for (std::int64_t a = window.x1_lo; a <= window.x1_hi; ++a) {
    for (std::int64_t b = window.x2_lo; b <= window.x2_hi; ++b) {
      flow.sites.push_back({a, b});
      flow.w.push_back(assign_w(phi, {a, b}));
      sup = std::max(sup, norm(flow.w.back()));
    }
  }
  flow.shift = {sup + shift_margin, 0.0};
  flow.particles.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const Vec2 position{static_cast<double>(flow.sites[k].x1), static_cast<double>(flow.sites[k].x2)};
    flow.particles.push_back({position, -rotate_quarter(flow.w[k]) + flow.shift});
  }
  flow.speed_min = shift_margin;
  flow.speed_max = norm(flow.shift) + sup;
  // Every closest approach is at least 1, so any radius below 1/2 is safe.
  flow.disk_radius = (1.0 - 1e-9) / 2.0;
  return flow;
}

namespace {

struct FlowAccumulator {
  PairMinimum distance;
  double inner = std::numeric_limits<double>::infinity();
  double norm = std::numeric_limits<double>::infinity();
  std::size_t failures = 0;
  std::size_t pairs = 0;

  void merge(const FlowAccumulator& o) {
    distance.merge(o.distance);
    inner = std::min(inner, o.inner);
    norm = std::min(norm, o.norm);
    failures += o.failures;
    pairs += o.pairs;
  }
};

void check_pair(const FlowAssignment& flow, std::size_t i, std::size_t j, FlowAccumulator& acc) {
  acc.distance.offer(closest_approach(flow.particles[i], flow.particles[j]).distance, i, j);
  const Vec2 dx{static_cast<double>(flow.sites[i].x1 - flow.sites[j].x1),
                static_cast<double>(flow.sites[i].x2 - flow.sites[j].x2)};
  const Vec2 dw = flow.w[i] - flow.w[j];
  const double sum = std::abs(dw.x1) + std::abs(dw.x2);
  const double inner_margin = dot(dx, dw) - sum;
  const double norm_margin = sum - norm(dw);
  acc.inner = std::min(acc.inner, inner_margin);
  acc.norm = std::min(acc.norm, norm_margin);
  if (inner_margin < -kChainTolerance || norm_margin < -kChainTolerance) ++acc.failures;
  ++acc.pairs;
}

constexpr std::size_t kSampleBlock = 1 << 16;

}  // namespace

FlowReport verify_flow(const FlowAssignment& flow, std::size_t sample_budget, const VerifyFlowOptions& options) {
  const std::size_t n = flow.particles.size();
  if (flow.sites.size() != n || flow.w.size() != n)
    throw Error(ErrorCode::InvalidArgument, "verify_flow: sites, w and particles differ in length");

  FlowReport report;
  report.seed = options.seed;
  const std::size_t total_pairs = n < 2 ? 0 : n * (n - 1) / 2;

  FlowAccumulator acc;
  if (total_pairs == 0) {
    report.mode = CheckMode::Vacuous;
  } else if (total_pairs <= options.exhaustive_limit) {
    report.mode = CheckMode::Exhaustive;
    std::vector<FlowAccumulator> partial(kPairBlocks);
    for_each_block(kPairBlocks, options.workers, [&](std::size_t block) {
      FlowAccumulator local;
      for (std::size_t i = block; i < n; i += kPairBlocks)
        for (std::size_t j = i + 1; j < n; ++j) check_pair(flow, i, j, local);
      partial[block] = local;
    });
    for (const auto& p : partial) acc.merge(p);
  } else {
    report.mode = CheckMode::Sampled;
    const std::size_t blocks = (sample_budget + kSampleBlock - 1) / kSampleBlock;
    std::vector<FlowAccumulator> partial(blocks);
    for_each_block(blocks, options.workers, [&](std::size_t block) {
      std::mt19937_64 rng(derive_seed(options.seed, block));
      const std::size_t begin = block * kSampleBlock;
      const std::size_t end = std::min(sample_budget, begin + kSampleBlock);
      FlowAccumulator local;
      for (std::size_t s = begin; s < end; ++s) {
        std::size_t i = rng() % n;
        std::size_t j = rng() % (n - 1);
        if (j >= i) ++j;
        if (j < i) std::swap(i, j);
        check_pair(flow, i, j, local);
      }
      partial[block] = local;
    });
    for (const auto& p : partial) acc.merge(p);
  }

  report.pairs_checked = acc.pairs;
  report.min_distance = acc.distance.value;
  if (acc.distance.found) report.witness = std::pair{acc.distance.i, acc.distance.j};
  report.chain_inner_margin = acc.inner;
  report.chain_norm_margin = acc.norm;
  report.chain_failures = acc.failures;

  std::vector<std::size_t> order(n);
  for (std::size_t k = 0; k < n; ++k) order[k] = k;
  auto key = [&](std::size_t k) { return std::pair{flow.particles[k].velocity.x1, flow.particles[k].velocity.x2}; };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return key(a) < key(b) || (key(a) == key(b) && a < b);
  });
  for (std::size_t k = 1; k < n; ++k) {
    if (key(order[k]) == key(order[k - 1])) {
      const std::pair candidate{std::min(order[k], order[k - 1]), std::max(order[k], order[k - 1])};
      if (!report.duplicate_velocity || candidate < *report.duplicate_velocity) report.duplicate_velocity = candidate;
    }
  }
  report.injective = !report.duplicate_velocity.has_value();

  report.measured_speed_min = std::numeric_limits<double>::infinity();
  report.measured_speed_max = 0.0;
  for (const auto& p : flow.particles) {
    const double s = norm(p.velocity);
    report.measured_speed_min = std::min(report.measured_speed_min, s);
    report.measured_speed_max = std::max(report.measured_speed_max, s);
  }
  if (n == 0) report.measured_speed_min = 0.0;
  const double slack = kChainTolerance * std::max(1.0, flow.speed_max);
  report.speeds_within_bounds = n == 0 || (report.measured_speed_min >= flow.speed_min - slack &&
                                           report.measured_speed_max <= flow.speed_max + slack);
  report.radius_ok = flow.disk_radius > 0.0 && flow.disk_radius < report.min_distance / 2.0;

  report.passed = report.min_distance >= 1.0 - kMarginTolerance && report.chain_failures == 0 &&
                  report.injective && report.speeds_within_bounds && report.radius_ok;
  return report;
}

const char* to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::Arctan: return "arctan";
    case ProfileKind::Tanh: return "tanh";
    case ProfileKind::RationalSaturating: return "rational";
    case ProfileKind::TableDriven: return "table";
  }
  return "unknown";
}

const char* to_string(CheckMode mode) {
  switch (mode) {
    case CheckMode::Vacuous: return "vacuous";
    case CheckMode::Exhaustive: return "exhaustive";
    case CheckMode::Sampled: return "sampled";
  }
  return "unknown";
}

}  // namespace collfree
