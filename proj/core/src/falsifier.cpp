#include "collfree/falsifier.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "collfree/error.hpp"
#include "collfree/format.hpp"

namespace collfree {

double aperture_for(double c) {
  if (!std::isfinite(c) || c <= 0.0) throw Error(ErrorCode::InvalidArgument, "separation constant must be positive");
  return std::min(c / 2.0, 0.5);
}

double cone_half_gap(double aperture_cos) { return std::asin(aperture_cos); }

Cone::Cone(Vec2 axis, double aperture_cos) : aperture_(aperture_cos) {
  if (!is_finite(axis) || !std::isfinite(aperture_cos)) throw Error(ErrorCode::NonFinite, "Cone: non-finite input");
  const double len = norm(axis);
  if (len == 0.0) throw Error(ErrorCode::ZeroAxis, "Cone: axis must be nonzero");
  if (!(aperture_cos > 0.0 && aperture_cos < 1.0))
    throw Error(ErrorCode::InvalidArgument, "Cone: aperture cosine must lie in (0, 1)");
  axis_ = (1.0 / len) * axis;
}

ConeTest cone_contains(const Cone& cone, Vec2 z) {
  if (!is_finite(z)) throw Error(ErrorCode::NonFinite, "cone_contains: non-finite vector");
  const double margin = dot(cone.unit_axis(), z) - cone.aperture_cos() * norm(z);
  return {margin >= 0.0, margin};
}

// ---------------------------------------------------------------------------
// Candidate fields

CandidateField CandidateField::constant(Vec2 value) {
  if (!is_finite(value)) throw Error(ErrorCode::NonFinite, "constant field value");
  CandidateField f;
  f.kind_ = FieldKind::Constant;
  f.value_ = value;
  f.bound_ = norm(value);
  return f;
}

CandidateField CandidateField::saturated_radial(double bound, double scale) {
  if (!(bound > 0.0) || !(scale > 0.0) || !std::isfinite(bound) || !std::isfinite(scale))
    throw Error(ErrorCode::InvalidArgument, "saturated radial field needs positive bound and scale");
  CandidateField f;
  f.kind_ = FieldKind::SaturatedRadial;
  f.bound_ = bound;
  f.scale_ = scale;
  return f;
}

CandidateField CandidateField::rotational(double bound, double core) {
  if (!(bound > 0.0) || !(core > 0.0) || !std::isfinite(bound) || !std::isfinite(core))
    throw Error(ErrorCode::InvalidArgument, "rotational field needs positive bound and core radius");
  CandidateField f;
  f.kind_ = FieldKind::Rotational;
  f.bound_ = bound;
  f.scale_ = core;
  return f;
}

CandidateField CandidateField::clamped_linear(double bound, std::array<double, 4> matrix) {
  if (!(bound > 0.0) || !std::isfinite(bound)) throw Error(ErrorCode::InvalidArgument, "clamped field needs positive bound");
  for (double m : matrix)
    if (!std::isfinite(m)) throw Error(ErrorCode::NonFinite, "clamped field matrix");
  CandidateField f;
  f.kind_ = FieldKind::ClampedLinear;
  f.bound_ = bound;
  f.matrix_ = matrix;
  return f;
}

CandidateField CandidateField::sampled_grid(Vec2 origin, double hx, double hy, std::size_t nx, std::size_t ny,
                                            std::vector<Vec2> values) {
  if (nx == 0 || ny == 0 || values.size() != nx * ny)
    throw Error(ErrorCode::InvalidArgument, "sampled grid needs nx * ny values");
  if (!is_finite(origin) || !(hx > 0.0) || !(hy > 0.0) || !std::isfinite(hx) || !std::isfinite(hy))
    throw Error(ErrorCode::InvalidArgument, "sampled grid needs finite origin and positive spacing");
  CandidateField f;
  f.kind_ = FieldKind::SampledGrid;
  f.origin_ = origin;
  f.hx_ = hx;
  f.hy_ = hy;
  f.nx_ = nx;
  f.ny_ = ny;
  for (const auto& v : values) {
    if (!is_finite(v)) throw Error(ErrorCode::NonFinite, "sampled grid value");
    f.bound_ = std::max(f.bound_, norm(v));
  }
  f.grid_ = std::move(values);
  return f;
}

namespace {

std::vector<double> distinct_sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

double regular_spacing(const std::vector<double>& coords, const char* axis) {
  if (coords.size() == 1) return 1.0;
  const double h = (coords.back() - coords.front()) / static_cast<double>(coords.size() - 1);
  for (std::size_t k = 0; k < coords.size(); ++k) {
    const double expected = coords.front() + h * static_cast<double>(k);
    if (std::abs(coords[k] - expected) > 1e-9 * std::max(1.0, std::abs(expected)))
      throw Error(ErrorCode::InvalidArgument, std::string("sampled grid nodes are not evenly spaced along ") + axis);
  }
  return h;
}

}  // namespace

CandidateField CandidateField::sampled_grid(const std::vector<Particle>& nodes) {
  if (nodes.empty()) throw Error(ErrorCode::InvalidArgument, "sampled grid needs at least one node");
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& n : nodes) {
    xs.push_back(n.position.x1);
    ys.push_back(n.position.x2);
  }
  xs = distinct_sorted(std::move(xs));
  ys = distinct_sorted(std::move(ys));
  if (xs.size() * ys.size() != nodes.size())
    throw Error(ErrorCode::InvalidArgument, "sampled grid nodes do not form a full rectangular grid");
  const double hx = regular_spacing(xs, "x1");
  const double hy = regular_spacing(ys, "x2");
  std::vector<Vec2> values(nodes.size());
  std::vector<bool> seen(nodes.size(), false);
  for (const auto& n : nodes) {
    const auto i = static_cast<std::size_t>(std::lower_bound(xs.begin(), xs.end(), n.position.x1) - xs.begin());
    const auto j = static_cast<std::size_t>(std::lower_bound(ys.begin(), ys.end(), n.position.x2) - ys.begin());
    const std::size_t k = j * xs.size() + i;
    if (seen[k]) throw Error(ErrorCode::InvalidArgument, "sampled grid repeats a node");
    seen[k] = true;
    values[k] = n.velocity;
  }
  return sampled_grid({xs.front(), ys.front()}, hx, hy, xs.size(), ys.size(), std::move(values));
}

Vec2 CandidateField::operator()(Vec2 x) const {
  switch (kind_) {
    case FieldKind::Constant: return value_;
    case FieldKind::SaturatedRadial:
      return (bound_ / std::sqrt(scale_ * scale_ + dot(x, x))) * x;
    case FieldKind::Rotational:
      return (bound_ / std::max(norm(x), scale_)) * Vec2{-x.x2, x.x1};
    case FieldKind::ClampedLinear: {
      const Vec2 y{matrix_[0] * x.x1 + matrix_[1] * x.x2, matrix_[2] * x.x1 + matrix_[3] * x.x2};
      const double len = norm(y);
      return len <= bound_ ? y : (bound_ / len) * y;
    }
    case FieldKind::SampledGrid: {
      auto locate = [](double coord, double origin, double h, std::size_t n, std::size_t& cell, double& t) {
        const double u = std::clamp((coord - origin) / h, 0.0, static_cast<double>(n - 1));
        if (n == 1) {
          cell = 0;
          t = 0.0;
          return;
        }
        cell = std::min(static_cast<std::size_t>(u), n - 2);
        t = u - static_cast<double>(cell);
      };
      std::size_t i = 0;
      std::size_t j = 0;
      double s = 0.0;
      double t = 0.0;
      locate(x.x1, origin_.x1, hx_, nx_, i, s);
      locate(x.x2, origin_.x2, hy_, ny_, j, t);
      const std::size_t i1 = std::min(i + 1, nx_ - 1);
      const std::size_t j1 = std::min(j + 1, ny_ - 1);
      const Vec2 v00 = grid_[j * nx_ + i];
      const Vec2 v10 = grid_[j * nx_ + i1];
      const Vec2 v01 = grid_[j1 * nx_ + i];
      const Vec2 v11 = grid_[j1 * nx_ + i1];
      return ((1 - s) * (1 - t)) * v00 + (s * (1 - t)) * v10 + ((1 - s) * t) * v01 + (s * t) * v11;
    }
  }
  return {};
}

std::string CandidateField::describe() const {
  std::ostringstream out;
  out << to_string(kind_) << '(';
  switch (kind_) {
    case FieldKind::Constant: out << "value=" << format_real(value_.x1) << ':' << format_real(value_.x2); break;
    case FieldKind::SaturatedRadial: out << "bound=" << format_real(bound_) << ",scale=" << format_real(scale_); break;
    case FieldKind::Rotational: out << "bound=" << format_real(bound_) << ",core=" << format_real(scale_); break;
    case FieldKind::ClampedLinear:
      out << "bound=" << format_real(bound_) << ",matrix=" << format_real(matrix_[0]) << ':' << format_real(matrix_[1])
          << ':' << format_real(matrix_[2]) << ':' << format_real(matrix_[3]);
      break;
    case FieldKind::SampledGrid: out << "nx=" << nx_ << ",ny=" << ny_; break;
  }
  out << ')';
  return out.str();
}

// ---------------------------------------------------------------------------
// Chaining

std::int64_t chain_segments(double length) {
  if (!std::isfinite(length) || length <= 1.0)
    throw Error(ErrorCode::DegenerateSegment, "chain needs a segment longer than 1");
  return static_cast<std::int64_t>(std::ceil(length / 2.0));
}

ChainReport chain_check(const CandidateField& field, Vec2 x, Vec2 y, double aperture_cos) {
  if (!is_finite(x) || !is_finite(y)) throw Error(ErrorCode::NonFinite, "chain_check: non-finite endpoint");
  ChainReport report;
  report.length = norm(x - y);
  report.segments = chain_segments(report.length);
  report.step = report.length / static_cast<double>(report.segments);
  const Cone cone(x - y, aperture_cos);

  const auto n = report.segments;
  Vec2 previous = field(x);
  const Vec2 first = previous;
  Vec2 total{};
  double total_len = 0.0;
  report.increment_margins.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 1; i <= n; ++i) {
    const Vec2 z = i == n ? y : x + (static_cast<double>(i) / static_cast<double>(n)) * (y - x);
    const Vec2 current = field(z);
    const Vec2 increment = previous - current;
    const auto test = cone_contains(cone, increment);
    report.increment_margins.push_back(test.margin);
    if (test.member) ++report.members;
    total = total + increment;
    total_len += norm(increment);
    previous = current;
  }
  report.all_members = report.members == static_cast<std::size_t>(n);
  report.sum = cone_contains(cone, first - previous);
  report.telescoped = cone_contains(cone, total);
  const double tolerance = 1e-12 * std::max(1.0, total_len);
  report.implication_holds = !report.all_members || report.telescoped.margin >= -tolerance;
  return report;
}

namespace {

double margin_of(Vec2 x, Vec2 y, Vec2 wx, Vec2 wy, double c) {
  const Vec2 dw = wx - wy;
  return c * norm(dw) - std::abs(dot(x - y, dw));
}

}  // namespace

double violation_margin(const CandidateField& field, Vec2 x, Vec2 y, double c) {
  return margin_of(x, y, field(x), field(y), c);
}

// ---------------------------------------------------------------------------
// Search

namespace {

struct Candidate {
  Vec2 x;
  Vec2 y;
  double score = -std::numeric_limits<double>::infinity();
};

struct SlotOutcome {
  bool found = false;
  ViolationReport violation;
  Candidate best;
  bool sign_change = false;
  std::size_t used = 0;
};

class SlotSearch {
 public:
  SlotSearch(const CandidateField& field, double c, std::size_t budget, std::size_t slot,
             const FalsifyOptions& options, const std::atomic<std::size_t>& winner)
      : field_(field), c_(c), budget_(budget), slot_(slot), options_(options), winner_(winner),
        rng_(derive_seed(options.seed, slot)) {}

  SlotOutcome run() {
    try {
      probe_stage(budget_ * 2 / 5);
      random_stage(budget_ * 4 / 5);
      refine_stage();
    } catch (const Stop&) {
    }
    outcome_.used = used_;
    outcome_.best = pool_.empty() ? Candidate{} : pool_.front();
    return outcome_;
  }

 private:
  struct Stop {};
  struct Found {};

  Vec2 eval(Vec2 p) {
    if (outcome_.found || used_ >= budget_) throw Stop{};
    if ((used_ & 255) == 0 && winner_.load(std::memory_order_relaxed) < slot_) throw Stop{};
    ++used_;
    return field_(p);
  }

  double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  static Vec2 unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

  // Tests a pair whose field values are already known. Throws Stop once a
  // violation is recorded.
  void test(Vec2 x, Vec2 wx, Vec2 y, Vec2 wy, SearchRoute route) {
    if (!(norm(x - y) > 1.0)) return;
    const double margin = margin_of(x, y, wx, wy, c_);
    const Vec2 dw = wx - wy;
    const double dw_len = norm(dw);
    const double signed_inner = dot(x - y, dw);
    const double score = dw_len == 0.0 ? std::numeric_limits<double>::infinity() : c_ - std::abs(signed_inner) / dw_len;
    if (margin >= 0.0) {
      outcome_.found = true;
      outcome_.violation = {x, y, margin, c_, used_, route, slot_};
      throw Stop{};
    }
    offer({x, y, score});
    if (route == SearchRoute::SignChange) return;
    if (signed_inner > 0.0 && !positive_) positive_ = Candidate{x, y, score};
    if (signed_inner < 0.0 && !negative_) negative_ = Candidate{x, y, score};
    if (positive_ && negative_ && !bisected_) {
      bisected_ = true;
      outcome_.sign_change = true;
      bisect(*positive_, *negative_);
    }
  }

  void test_pair(Vec2 x, Vec2 y, SearchRoute route) { test(x, eval(x), y, eval(y), route); }

  void offer(const Candidate& c) {
    constexpr std::size_t kPool = 8;
    if (pool_.size() == kPool && c.score <= pool_.back().score) return;
    auto it = std::upper_bound(pool_.begin(), pool_.end(), c,
                               [](const Candidate& a, const Candidate& b) { return a.score > b.score; });
    pool_.insert(it, c);
    if (pool_.size() > kPool) pool_.pop_back();
  }

  // Walks a path inside {|x - y| > 1} from a pair with positive inner product
  // to one with negative inner product; continuity forces a zero in between.
  void bisect(const Candidate& pos, const Candidate& neg) {
    const Vec2 m0 = 0.5 * (pos.x + pos.y);
    const Vec2 m1 = 0.5 * (neg.x + neg.y);
    const Vec2 d0 = pos.x - pos.y;
    const Vec2 d1 = neg.x - neg.y;
    const double r0 = norm(d0);
    const double r1 = norm(d1);
    const double a0 = std::atan2(d0.x2, d0.x1);
    double turn = std::atan2(d1.x2, d1.x1) - a0;
    turn = std::remainder(turn, 2.0 * std::numbers::pi);
    double lo = 0.0;
    double hi = 1.0;
    for (int it = 0; it < 64; ++it) {
      const double t = 0.5 * (lo + hi);
      const Vec2 m = (1.0 - t) * m0 + t * m1;
      const Vec2 d = ((1.0 - t) * r0 + t * r1) * unit(a0 + t * turn);
      const Vec2 x = m + 0.5 * d;
      const Vec2 y = m - 0.5 * d;
      const Vec2 wx = eval(x);
      const Vec2 wy = eval(y);
      test(x, wx, y, wy, SearchRoute::SignChange);
      (dot(x - y, wx - wy) > 0.0 ? lo : hi) = t;
    }
  }

  void chain(Vec2 x, Vec2 y) {
    const double length = norm(x - y);
    if (!(length > 1.0)) return;
    const auto n = chain_segments(length);
    Vec2 previous = x;
    Vec2 w_previous = eval(x);
    const Vec2 w_first = w_previous;
    for (std::int64_t i = 1; i <= n; ++i) {
      const Vec2 z = i == n ? y : x + (static_cast<double>(i) / static_cast<double>(n)) * (y - x);
      const Vec2 wz = eval(z);
      test(previous, w_previous, z, wz, SearchRoute::Probe);
      previous = z;
      w_previous = wz;
    }
    test(x, w_first, y, w_previous, SearchRoute::Probe);
  }

  // Far pairs joined by chains of short segments: antipodal points on lines
  // passing near the origin, and pairs at very different radii in nearby
  // directions.
  void probe_stage(std::size_t stop_at) {
    std::vector<double> levels;
    for (double r = 16.0; r <= options_.search_radius; r *= 4.0) levels.push_back(r);
    if (levels.empty()) levels.push_back(std::max(2.0, options_.search_radius));
    constexpr double offsets[] = {0.5, 1.0, 0.25, 2.0};
    constexpr double golden = 0.6180339887498949;
    for (std::size_t k = slot_; used_ < stop_at; k += kSearchSlots) {
      const double alpha = 2.0 * std::numbers::pi * std::fmod(static_cast<double>(k) * golden, 1.0);
      const std::size_t m = k / kSearchSlots;
      const double radius = levels[(m / 2) % levels.size()];
      const double offset = offsets[(m / (2 * levels.size())) % 4];
      const Vec2 u = unit(alpha);
      const Vec2 normal{-u.x2, u.x1};
      if (m % 2 == 0) {
        chain(radius * u + offset * normal, -radius * u + offset * normal);
      } else {
        const double inner = radius / 16.0 + 2.0;
        const double theta = std::min(0.5, offset / inner);
        chain(inner * u, radius * unit(alpha + theta));
      }
    }
  }

  void random_stage(std::size_t stop_at) {
    const double log_radius = std::log(std::max(2.0, options_.search_radius));
    while (used_ < stop_at) {
      const Vec2 mid = std::exp(uniform() * log_radius) * unit(2.0 * std::numbers::pi * uniform());
      const double length = uniform() < 0.8 ? 2.0 - uniform() : 1.0 + std::exp(uniform() * (log_radius + 1.0));
      const Vec2 d = length * unit(2.0 * std::numbers::pi * uniform());
      test_pair(mid + 0.5 * d, mid - 0.5 * d, SearchRoute::Random);
    }
  }

  // Coordinate hill climbing on the normalized score from the best pairs.
  void refine_stage() {
    if (pool_.empty()) test_pair({0.0, 0.0}, {2.0, 0.0}, SearchRoute::Refine);
    const std::vector<Candidate> starts = pool_;
    for (std::size_t round = 0;; ++round) {
      Candidate current = starts[round % starts.size()];
      double step = 0.25 * std::max(1.0, 1e-2 * norm(current.x));
      const double floor = 1e-13 * std::max(1.0, norm(current.x) + norm(current.y));
      while (step > floor) {
        bool improved = false;
        for (int coord = 0; coord < 4; ++coord) {
          for (double sign : {1.0, -1.0}) {
            Candidate trial = current;
            double* target = coord == 0 ? &trial.x.x1 : coord == 1 ? &trial.x.x2 : coord == 2 ? &trial.y.x1 : &trial.y.x2;
            *target += sign * step;
            if (!(norm(trial.x - trial.y) > 1.0)) continue;
            const Vec2 wx = eval(trial.x);
            const Vec2 wy = eval(trial.y);
            test(trial.x, wx, trial.y, wy, SearchRoute::Refine);
            const Vec2 dw = wx - wy;
            const double len = norm(dw);
            trial.score = len == 0.0 ? std::numeric_limits<double>::infinity()
                                     : c_ - std::abs(dot(trial.x - trial.y, dw)) / len;
            if (trial.score > current.score) {
              current = trial;
              improved = true;
            }
          }
        }
        if (!improved) step *= 0.5;
      }
    }
  }

  const CandidateField& field_;
  double c_;
  std::size_t budget_;
  std::size_t slot_;
  const FalsifyOptions& options_;
  const std::atomic<std::size_t>& winner_;
  std::mt19937_64 rng_;
  std::size_t used_ = 0;
  SlotOutcome outcome_;
  std::vector<Candidate> pool_;
  std::optional<Candidate> positive_;
  std::optional<Candidate> negative_;
  bool bisected_ = false;
};

}  // namespace

FalsifyResult falsify(const CandidateField& field, double c, std::size_t budget, const FalsifyOptions& options) {
  if (!std::isfinite(c) || c <= 0.0) throw Error(ErrorCode::InvalidArgument, "falsify: c must be positive");
  if (budget < 1) throw Error(ErrorCode::InvalidArgument, "falsify: budget must be at least 1");
  if (!(options.search_radius > 1.0) || !std::isfinite(options.search_radius))
    throw Error(ErrorCode::InvalidArgument, "falsify: search radius must exceed 1");

  std::vector<SlotOutcome> outcomes(kSearchSlots);
  std::atomic<std::size_t> winner{kSearchSlots};
  for_each_block(kSearchSlots, options.workers, [&](std::size_t slot) {
    const std::size_t share = budget / kSearchSlots + (slot < budget % kSearchSlots ? 1 : 0);
    if (share == 0) return;
    SlotSearch search(field, c, share, slot, options, winner);
    outcomes[slot] = search.run();
    if (outcomes[slot].found) {
      std::size_t current = winner.load();
      while (slot < current && !winner.compare_exchange_weak(current, slot)) {
      }
    }
  });

  FalsifyResult result;
  std::size_t used = 0;
  for (std::size_t slot = 0; slot < kSearchSlots; ++slot) {
    const auto& o = outcomes[slot];
    used += o.used;
    result.sign_change_seen = result.sign_change_seen || o.sign_change;
    if (o.found) {
      result.found = true;
      result.report = o.violation;
      result.report.evaluations_used = used;
      break;
    }
  }
  if (result.found) {
    const Vec2 dw = field(result.report.x) - field(result.report.y);
    const double len = norm(dw);
    result.score = len == 0.0 ? std::numeric_limits<double>::infinity()
                              : c - std::abs(dot(result.report.x - result.report.y, dw)) / len;
  } else {
    std::size_t best_slot = 0;
    for (std::size_t slot = 1; slot < kSearchSlots; ++slot)
      if (outcomes[slot].best.score > outcomes[best_slot].best.score) best_slot = slot;
    const auto& best = outcomes[best_slot].best;
    result.report = {best.x, best.y, violation_margin(field, best.x, best.y, c), c, used, SearchRoute::Random,
                     best_slot};
    result.score = best.score;
  }
  result.evaluations_used = used;
  return result;
}

// ---------------------------------------------------------------------------
// Angular diagnostics

double circular_distance(double a, double b) {
  const double two_pi = 2.0 * std::numbers::pi;
  double d = std::fmod(std::abs(a - b), two_pi);
  return std::min(d, two_pi - d);
}

std::int64_t max_separated_directions(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw Error(ErrorCode::InvalidArgument, "max_separated_directions: delta must be positive");
  return static_cast<std::int64_t>(std::floor(std::numbers::pi / delta));
}

AngularProbeReport angular_separation_probe(const CandidateField& field, double radius, std::size_t samples,
                                            const ProbeOptions& options) {
  if (!(radius > 1.0) || !std::isfinite(radius)) throw Error(ErrorCode::InvalidArgument, "probe radius must exceed 1");
  if (samples < 2) throw Error(ErrorCode::InvalidArgument, "probe needs at least two samples");
  if (!(options.aperture_cos > 0.0 && options.aperture_cos < 1.0))
    throw Error(ErrorCode::InvalidArgument, "probe aperture cosine must lie in (0, 1)");

  AngularProbeReport report;
  report.radius = radius;
  report.samples = samples;
  report.delta = cone_half_gap(options.aperture_cos);
  report.floor = 2.0 * report.delta;
  report.max_directions = max_separated_directions(report.delta);

  struct Accum {
    Vec2 seed;
    Vec2 sum;
    Vec2 direction_sum;
    std::size_t count = 0;
  };
  std::vector<Accum> acc;
  const double tolerance = options.cluster_tolerance * field.bound();
  for (std::size_t k = 0; k < samples; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(samples);
    const Vec2 u{std::cos(angle), std::sin(angle)};
    const Vec2 value = field(radius * u);
    std::size_t best = acc.size();
    double best_distance = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < acc.size(); ++c) {
      const double d = norm(value - acc[c].seed);
      if (d <= tolerance && d < best_distance) {
        best = c;
        best_distance = d;
      }
    }
    if (best == acc.size()) acc.push_back({value, {}, {}, 0});
    acc[best].sum = acc[best].sum + value;
    acc[best].direction_sum = acc[best].direction_sum + u;
    ++acc[best].count;
  }

  const double min_count = options.min_cluster_fraction * static_cast<double>(samples);
  for (const auto& a : acc) {
    ValueCluster cluster;
    cluster.count = a.count;
    cluster.centroid = (1.0 / static_cast<double>(a.count)) * a.sum;
    cluster.direction = norm(a.direction_sum) == 0.0 ? 0.0 : std::atan2(a.direction_sum.x2, a.direction_sum.x1);
    cluster.major = static_cast<double>(a.count) >= min_count;
    if (cluster.major) ++report.major_clusters;
    report.clusters.push_back(cluster);
  }

  report.constraints_apply = report.major_clusters >= 2;
  report.min_separation = std::numeric_limits<double>::infinity();
  constexpr std::size_t kListLimit = 64;
  for (std::size_t a = 0; a < report.clusters.size(); ++a) {
    if (!report.clusters[a].major) continue;
    for (std::size_t b = a + 1; b < report.clusters.size(); ++b) {
      if (!report.clusters[b].major) continue;
      const double d = circular_distance(report.clusters[a].direction, report.clusters[b].direction);
      report.min_separation = std::min(report.min_separation, d);
      const bool meets = d >= report.floor;
      if (!meets) ++report.pairs_below_floor;
      if (report.major_clusters <= kListLimit) report.separations.push_back({a, b, d, meets});
    }
  }
  return report;
}

const char* to_string(FieldKind kind) {
  switch (kind) {
    case FieldKind::Constant: return "constant";
    case FieldKind::SaturatedRadial: return "radial";
    case FieldKind::Rotational: return "rotational";
    case FieldKind::ClampedLinear: return "clamped";
    case FieldKind::SampledGrid: return "grid";
  }
  return "unknown";
}

const char* to_string(SearchRoute route) {
  switch (route) {
    case SearchRoute::Probe: return "probe";
    case SearchRoute::Random: return "random";
    case SearchRoute::Refine: return "refine";
    case SearchRoute::SignChange: return "sign-change";
  }
  return "unknown";
}

}  // namespace collfree
