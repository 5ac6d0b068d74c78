#include "collfree/harness/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>

#include "CLI11.hpp"
#include "collfree/error.hpp"
#include "collfree/format.hpp"

namespace collfree::harness {
namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

std::int64_t parse_integer(const std::string& text, const std::string& field) {
  const std::string t = trim(text);
  char* end = nullptr;
  const long long v = std::strtoll(t.c_str(), &end, 10);
  if (t.empty() || end != t.c_str() + t.size())
    throw Error(ErrorCode::InvalidArgument, field + ": '" + text + "' is not an integer");
  return v;
}

double parse_real(const std::string& text, const std::string& field) {
  const std::string t = trim(text);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(v))
    throw Error(ErrorCode::InvalidArgument, field + ": '" + text + "' is not a finite real");
  return v;
}

// "kind:key=value,key=value" -> kind and parameters.
std::pair<std::string, std::map<std::string, std::string>> split_spec(const std::string& spec, const char* what) {
  const auto colon = spec.find(':');
  std::string kind = trim(spec.substr(0, colon));
  std::map<std::string, std::string> params;
  if (colon != std::string::npos) {
    std::string rest = spec.substr(colon + 1);
    std::size_t start = 0;
    while (start <= rest.size()) {
      const auto comma = rest.find(',', start);
      const std::string item = rest.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      const auto eq = item.find('=');
      if (eq == std::string::npos)
        throw Error(ErrorCode::InvalidArgument, std::string(what) + ": expected key=value, got '" + item + "'");
      params[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  return {kind, params};
}

double param(const std::map<std::string, std::string>& params, const std::string& key, double fallback,
             const std::string& what) {
  const auto it = params.find(key);
  return it == params.end() ? fallback : parse_real(it->second, what + "." + key);
}

void reject_unknown(const std::map<std::string, std::string>& params, std::initializer_list<const char*> known,
                    const std::string& what) {
  for (const auto& [key, value] : params) {
    if (std::none_of(known.begin(), known.end(), [&](const char* k) { return key == k; }))
      throw Error(ErrorCode::InvalidArgument, what + ": unknown parameter '" + key + "'");
  }
}

}  // namespace

Window parse_window(const std::string& spec) {
  const std::string s = trim(spec);
  const auto comma = s.find(',');
  if (comma == std::string::npos) {
    const auto n = parse_integer(s, "window");
    if (n < 0) throw Error(ErrorCode::EmptyWindow, "window: half-width must be non-negative");
    return Window::square(n);
  }
  auto range = [](const std::string& r) {
    const auto colon = r.find(':');
    if (colon == std::string::npos) throw Error(ErrorCode::InvalidArgument, "window: expected lo:hi, got '" + r + "'");
    return std::pair{parse_integer(r.substr(0, colon), "window"), parse_integer(r.substr(colon + 1), "window")};
  };
  const auto [a, b] = range(s.substr(0, comma));
  const auto [c, d] = range(s.substr(comma + 1));
  return {a, b, c, d};
}

MonotoneProfile parse_profile(const std::string& spec) {
  const std::string s = trim(spec);
  if (s == "arctan") return MonotoneProfile::arctan();
  if (s == "tanh") return MonotoneProfile::tanh();
  if (s == "rational") return MonotoneProfile::rational_saturating();
  if (s.rfind("table:", 0) == 0) {
    const std::string text = read_file(s.substr(6));
    const auto lines = split_lines(text);
    if (lines.empty() || lines.front() != "profile-table v1")
      throw Error(ErrorCode::ParseError, "line 1: expected header 'profile-table v1'");
    std::vector<std::pair<std::int64_t, double>> entries;
    for (std::size_t k = 1; k < lines.size(); ++k) {
      if (lines[k].empty()) continue;
      const auto f = parse_reals(lines[k], 2, k + 1);
      if (f[0] != std::floor(f[0]))
        throw Error(ErrorCode::ParseError, "line " + std::to_string(k + 1) + ": profile key must be an integer");
      entries.emplace_back(static_cast<std::int64_t>(f[0]), f[1]);
    }
    return MonotoneProfile::table(std::move(entries));
  }
  throw Error(ErrorCode::InvalidArgument, "profile: expected arctan, tanh, rational or table:<path>, got '" + spec + "'");
}

CandidateField parse_field(const std::string& spec) {
  const auto [kind, params] = split_spec(spec, "field");
  const std::string what = "field." + kind;
  if (kind == "constant") {
    reject_unknown(params, {"v1", "v2"}, what);
    return CandidateField::constant({param(params, "v1", 1.0, what), param(params, "v2", 0.0, what)});
  }
  if (kind == "radial") {
    reject_unknown(params, {"bound", "scale"}, what);
    return CandidateField::saturated_radial(param(params, "bound", 1.0, what), param(params, "scale", 1.0, what));
  }
  if (kind == "rotational") {
    reject_unknown(params, {"bound", "core"}, what);
    return CandidateField::rotational(param(params, "bound", 1.0, what), param(params, "core", 1.0, what));
  }
  if (kind == "clamped") {
    reject_unknown(params, {"bound", "a11", "a12", "a21", "a22"}, what);
    return CandidateField::clamped_linear(
        param(params, "bound", 1.0, what),
        {param(params, "a11", 0.5, what), param(params, "a12", -0.25, what), param(params, "a21", 0.25, what),
         param(params, "a22", 0.5, what)});
  }
  if (kind == "grid") {
    reject_unknown(params, {"file"}, what);
    const auto it = params.find("file");
    if (it == params.end()) throw Error(ErrorCode::InvalidArgument, what + ": missing file=<particle list>");
    return CandidateField::sampled_grid(read_particles(read_file(it->second)));
  }
  throw Error(ErrorCode::InvalidArgument,
              "field: expected constant, radial, rotational, clamped or grid, got '" + kind + "'");
}

const char* to_string(Command command) {
  switch (command) {
    case Command::Assign: return "assign";
    case Command::Verify: return "verify";
    case Command::Evolve: return "evolve";
    case Command::Cylinders: return "cylinders";
    case Command::Falsify: return "falsify";
  }
  return "unknown";
}

ParseOutcome parse_command_line(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Collision-free velocity assignments: construction, verification, falsification"};
  RunConfig cfg;
  std::string command;
  std::string format = "kv";
  std::string particles, output, report, svg;
  double radius = 0.0, discreteness = 0.0;

  app.set_config("--config", "", "Flat key = value configuration file");
  app.add_option("--command", command, "assign | verify | evolve | cylinders | falsify")
      ->required()
      ->check(CLI::IsMember({"assign", "verify", "evolve", "cylinders", "falsify"}));
  app.add_option("--window", cfg.window, "Lattice window: N for {-N..N}^2, or a:b,c:d")->capture_default_str();
  app.add_option("--profile", cfg.profile, "arctan | tanh | rational | table:<path>")->capture_default_str();
  app.add_option("--shift-margin", cfg.shift_margin, "Lower speed bound after the common shift")->capture_default_str();
  app.add_option("--threshold", cfg.threshold, "Hard-core distance threshold")->capture_default_str();
  app.add_option("--t0", cfg.t0, "First snapshot time")->capture_default_str();
  app.add_option("--t1", cfg.t1, "Last snapshot time")->capture_default_str();
  app.add_option("--frames", cfg.frames, "Number of snapshots")->capture_default_str();
  app.add_option("--field", cfg.field, "Candidate field, e.g. radial:bound=1,scale=1")->capture_default_str();
  app.add_option("--c", cfg.c, "Separation constant for falsify")->capture_default_str();
  app.add_option("--budget", cfg.budget, "Field evaluations for falsify")->capture_default_str();
  app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  app.add_option("--sample-budget", cfg.sample_budget, "Sampled pairs for large flow windows")->capture_default_str();
  app.add_option("--search-radius", cfg.search_radius, "Radius reached by the falsifier search")->capture_default_str();
  app.add_option("--radius", radius, "Disk or cylinder radius");
  app.add_option("--discreteness", discreteness, "Declared discreteness radius for particle files");
  app.add_option("--particles", particles, "Input particle-list file");
  app.add_option("--out", output, "Primary output file");
  app.add_option("--report", report, "Structured report file (assign, evolve, cylinders)");
  app.add_option("--svg", svg, "Directory for SVG snapshots (evolve)");
  app.add_option("--format", format, "Structured report format")->check(CLI::IsMember({"kv", "json"}));
  app.add_option("--workers", cfg.workers, "Worker threads (0 = hardware)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return {std::nullopt, kExitOk};
  } catch (const CLI::ParseError& e) {
    err << "input error: " << e.what() << '\n';
    return {std::nullopt, kExitInputError};
  }

  static const std::map<std::string, Command> commands{{"assign", Command::Assign},
                                                       {"verify", Command::Verify},
                                                       {"evolve", Command::Evolve},
                                                       {"cylinders", Command::Cylinders},
                                                       {"falsify", Command::Falsify}};
  cfg.command = commands.at(command);
  cfg.format = format == "json" ? ReportFormat::Json : ReportFormat::KeyValue;
  if (app.count("--radius")) cfg.radius = radius;
  if (app.count("--discreteness")) cfg.discreteness = discreteness;
  if (!particles.empty()) cfg.particles = particles;
  if (!output.empty()) cfg.out = output;
  if (!report.empty()) cfg.report = report;
  if (!svg.empty()) cfg.svg = svg;

  for (auto [name, value] : {std::pair{"shift-margin", cfg.shift_margin}, {"threshold", cfg.threshold},
                             {"t0", cfg.t0}, {"t1", cfg.t1}, {"c", cfg.c}, {"search-radius", cfg.search_radius}}) {
    if (!std::isfinite(value)) {
      err << "input error: " << name << " must be finite\n";
      return {std::nullopt, kExitInputError};
    }
  }
  return {cfg, kExitOk};
}

// ---------------------------------------------------------------------------
// Report documents

ReportDocument to_document(const HardCoreReport& report, std::size_t particle_count) {
  ReportDocument doc("hardcore");
  doc.set("scope", "finite-window");
  doc.set("particles", static_cast<std::uint64_t>(particle_count));
  doc.set("pairs", static_cast<std::uint64_t>(report.pair_count));
  doc.set("threshold", report.threshold);
  doc.set("min_alltime_distance", report.min_alltime_distance);
  doc.set("margin", report.margin);
  std::optional<std::pair<std::size_t, std::size_t>> pair;
  std::string time = "none";
  if (report.witness) {
    pair = std::pair{report.witness->i, report.witness->j};
    time = report.witness->approach.all_times() ? "all" : format_real(*report.witness->approach.time_at_min);
  }
  doc.set_index_pair("witness_pair", pair);
  doc.set("witness_time", time);
  doc.set("passed", report.passed);
  return doc;
}

void append_flow(ReportDocument& doc, const FlowAssignment& flow, const FlowReport& report) {
  doc.set("flow.mode", to_string(report.mode));
  doc.set("flow.pairs_checked", static_cast<std::uint64_t>(report.pairs_checked));
  doc.set("flow.seed", report.seed);
  doc.set("flow.min_distance", report.min_distance);
  doc.set_index_pair("flow.witness_pair", report.witness);
  doc.set("flow.chain_inner_margin", report.chain_inner_margin);
  doc.set("flow.chain_norm_margin", report.chain_norm_margin);
  doc.set("flow.chain_failures", static_cast<std::uint64_t>(report.chain_failures));
  doc.set("flow.injective", report.injective);
  doc.set_index_pair("flow.duplicate_velocity", report.duplicate_velocity);
  doc.set_list("flow.shift", {flow.shift.x1, flow.shift.x2});
  doc.set("flow.speed_min", flow.speed_min);
  doc.set("flow.speed_max", flow.speed_max);
  doc.set("flow.measured_speed_min", report.measured_speed_min);
  doc.set("flow.measured_speed_max", report.measured_speed_max);
  doc.set("flow.speeds_within_bounds", report.speeds_within_bounds);
  doc.set("flow.disk_radius", flow.disk_radius);
  doc.set("flow.radius_ok", report.radius_ok);
  doc.set("flow.passed", report.passed);
}

ReportDocument to_document(const SceneReport& report) {
  ReportDocument doc("cylinders");
  doc.set("speed_min", report.speed_min);
  doc.set("speed_max", report.speed_max);
  doc.set("radius", report.radius);
  doc.set("lemma_bound", report.bound);
  doc.set("required_distance", report.required);
  doc.set("min_worldline_distance", report.min_distance);
  doc.set_index_pair("witness_pair", report.witness);
  doc.set("margin", report.margin);
  doc.set("distances_ok", report.distances_ok);
  doc.set("velocities_distinct", report.velocities_distinct);
  doc.set("directions_distinct", report.directions_distinct);
  doc.set_index_pair("parallel_pair", report.parallel_pair);
  doc.set("annulus_by_angle", report.annulus_by_angle);
  doc.set("annulus_by_speed", report.annulus_by_speed);
  doc.set("passed", report.passed);
  return doc;
}

ReportDocument to_document(const FalsifyResult& result, const CandidateField& field, std::uint64_t budget,
                           std::uint64_t seed) {
  ReportDocument doc("violation");
  doc.set("field", field.describe());
  doc.set("c", result.report.c);
  doc.set("budget", budget);
  doc.set("seed", seed);
  doc.set("found", result.found);
  doc.set_list("x", {result.report.x.x1, result.report.x.x2});
  doc.set_list("y", {result.report.y.x1, result.report.y.x2});
  doc.set("distance", norm(result.report.x - result.report.y));
  doc.set("margin", result.report.margin);
  doc.set("score", result.score);
  doc.set("route", to_string(result.report.route));
  doc.set("slot", static_cast<std::uint64_t>(result.report.slot));
  doc.set("evaluations_used", static_cast<std::uint64_t>(result.found ? result.report.evaluations_used
                                                                        : result.evaluations_used));
  doc.set("sign_change_seen", result.sign_change_seen);
  if (!result.found) doc.set("note", "heuristic search exhausted its budget; this is not evidence that no violation exists");
  return doc;
}

std::string frames_csv(const std::vector<Frame>& frames) {
  std::string out = "frame,time,index,x1,x2\n";
  for (std::size_t f = 0; f < frames.size(); ++f) {
    for (std::size_t k = 0; k < frames[f].positions.size(); ++k) {
      out += std::to_string(f) + ',' + format_real(frames[f].time) + ',' + std::to_string(k) + ',' +
             format_real(frames[f].positions[k].x1) + ',' + format_real(frames[f].positions[k].x2) + '\n';
    }
  }
  return out;
}

std::string frame_svg(const MovingConfiguration& config, const Frame& frame, double radius, double t0, double t1) {
  double lo1 = 0.0, hi1 = 0.0, lo2 = 0.0, hi2 = 0.0, speed = 0.0;
  bool first = true;
  for (const auto& p : config.particles) {
    if (first) {
      lo1 = hi1 = p.position.x1;
      lo2 = hi2 = p.position.x2;
      first = false;
    }
    lo1 = std::min(lo1, p.position.x1);
    hi1 = std::max(hi1, p.position.x1);
    lo2 = std::min(lo2, p.position.x2);
    hi2 = std::max(hi2, p.position.x2);
    speed = std::max(speed, norm(p.velocity));
  }
  const double pad = speed * std::max(std::abs(t0), std::abs(t1)) + radius;
  const double side = std::max(hi1 - lo1, hi2 - lo2) + 2.0 * pad;
  const double cx = 0.5 * (lo1 + hi1);
  const double cy = 0.5 * (lo2 + hi2);
  const double left = cx - side / 2.0;
  const double top = -(cy + side / 2.0);

  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"" +
                    format_real(left) + ' ' + format_real(top) + ' ' + format_real(side) + ' ' + format_real(side) +
                    "\">\n";
  out += "<title>t=" + format_real(frame.time) + "</title>\n";
  out += "<g transform=\"scale(1,-1)\" fill=\"steelblue\" fill-opacity=\"0.6\">\n";
  for (const auto& p : frame.positions) {
    out += "<circle cx=\"" + format_real(p.x1) + "\" cy=\"" + format_real(p.x2) + "\" r=\"" + format_real(radius) +
           "\"/>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

// ---------------------------------------------------------------------------
// Commands

namespace {

struct Loaded {
  MovingConfiguration config;
  std::optional<FlowAssignment> flow;
};

Loaded load(const RunConfig& cfg) {
  if (cfg.particles) {
    auto particles = read_particles(read_file(*cfg.particles));
    double radius = cfg.discreteness.value_or(0.0);
    if (!cfg.discreteness) {
      radius = measured_discreteness(particles, cfg.workers);
      if (!std::isfinite(radius)) radius = 1.0;
    }
    return {make_configuration(std::move(particles), radius, cfg.workers), std::nullopt};
  }
  auto flow = build_flow(parse_profile(cfg.profile), parse_window(cfg.window), cfg.shift_margin);
  MovingConfiguration config = flow.configuration();
  return {std::move(config), std::move(flow)};
}

std::string render(const ReportDocument& doc, ReportFormat format) {
  return format == ReportFormat::Json ? doc.render_json() : doc.render();
}

void emit_report(const RunConfig& cfg, const std::optional<std::filesystem::path>& path, const ReportDocument& doc,
                 std::ostream& out) {
  out << doc.render_text();
  if (path) write_file_atomic(*path, render(doc, cfg.format));
}

int run_assign(const RunConfig& cfg, std::ostream& out) {
  const auto flow = build_flow(parse_profile(cfg.profile), parse_window(cfg.window), cfg.shift_margin);
  const auto text = write_particles(flow.particles);
  if (cfg.out) write_file_atomic(*cfg.out, text);
  else out << text;
  const auto report = verify_flow(flow, cfg.sample_budget, {cfg.seed, cfg.workers});
  ReportDocument doc("assign");
  doc.set("particles", static_cast<std::uint64_t>(flow.particles.size()));
  append_flow(doc, flow, report);
  if (cfg.out) out << doc.render_text();
  if (cfg.report) write_file_atomic(*cfg.report, render(doc, cfg.format));
  return report.passed ? kExitOk : kExitFailed;
}

int run_verify(const RunConfig& cfg, std::ostream& out) {
  const auto loaded = load(cfg);
  const auto report = verify_hardcore(loaded.config, cfg.threshold, cfg.workers);
  auto doc = to_document(report, loaded.config.particles.size());
  bool passed = report.passed;
  if (loaded.flow) {
    const auto flow_report = verify_flow(*loaded.flow, cfg.sample_budget, {cfg.seed, cfg.workers});
    append_flow(doc, *loaded.flow, flow_report);
    passed = passed && flow_report.passed;
  }
  emit_report(cfg, cfg.out, doc, out);
  return passed ? kExitOk : kExitFailed;
}

int run_evolve(const RunConfig& cfg, std::ostream& out) {
  const auto loaded = load(cfg);
  const auto frames = snapshot_series(loaded.config, cfg.t0, cfg.t1, cfg.frames);
  const double radius = cfg.radius.value_or(loaded.flow ? loaded.flow->disk_radius : (1.0 - 1e-9) / 2.0);
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be positive");
  const auto csv = frames_csv(frames);
  if (cfg.out) write_file_atomic(*cfg.out, csv);
  else out << csv;
  if (cfg.svg) {
    for (std::size_t f = 0; f < frames.size(); ++f) {
      char name[32];
      std::snprintf(name, sizeof name, "frame_%04zu.svg", f);
      write_file_atomic(*cfg.svg / name, frame_svg(loaded.config, frames[f], radius, cfg.t0, cfg.t1));
    }
  }
  const auto report = verify_hardcore(loaded.config, cfg.threshold, cfg.workers);
  ReportDocument doc = to_document(report, loaded.config.particles.size());
  doc.set("frames", static_cast<std::int64_t>(frames.size()));
  doc.set("t0", cfg.t0);
  doc.set("t1", cfg.t1);
  doc.set("disk_radius", radius);
  if (cfg.report) write_file_atomic(*cfg.report, render(doc, cfg.format));
  if (cfg.out) out << doc.render_text();
  return report.passed ? kExitOk : kExitFailed;
}

int run_cylinders(const RunConfig& cfg, std::ostream& out) {
  const auto loaded = load(cfg);
  double speed_max = 0.0;
  for (const auto& p : loaded.config.particles) speed_max = std::max(speed_max, norm(p.velocity));
  const double radius = cfg.radius.value_or(max_cylinder_radius(speed_max));
  const auto report = verify_scene(loaded.config, radius, cfg.workers);
  const auto scene_text = export_scene(make_scene(loaded.config, radius));
  if (cfg.out) write_file_atomic(*cfg.out, scene_text);
  else out << scene_text;
  emit_report(cfg, cfg.report, to_document(report), out);
  return report.passed ? kExitOk : kExitFailed;
}

int run_falsify(const RunConfig& cfg, std::ostream& out) {
  const auto field = parse_field(cfg.field);
  FalsifyOptions options;
  options.seed = cfg.seed;
  options.workers = cfg.workers;
  options.search_radius = cfg.search_radius;
  const auto result = falsify(field, cfg.c, cfg.budget, options);
  emit_report(cfg, cfg.out, to_document(result, field, cfg.budget, cfg.seed), out);
  return result.found ? kExitOk : kExitFailed;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    switch (cfg.command) {
      case Command::Assign: return run_assign(cfg, out);
      case Command::Verify: return run_verify(cfg, out);
      case Command::Evolve: return run_evolve(cfg, out);
      case Command::Cylinders: return run_cylinders(cfg, out);
      case Command::Falsify: return run_falsify(cfg, out);
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::HardCoreNotVerified) {
      err << "verification failed: " << e.what() << '\n';
      return kExitFailed;
    }
    err << "input error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace collfree::harness
