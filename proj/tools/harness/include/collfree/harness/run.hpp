#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "collfree/evolution.hpp"
#include "collfree/falsifier.hpp"
#include "collfree/lattice_flow.hpp"
#include "collfree/parallel.hpp"
#include "collfree/spacetime.hpp"
#include "collfree/harness/report.hpp"

namespace collfree::harness {

enum class Command { Assign, Verify, Evolve, Cylinders, Falsify };

enum class ReportFormat { KeyValue, Json };

/// One fully parsed run. Every field has a default except the command.
struct RunConfig {
  Command command = Command::Verify;
  std::string window = "2";
  std::string profile = "arctan";
  double shift_margin = 1.0;
  double threshold = 1.0;
  double t0 = 0.0;
  double t1 = 10.0;
  int frames = 11;
  std::string field = "rotational";
  double c = 0.1;
  std::uint64_t budget = 1'000'000;
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t sample_budget = 1'000'000;
  double search_radius = 1024.0;
  std::optional<double> radius;
  std::optional<double> discreteness;
  std::optional<std::filesystem::path> particles;
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> report;
  std::optional<std::filesystem::path> svg;
  ReportFormat format = ReportFormat::KeyValue;
  unsigned workers = 0;
};

/// Exit statuses of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitInputError = 2;

/// Parses argv (flags and an optional --config file of `key = value` lines).
/// Returns the exit status to use on --help or parse failure.
struct ParseOutcome {
  std::optional<RunConfig> config;
  int exit_status = kExitOk;
};
ParseOutcome parse_command_line(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

Window parse_window(const std::string& spec);
MonotoneProfile parse_profile(const std::string& spec);
CandidateField parse_field(const std::string& spec);

ReportDocument to_document(const HardCoreReport& report, std::size_t particle_count);
void append_flow(ReportDocument& doc, const FlowAssignment& flow, const FlowReport& report);
ReportDocument to_document(const SceneReport& report);
ReportDocument to_document(const FalsifyResult& result, const CandidateField& field, std::uint64_t budget,
                           std::uint64_t seed);

/// CSV with header `frame,time,index,x1,x2`, one row per particle per frame.
std::string frames_csv(const std::vector<Frame>& frames);
/// One SVG document for a frame; viewport covers the window plus speed x time.
std::string frame_svg(const MovingConfiguration& config, const Frame& frame, double radius, double t0, double t1);

/// Executes a configuration, writing artifacts atomically and a text summary
/// to `out`. Returns kExitOk, kExitFailed or kExitInputError.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

const char* to_string(Command command);

}  // namespace collfree::harness
