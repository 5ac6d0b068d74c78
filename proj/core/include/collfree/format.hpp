#pragma once

#include <cstddef>
#include <filesystem>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "collfree/geometry.hpp"

namespace collfree {

/// Shortest lossless decimal form: 17 significant digits, "%.17g".
std::string format_real(double value);
std::string join_reals(std::initializer_list<double> values);

std::vector<std::string_view> split_lines(std::string_view text);

/// Parses exactly `count` comma-separated reals; errors cite `line_number`.
std::vector<double> parse_reals(std::string_view line, std::size_t count, std::size_t line_number);

/// Particle-list document: header `particles v1`, then `x1,x2,v1,v2` rows.
std::string write_particles(const std::vector<Particle>& particles);
std::vector<Particle> read_particles(std::string_view text);

std::string read_file(const std::filesystem::path& path);
/// Writes to a sibling temporary file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace collfree
