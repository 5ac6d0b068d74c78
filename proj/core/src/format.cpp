#include "collfree/format.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "collfree/error.hpp"

namespace collfree {

std::string format_real(double value) {
  if (value == 0.0) value = 0.0;  // fold -0 into 0
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::string join_reals(std::initializer_list<double> values) {
  std::string out;
  bool first = true;
  for (double v : values) {
    if (!first) out += ',';
    out += format_real(v);
    first = false;
  }
  return out;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto end = text.find('\n');
    std::string_view line = text.substr(0, end);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (end == std::string_view::npos) break;
    text.remove_prefix(end + 1);
  }
  return lines;
}

std::vector<double> parse_reals(std::string_view line, std::size_t count, std::size_t line_number) {
  std::vector<double> out;
  const std::string where = "line " + std::to_string(line_number) + ": ";
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    std::string field(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    const auto first = field.find_first_not_of(" \t");
    const auto last = field.find_last_not_of(" \t");
    field = first == std::string::npos ? std::string{} : field.substr(first, last - first + 1);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(field.c_str(), &end);
    if (field.empty() || end != field.c_str() + field.size() || errno == ERANGE || !std::isfinite(v))
      throw Error(ErrorCode::ParseError, where + "field " + std::to_string(out.size() + 1) + " is not a finite real");
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (out.size() != count)
    throw Error(ErrorCode::ParseError,
                where + "expected " + std::to_string(count) + " fields, got " + std::to_string(out.size()));
  return out;
}

std::string write_particles(const std::vector<Particle>& particles) {
  std::string out = "particles v1\n";
  for (const auto& p : particles) {
    out += join_reals({p.position.x1, p.position.x2, p.velocity.x1, p.velocity.x2});
    out += '\n';
  }
  return out;
}

std::vector<Particle> read_particles(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty() || lines.front() != "particles v1")
    throw Error(ErrorCode::ParseError, "line 1: expected header 'particles v1'");
  std::vector<Particle> out;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    if (lines[k].empty()) continue;
    const auto f = parse_reals(lines[k], 4, k + 1);
    out.push_back({{f[0], f[1]}, {f[2], f[3]}});
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  const auto dir = path.parent_path();
  if (!dir.empty()) std::filesystem::create_directories(dir);
  auto temp = path;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + temp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error(ErrorCode::InvalidArgument, "short write to " + temp.string());
  }
  std::filesystem::rename(temp, path);
}

}  // namespace collfree
