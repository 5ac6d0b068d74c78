#include "collfree/harness/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "collfree/error.hpp"
#include "collfree/format.hpp"
#include "json.hpp"

namespace collfree::harness {

ReportDocument::ReportDocument(std::string kind) : kind_(std::move(kind)) {}

void ReportDocument::put(std::string key, Type type, std::string text) {
  if (key.empty() || key.find_first_of("=\n") != std::string::npos || text.find('\n') != std::string::npos)
    throw Error(ErrorCode::InvalidArgument, "report key or value contains a reserved character: " + key);
  for (auto& e : entries_) {
    if (e.key == key) {
      e.type = type;
      e.text = std::move(text);
      return;
    }
  }
  entries_.push_back({std::move(key), type, std::move(text)});
}

void ReportDocument::set(std::string key, double value) { put(std::move(key), Type::Real, format_real(value)); }
void ReportDocument::set(std::string key, std::int64_t value) {
  put(std::move(key), Type::Integer, std::to_string(value));
}
void ReportDocument::set(std::string key, std::uint64_t value) {
  put(std::move(key), Type::Integer, std::to_string(value));
}
void ReportDocument::set(std::string key, bool value) { put(std::move(key), Type::Boolean, value ? "true" : "false"); }
void ReportDocument::set(std::string key, std::string value) { put(std::move(key), Type::String, std::move(value)); }

void ReportDocument::set_list(std::string key, const std::vector<double>& values) {
  std::string text = "[";
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k > 0) text += ',';
    text += format_real(values[k]);
  }
  text += ']';
  put(std::move(key), Type::List, std::move(text));
}

void ReportDocument::set_index_pair(std::string key, std::optional<std::pair<std::size_t, std::size_t>> pair) {
  std::vector<double> values;
  if (pair) values = {static_cast<double>(pair->first), static_cast<double>(pair->second)};
  set_list(std::move(key), values);
}

const ReportDocument::Entry* ReportDocument::find(std::string_view key) const {
  for (const auto& e : entries_)
    if (e.key == key) return &e;
  return nullptr;
}

double ReportDocument::real(std::string_view key) const {
  const Entry* e = find(key);
  if (!e || (e->type != Type::Real && e->type != Type::Integer))
    throw Error(ErrorCode::InvalidArgument, "report has no numeric key " + std::string(key));
  return std::strtod(e->text.c_str(), nullptr);
}

std::vector<double> ReportDocument::list(std::string_view key) const {
  const Entry* e = find(key);
  if (!e || e->type != Type::List) throw Error(ErrorCode::InvalidArgument, "report has no list key " + std::string(key));
  const std::string_view inner = std::string_view(e->text).substr(1, e->text.size() - 2);
  if (inner.empty()) return {};
  const auto fields = static_cast<std::size_t>(std::count(inner.begin(), inner.end(), ',')) + 1;
  return parse_reals(inner, fields, 0);
}

std::string ReportDocument::render() const {
  std::string out = "report v1\nkind=" + kind_ + "\n";
  for (const auto& e : entries_) out += e.key + "=" + e.text + "\n";
  return out;
}

std::string ReportDocument::render_text() const {
  std::size_t width = 4;
  for (const auto& e : entries_) width = std::max(width, e.key.size());
  std::string out = kind_ + " report\n";
  for (const auto& e : entries_) out += "  " + e.key + std::string(width - e.key.size(), ' ') + " : " + e.text + "\n";
  return out;
}

std::string ReportDocument::render_json() const {
  auto number = [](const std::string& text) -> nlohmann::ordered_json {
    const double v = std::strtod(text.c_str(), nullptr);
    if (std::isfinite(v)) return v;
    return text;  // JSON has no infinities
  };
  nlohmann::ordered_json doc;
  doc["schema"] = "report v1";
  doc["kind"] = kind_;
  for (const auto& e : entries_) {
    switch (e.type) {
      case Type::Real: doc[e.key] = number(e.text); break;
      case Type::Integer: doc[e.key] = std::strtoll(e.text.c_str(), nullptr, 10); break;
      case Type::Boolean: doc[e.key] = e.text == "true"; break;
      case Type::String: doc[e.key] = e.text; break;
      case Type::List: {
        auto array = nlohmann::ordered_json::array();
        for (double v : list(e.key)) array.push_back(std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(format_real(v)));
        doc[e.key] = array;
        break;
      }
    }
  }
  return doc.dump(2) + "\n";
}

namespace {

ReportDocument::Type classify(const std::string& text) {
  using Type = ReportDocument::Type;
  if (text == "true" || text == "false") return Type::Boolean;
  if (text.size() >= 2 && text.front() == '[' && text.back() == ']') return Type::List;
  if (!text.empty()) {
    char* end = nullptr;
    std::strtoll(text.c_str(), &end, 10);
    if (end == text.c_str() + text.size()) return Type::Integer;
    std::strtod(text.c_str(), &end);
    if (end == text.c_str() + text.size()) return Type::Real;
  }
  return Type::String;
}

}  // namespace

ReportDocument ReportDocument::parse(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.size() < 2 || lines[0] != "report v1" || lines[1].substr(0, 5) != "kind=")
    throw Error(ErrorCode::ParseError, "line 1: expected 'report v1' followed by 'kind='");
  ReportDocument doc(std::string(lines[1].substr(5)));
  for (std::size_t k = 2; k < lines.size(); ++k) {
    if (lines[k].empty()) continue;
    const auto eq = lines[k].find('=');
    if (eq == std::string_view::npos || eq == 0)
      throw Error(ErrorCode::ParseError, "line " + std::to_string(k + 1) + ": expected key=value");
    std::string value(lines[k].substr(eq + 1));
    const auto type = classify(value);
    doc.put(std::string(lines[k].substr(0, eq)), type, std::move(value));
  }
  return doc;
}

bool operator==(const ReportDocument::Entry& a, const ReportDocument::Entry& b) {
  return a.key == b.key && a.text == b.text;
}

bool operator==(const ReportDocument& a, const ReportDocument& b) {
  return a.kind_ == b.kind_ && a.entries_ == b.entries_;
}

}  // namespace collfree::harness
