#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace collfree::harness {

/// Flat key-value report, schema `report v1`:
///
///     report v1
///     kind=hardcore
///     min_alltime_distance=1
///     witness_pair=[0,1]
///
/// Values are reals (17 significant digits), integers, booleans, bare strings
/// or bracketed comma-separated lists. Keys keep insertion order.
class ReportDocument {
 public:
  enum class Type { Real, Integer, Boolean, String, List };

  struct Entry {
    std::string key;
    Type type;
    std::string text;
  };

  explicit ReportDocument(std::string kind);

  void set(std::string key, double value);
  void set(std::string key, std::int64_t value);
  void set(std::string key, std::uint64_t value);
  void set(std::string key, bool value);
  void set(std::string key, std::string value);
  void set(std::string key, const char* value) { set(std::move(key), std::string(value)); }
  void set_list(std::string key, const std::vector<double>& values);
  void set_index_pair(std::string key, std::optional<std::pair<std::size_t, std::size_t>> pair);

  const std::string& kind() const { return kind_; }
  const std::vector<Entry>& entries() const { return entries_; }
  const Entry* find(std::string_view key) const;
  double real(std::string_view key) const;
  std::vector<double> list(std::string_view key) const;

  std::string render() const;
  std::string render_json() const;
  /// Aligned `key : value` lines for terminals.
  std::string render_text() const;

  /// Parses render() output. Values come back typed by their syntax.
  static ReportDocument parse(std::string_view text);

  friend bool operator==(const ReportDocument&, const ReportDocument&);

 private:
  void put(std::string key, Type type, std::string text);

  std::string kind_;
  std::vector<Entry> entries_;
};

bool operator==(const ReportDocument::Entry& a, const ReportDocument::Entry& b);

}  // namespace collfree::harness
