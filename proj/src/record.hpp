#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace genlevel::detail {

/// One flat input record (a JSON object or a CSV row) with values kept as text.
class Record {
 public:
  void set(std::string key, std::string value);

  bool has(std::string_view key) const;
  std::string get(std::string_view key) const;
  std::optional<double> number(std::string_view key) const;
  std::optional<std::int64_t> integer(std::string_view key) const;
  std::vector<std::string> keys() const;

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

std::optional<double> parse_double(std::string_view text);

/// Accepts a top-level array of objects, or an object holding one under `array_key`.
/// Blank input yields no records.
std::vector<Record> records_from_json(std::string_view text, std::string_view array_key);

/// First row is the header.
std::vector<Record> records_from_csv(std::string_view text);

}  // namespace genlevel::detail
