#include "record.hpp"

#include <algorithm>
#include <charconv>

#include <fmt/format.h>

#include "csv.hpp"
#include "genlevel/error.hpp"
#include "json.hpp"

namespace genlevel::detail {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool blank(std::string_view text) {
  return std::all_of(text.begin(), text.end(),
                     [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; });
}

std::string as_text(const nlohmann::json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_null()) return "";
  return value.dump();
}

}  // namespace

void Record::set(std::string key, std::string value) {
  for (auto& [k, v] : fields_) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  fields_.emplace_back(std::move(key), std::move(value));
}

bool Record::has(std::string_view key) const {
  return std::any_of(fields_.begin(), fields_.end(), [&](const auto& f) { return f.first == key; });
}

std::string Record::get(std::string_view key) const {
  for (const auto& [k, v] : fields_) {
    if (k == key) return v;
  }
  return {};
}

std::optional<double> Record::number(std::string_view key) const {
  if (!has(key)) return std::nullopt;
  return parse_double(get(key));
}

std::optional<std::int64_t> Record::integer(std::string_view key) const {
  const std::string text = get(key);
  const std::string_view t = trim(text);
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size()) return std::nullopt;
  return value;
}

std::vector<std::string> Record::keys() const {
  std::vector<std::string> out;
  for (const auto& f : fields_) out.push_back(f.first);
  return out;
}

std::optional<double> parse_double(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) return std::nullopt;
  return value;
}

std::vector<Record> records_from_json(std::string_view text, std::string_view array_key) {
  if (blank(text)) return {};
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, "json", e.what());
  }
  const nlohmann::json* array = &doc;
  if (doc.is_object()) {
    auto it = doc.find(std::string(array_key));
    if (it == doc.end()) {
      throw Error(ErrorCode::ParseError, "json", fmt::format("missing '{}' array", array_key));
    }
    array = &*it;
  }
  if (!array->is_array()) throw Error(ErrorCode::ParseError, "json", "expected an array of records");

  std::vector<Record> records;
  for (const auto& item : *array) {
    if (!item.is_object()) throw Error(ErrorCode::ParseError, "json", "record is not an object");
    Record r;
    for (const auto& [key, value] : item.items()) r.set(key, as_text(value));
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<Record> records_from_csv(std::string_view text) {
  auto rows = csv::parse(text);
  if (rows.empty()) return {};
  std::vector<std::string> header;
  for (const auto& h : rows.front()) header.emplace_back(trim(h));

  std::vector<Record> records;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != header.size()) {
      throw Error(ErrorCode::ParseError, fmt::format("csv line {}", i + 1),
                  fmt::format("expected {} fields, found {}", header.size(), rows[i].size()));
    }
    Record r;
    for (std::size_t c = 0; c < header.size(); ++c) r.set(header[c], std::string(trim(rows[i][c])));
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace genlevel::detail
