#include "genlevel/results.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <fmt/format.h>

#include "json.hpp"
#include "record.hpp"

namespace genlevel {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

void add_score(ModelResults& results, const std::string& task_id, std::string_view raw,
               Diagnostics& diagnostics) {
  const std::string subject = fmt::format("{}/{}", results.model_id, task_id);
  RawScore score;
  try {
    score = parse_raw_score(raw);
  } catch (const Error& e) {
    diagnostics.push_back({Severity::Error, ErrorCode::ParseError, subject, e.what()});
    return;
  }
  if (!results.scores.emplace(task_id, score).second) {
    diagnostics.push_back(
        {Severity::Error, ErrorCode::DuplicateResult, subject, "more than one score for task"});
  }
}

ModelResults parse_json(std::string_view text, Diagnostics& diagnostics) {
  ModelResults results;
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    diagnostics.push_back({Severity::Error, ErrorCode::ParseError, "results", e.what()});
    return results;
  }
  if (!doc.is_object() || !doc.contains("model_id") || !doc["model_id"].is_string()) {
    diagnostics.push_back(
        {Severity::Error, ErrorCode::ParseError, "results", "expected an object with a string model_id"});
    return results;
  }
  results.model_id = doc["model_id"].get<std::string>();
  if (auto it = doc.find("metadata"); it != doc.end() && it->is_object()) {
    for (const auto& [key, value] : it->items()) {
      results.metadata[key] = value.is_string() ? value.get<std::string>() : value.dump();
    }
  }
  auto records = doc.find("records");
  if (records == doc.end() || !records->is_array()) {
    diagnostics.push_back(
        {Severity::Error, ErrorCode::ParseError, results.model_id, "missing 'records' array"});
    return results;
  }
  for (const auto& record : *records) {
    if (!record.is_object() || !record.contains("task_id") || !record["task_id"].is_string()) {
      diagnostics.push_back(
          {Severity::Error, ErrorCode::ParseError, results.model_id, "record without task_id"});
      continue;
    }
    const auto task_id = record["task_id"].get<std::string>();
    std::string raw;
    if (auto value = record.find("raw_score"); value != record.end() && !value->is_null()) {
      raw = value->is_string() ? value->get<std::string>() : value->dump();
    }
    add_score(results, task_id, raw, diagnostics);
  }
  return results;
}

ModelResults parse_csv(std::string_view text, Diagnostics& diagnostics) {
  ModelResults results;
  std::vector<detail::Record> records;
  try {
    records = detail::records_from_csv(text);
  } catch (const Error& e) {
    diagnostics.push_back({Severity::Error, e.code(), "results", e.what()});
    return results;
  }
  for (const auto& record : records) {
    const auto model_id = record.get("model_id");
    if (model_id.empty() || !record.has("task_id")) {
      diagnostics.push_back(
          {Severity::Error, ErrorCode::ParseError, "results", "rows need model_id and task_id"});
      continue;
    }
    if (results.model_id.empty()) results.model_id = model_id;
    if (model_id != results.model_id) {
      diagnostics.push_back({Severity::Error, ErrorCode::ParseError, model_id,
                             fmt::format("file already holds model '{}'", results.model_id)});
      continue;
    }
    add_score(results, record.get("task_id"), record.get("raw_score"), diagnostics);
  }
  return results;
}

}  // namespace

RawScore parse_raw_score(std::string_view text) {
  const std::string t = lower(text);
  if (t.empty() || t == "unsupported" || t == "null") return std::nullopt;
  if (t == "inf" || t == "+inf" || t == "infinity" || t == "+infinity") {
    return std::numeric_limits<double>::infinity();
  }
  if (t == "-inf" || t == "-infinity") return -std::numeric_limits<double>::infinity();
  if (t == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (auto value = detail::parse_double(t)) return *value;
  throw Error(ErrorCode::ParseError, std::string(text), "not a score, 'unsupported' or 'inf'");
}

NormalizedResults normalize_results(const ModelResults& results, const Registry& registry,
                                    Diagnostics* warnings) {
  NormalizedResults out{results.model_id, std::vector<double>(registry.size(), 0.0)};
  for (const auto& [task_id, raw] : results.scores) {
    const std::size_t index = registry.find(task_id);
    if (index == Registry::npos) {
      throw Error(ErrorCode::UnknownTaskId, fmt::format("{}/{}", results.model_id, task_id),
                  "result references a task missing from the registry");
    }
    try {
      out.sigma[index] = normalize(registry.task(index).metric, raw, warnings).value();
    } catch (const Error& e) {
      throw Error(e.code(), fmt::format("{}/{}", results.model_id, task_id), e.what());
    }
  }
  return out;
}

Diagnostics validate_results(const ModelResults& results, const Registry& registry) {
  Diagnostics diagnostics;
  for (const auto& [task_id, raw] : results.scores) {
    const std::string subject = fmt::format("{}/{}", results.model_id, task_id);
    const std::size_t index = registry.find(task_id);
    if (index == Registry::npos) {
      diagnostics.push_back({Severity::Error, ErrorCode::UnknownTaskId, subject,
                             "result references a task missing from the registry"});
      continue;
    }
    try {
      Diagnostics warnings;
      normalize(registry.task(index).metric, raw, &warnings);
      for (auto& w : warnings) {
        w.subject = subject;
        diagnostics.push_back(std::move(w));
      }
    } catch (const Error& e) {
      diagnostics.push_back({Severity::Error, e.code(), subject, e.what()});
    }
  }
  return diagnostics;
}

ModelResults parse_results(std::string_view text, FileFormat format, Diagnostics& diagnostics) {
  return format == FileFormat::Csv ? parse_csv(text, diagnostics) : parse_json(text, diagnostics);
}

std::vector<ModelResults> load_results_dir(const std::filesystem::path& dir,
                                           Diagnostics& diagnostics) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error(ErrorCode::IoError, dir.string(), "not a directory");

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto ext = lower(entry.path().extension().string());
    if (entry.is_regular_file() && (ext == ".json" || ext == ".csv")) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::vector<ModelResults> models;
  std::set<std::string> seen;
  for (const auto& file : files) {
    Diagnostics file_diagnostics;
    auto results = parse_results(read_file(file), format_for(file), file_diagnostics);
    for (auto& d : file_diagnostics) {
      d.message = fmt::format("{} ({})", d.message, file.filename().string());
      diagnostics.push_back(std::move(d));
    }
    if (results.model_id.empty()) continue;
    if (!seen.insert(results.model_id).second) {
      diagnostics.push_back({Severity::Error, ErrorCode::DuplicateModelId, results.model_id,
                             fmt::format("model defined again in {}", file.filename().string())});
      continue;
    }
    models.push_back(std::move(results));
  }
  std::sort(models.begin(), models.end(),
            [](const auto& a, const auto& b) { return a.model_id < b.model_id; });
  return models;
}

}  // namespace genlevel
