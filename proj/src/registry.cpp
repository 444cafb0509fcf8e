#include "genlevel/registry.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "csv.hpp"
#include "json.hpp"
#include "record.hpp"

namespace genlevel {
namespace {

constexpr std::array<std::string_view, 12> kRegistryFields = {
    "task_id",   "skill_id", "modality",   "paradigm",       "metric",       "metric_min",
    "metric_max", "sota_model", "sota_raw", "instance_count", "closed_count", "open_count"};

bool skill_prefix_matches(const TaskDescriptor& t) {
  const std::string& s = t.skill_id;
  if (t.modality == Modality::Language) return s.size() >= 2 && s[0] == 'L' && s[1] == '-';
  const char paradigm = t.paradigm == Paradigm::Comprehension ? 'C' : 'G';
  return s.size() >= 4 && s[0] == skill_code(t.modality) && s[1] == '-' && s[2] == paradigm &&
         s[3] == '-';
}

std::optional<TaskDescriptor> to_task(const detail::Record& record, std::size_t ordinal,
                                      Diagnostics& diagnostics) {
  const std::string subject =
      record.has("task_id") ? record.get("task_id") : fmt::format("record #{}", ordinal + 1);
  auto fail = [&](ErrorCode code, std::string message) {
    diagnostics.push_back({Severity::Error, code, subject, std::move(message)});
    return std::nullopt;
  };

  for (const auto& key : record.keys()) {
    if (std::find(kRegistryFields.begin(), kRegistryFields.end(), key) == kRegistryFields.end()) {
      diagnostics.push_back({Severity::Warning, ErrorCode::ParseError, subject,
                             fmt::format("unknown field '{}' ignored", key)});
    }
  }
  for (std::string_view required : {"task_id", "skill_id", "modality", "paradigm", "metric",
                                    "sota_raw"}) {
    if (!record.has(required) || record.get(required).empty()) {
      return fail(ErrorCode::ParseError, fmt::format("missing field '{}'", required));
    }
  }

  TaskDescriptor task;
  task.task_id = record.get("task_id");
  task.skill_id = record.get("skill_id");
  task.sota_model = record.has("sota_model") ? record.get("sota_model") : "";

  auto modality = parse_modality(record.get("modality"));
  if (!modality) {
    return fail(ErrorCode::ParseError, fmt::format("unknown modality '{}'", record.get("modality")));
  }
  task.modality = *modality;
  auto paradigm = parse_paradigm(record.get("paradigm"));
  if (!paradigm) {
    return fail(ErrorCode::ParseError, fmt::format("unknown paradigm '{}'", record.get("paradigm")));
  }
  task.paradigm = *paradigm;

  double lo = 0.0;
  double hi = 0.0;
  const std::string metric_name = record.get("metric");
  if (metric_name.rfind("LinearRange", 0) == 0) {
    auto min = record.number("metric_min");
    auto max = record.number("metric_max");
    if (!min || !max) {
      return fail(ErrorCode::InvalidMetricRange, "LinearRange needs numeric metric_min and metric_max");
    }
    lo = *min;
    hi = *max;
  }
  auto metric = parse_metric(metric_name, lo, hi);
  if (!metric) return fail(ErrorCode::UnknownMetricKind, fmt::format("unknown metric '{}'", metric_name));
  task.metric = *metric;

  auto sota = record.number("sota_raw");
  if (!sota) return fail(ErrorCode::ParseError, "sota_raw is not a number");
  task.sota_raw = *sota;

  auto read_count = [&](std::string_view key, std::int64_t fallback) -> std::optional<std::int64_t> {
    if (!record.has(key) || record.get(key).empty()) return fallback;
    return record.integer(key);
  };
  auto instances = read_count("instance_count", 1);
  auto closed = read_count("closed_count", 0);
  auto open = read_count("open_count", 0);
  if (!instances || !closed || !open) return fail(ErrorCode::ParseError, "counts must be integers");
  task.instance_count = *instances;
  task.closed_count = *closed;
  task.open_count = *open;
  return task;
}

std::string hex(std::span<const unsigned char> bytes) {
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char b : bytes) out += fmt::format("{:02x}", b);
  return out;
}

}  // namespace

Diagnostics validate_tasks(std::span<const TaskDescriptor> tasks) {
  Diagnostics diagnostics;
  std::set<std::string, std::less<>> seen;
  for (const auto& t : tasks) {
    auto fail = [&](ErrorCode code, std::string message) {
      diagnostics.push_back({Severity::Error, code, t.task_id, std::move(message)});
    };
    if (t.task_id.empty()) fail(ErrorCode::ParseError, "empty task_id");
    if (!seen.insert(t.task_id).second) fail(ErrorCode::DuplicateTaskId, "task_id already registered");

    const bool nlp = t.paradigm == Paradigm::NLP;
    const bool language = t.modality == Modality::Language;
    if (nlp != language) {
      fail(ErrorCode::ParadigmModalityMismatch,
           fmt::format("paradigm {} with modality {}", to_string(t.paradigm), to_string(t.modality)));
    } else if (!skill_prefix_matches(t)) {
      fail(ErrorCode::ParadigmModalityMismatch,
           fmt::format("skill_id '{}' does not match {}/{}", t.skill_id, to_string(t.modality),
                       to_string(t.paradigm)));
    }
    if (t.instance_count <= 0) fail(ErrorCode::ParseError, "instance_count must be positive");
    if (t.closed_count < 0 || t.open_count < 0) fail(ErrorCode::ParseError, "split counts must be non-negative");

    try {
      Diagnostics warnings;
      const double sota = normalize(t.metric, t.sota_raw, &warnings).value();
      for (auto& w : warnings) {
        w.subject = t.task_id;
        diagnostics.push_back(std::move(w));
      }
      if (!std::isfinite(t.sota_raw) || !(sota > 0.0)) {
        fail(ErrorCode::SotaNormalizesToZero,
             fmt::format("sota_raw {} normalizes to {}", t.sota_raw, sota));
      }
    } catch (const Error& e) {
      fail(e.code(), e.what());
    }
  }
  return diagnostics;
}

Registry::Registry(std::vector<TaskDescriptor> tasks) : tasks_(std::move(tasks)) {
  throw_first_error(validate_tasks(tasks_));
  sota_.reserve(tasks_.size());
  for (std::size_t i = 0; i < tasks_.size(); ++i) {
    const auto& t = tasks_[i];
    sota_.push_back(normalize(t.metric, t.sota_raw).value());
    by_id_.emplace(t.task_id, i);
    const auto m = static_cast<std::size_t>(t.modality);
    const auto p = static_cast<std::size_t>(t.paradigm);
    by_modality_[m].push_back(i);
    by_paradigm_[p].push_back(i);
    by_group_[m][p].push_back(i);
    by_skill_[t.skill_id].push_back(i);
  }
}

std::size_t Registry::find(std::string_view task_id) const {
  auto it = by_id_.find(task_id);
  return it == by_id_.end() ? npos : it->second;
}

std::span<const std::size_t> Registry::by_modality(Modality m) const {
  return by_modality_[static_cast<std::size_t>(m)];
}

std::span<const std::size_t> Registry::by_paradigm(Paradigm p) const {
  return by_paradigm_[static_cast<std::size_t>(p)];
}

std::span<const std::size_t> Registry::by_skill(std::string_view skill_id) const {
  auto it = by_skill_.find(skill_id);
  if (it == by_skill_.end()) return {};
  return it->second;
}

std::span<const std::size_t> Registry::group(Modality m, Paradigm p) const {
  return by_group_[static_cast<std::size_t>(m)][static_cast<std::size_t>(p)];
}

std::vector<std::string> Registry::skills() const {
  std::vector<std::string> out;
  out.reserve(by_skill_.size());
  for (const auto& [skill, _] : by_skill_) out.push_back(skill);
  return out;
}

std::vector<Modality> Registry::scored_modalities() const {
  std::vector<Modality> out;
  for (auto m : kNonLanguageModalities) {
    if (!by_modality(m).empty()) out.push_back(m);
  }
  return out;
}

Registry Registry::filtered(const std::function<bool(const TaskDescriptor&)>& keep) const {
  std::vector<TaskDescriptor> subset;
  std::copy_if(tasks_.begin(), tasks_.end(), std::back_inserter(subset), keep);
  return Registry(std::move(subset));
}

std::string Registry::fingerprint() const {
  std::vector<const TaskDescriptor*> ordered;
  for (const auto& t : tasks_) ordered.push_back(&t);
  std::sort(ordered.begin(), ordered.end(),
            [](const auto* a, const auto* b) { return a->task_id < b->task_id; });

  std::string canonical;
  for (const auto* t : ordered) {
    canonical += fmt::format("{}\t{}\t{}\t{}\t{}\t{:.17g}\t{:.17g}\t{:.17g}\t{}\t{}\t{}\t{}\n",
                             t->task_id, t->skill_id, to_string(t->modality),
                             to_string(t->paradigm), t->metric.name(), t->metric.range_min,
                             t->metric.range_max, t->sota_raw, t->sota_model, t->instance_count,
                             t->closed_count, t->open_count);
  }

  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(canonical.data(), canonical.size(), digest, &length, EVP_sha256(), nullptr);
  return "sha256:" + hex({digest, length});
}

std::vector<TaskDescriptor> parse_registry_records(std::string_view text, FileFormat format,
                                                   Diagnostics& diagnostics) {
  std::vector<detail::Record> records;
  try {
    records = format == FileFormat::Csv ? detail::records_from_csv(text)
                                        : detail::records_from_json(text, "tasks");
  } catch (const Error& e) {
    diagnostics.push_back({Severity::Error, e.code(), "registry", e.what()});
    return {};
  }
  std::vector<TaskDescriptor> tasks;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (auto task = to_task(records[i], i, diagnostics)) tasks.push_back(std::move(*task));
  }
  return tasks;
}

Registry parse_registry(std::string_view text, FileFormat format, Diagnostics* warnings) {
  Diagnostics diagnostics;
  auto tasks = parse_registry_records(text, format, diagnostics);
  throw_first_error(diagnostics);
  auto validation = validate_tasks(tasks);
  throw_first_error(validation);
  if (warnings != nullptr) {
    warnings->insert(warnings->end(), diagnostics.begin(), diagnostics.end());
    warnings->insert(warnings->end(), validation.begin(), validation.end());
  }
  return Registry(std::move(tasks));
}

Registry load_registry(const std::filesystem::path& path, Diagnostics* warnings) {
  return parse_registry(read_file(path), format_for(path), warnings);
}

Registry update_sota(const Registry& registry, std::string_view task_id, double new_sota_raw) {
  const std::size_t index = registry.find(task_id);
  if (index == Registry::npos) {
    throw Error(ErrorCode::UnknownTaskId, std::string(task_id), "no such task in registry");
  }
  std::vector<TaskDescriptor> tasks(registry.tasks().begin(), registry.tasks().end());
  tasks[index].sota_raw = new_sota_raw;
  return Registry(std::move(tasks));
}

FileFormat format_for(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".csv" ? FileFormat::Csv : FileFormat::Json;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, path.string(), "cannot open for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace genlevel
