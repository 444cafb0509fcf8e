#include "genlevel/leaderboard.hpp"

#include <algorithm>
#include <tuple>

#include <fmt/format.h>

#include "csv.hpp"
#include "genlevel/report_export.hpp"
#include "json.hpp"

namespace genlevel {
namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? text.npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

[[noreturn]] void bad_scope(std::string_view text, std::string_view why) {
  throw Error(ErrorCode::InvalidScope, std::string(text), std::string(why));
}

auto sort_key(const LeaderboardEntry& e) {
  return std::make_tuple(e.level, e.score.value(), e.win_count, e.supported_count);
}

// Which criteria had to be consulted to place `current` after `previous`.
std::vector<std::string> trace_between(const LeaderboardEntry& previous,
                                       const LeaderboardEntry& current) {
  std::vector<std::string> trace{"level"};
  if (previous.level != current.level) return trace;
  trace.emplace_back("score");
  if (previous.score != current.score) return trace;
  trace.emplace_back("win_count");
  if (previous.win_count != current.win_count) return trace;
  trace.emplace_back("supported_count");
  if (previous.supported_count != current.supported_count) return trace;
  trace.emplace_back("model_id");
  return trace;
}

}  // namespace

Scope Scope::parse(std::string_view text) {
  const auto parts = split(text, ':');
  Scope scope;
  if (parts[0] == "A") {
    if (parts.size() != 1) bad_scope(text, "scope A takes no argument");
    scope.kind = Kind::A;
    return scope;
  }
  if (parts[0] == "B" || parts[0] == "C") {
    const bool c = parts[0] == "C";
    if (parts.size() != (c ? 3u : 2u)) {
      bad_scope(text, c ? "expected C:<modality>:<paradigm>" : "expected B:<modality>");
    }
    auto modality = parse_modality(parts[1]);
    if (!modality) throw Error(ErrorCode::UnknownModalityForScope, std::string(parts[1]), "unknown modality");
    if (*modality == Modality::Language) {
      throw Error(ErrorCode::UnknownModalityForScope, "Language",
                  "scopes B and C take a non-language modality");
    }
    scope.kind = c ? Kind::C : Kind::B;
    scope.modality = *modality;
    if (c) {
      auto paradigm = parse_paradigm(parts[2]);
      if (!paradigm || *paradigm == Paradigm::NLP) {
        bad_scope(text, "scope C takes Comprehension or Generation");
      }
      scope.paradigm = *paradigm;
    }
    return scope;
  }
  if (parts[0] == "D") {
    if (parts.size() < 2 || text.size() <= 2) bad_scope(text, "expected D:<skill>");
    scope.kind = Kind::D;
    scope.skill_id = std::string(text.substr(2));
    return scope;
  }
  bad_scope(text, "scope must start with A, B, C or D");
}

std::string Scope::label() const {
  switch (kind) {
    case Kind::A: return "A";
    case Kind::B: return fmt::format("B:{}", to_string(modality));
    case Kind::C: return fmt::format("C:{}:{}", to_string(modality), to_string(paradigm));
    case Kind::D: return fmt::format("D:{}", skill_id);
  }
  return "?";
}

std::string Scope::file_stem() const {
  auto stem = label();
  for (char& c : stem) {
    const bool safe = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.';
    if (!safe) c = '_';
  }
  return stem;
}

Registry scope_registry(const Registry& registry, const Scope& scope) {
  switch (scope.kind) {
    case Scope::Kind::A:
      return registry;
    case Scope::Kind::B:
      if (registry.by_modality(scope.modality).empty()) {
        throw Error(ErrorCode::UnknownModalityForScope, std::string(to_string(scope.modality)),
                    "no tasks of this modality in the registry");
      }
      return registry.filtered([&](const TaskDescriptor& t) { return t.modality == scope.modality; });
    case Scope::Kind::C:
      if (registry.group(scope.modality, scope.paradigm).empty()) {
        throw Error(ErrorCode::UnknownModalityForScope, scope.label(),
                    "no tasks of this modality and paradigm in the registry");
      }
      return registry.filtered([&](const TaskDescriptor& t) {
        return t.modality == scope.modality && t.paradigm == scope.paradigm;
      });
    case Scope::Kind::D:
      if (registry.by_skill(scope.skill_id).empty()) {
        throw Error(ErrorCode::UnknownSkillForScope, scope.skill_id, "no such skill in the registry");
      }
      return registry.filtered([&](const TaskDescriptor& t) { return t.skill_id == scope.skill_id; });
  }
  return registry;
}

Leaderboard rank_reports(std::vector<LevelReport> reports, const Scope& scope,
                         std::string registry_fingerprint) {
  Leaderboard board{scope, std::move(registry_fingerprint), {}};
  board.entries.reserve(reports.size());
  for (auto& report : reports) {
    LeaderboardEntry e;
    e.model_id = report.model_id;
    e.level = report.assigned_level;
    e.score = report.headline_score();
    e.win_count = report.win_count;
    e.supported_count = report.supported_count;
    e.report = std::move(report);
    board.entries.push_back(std::move(e));
  }

  std::sort(board.entries.begin(), board.entries.end(), [](const auto& a, const auto& b) {
    const auto ka = sort_key(a);
    const auto kb = sort_key(b);
    if (ka != kb) return ka > kb;
    return a.model_id < b.model_id;
  });

  for (std::size_t i = 0; i < board.entries.size(); ++i) {
    auto& e = board.entries[i];
    if (i == 0) {
      e.rank = 1;
      continue;
    }
    const auto& previous = board.entries[i - 1];
    e.tie_break_trace = trace_between(previous, e);
    e.rank = sort_key(previous) == sort_key(e) ? previous.rank : static_cast<int>(i) + 1;
  }
  return board;
}

Leaderboard build_leaderboard(std::span<const ModelResults> results, const Scope& scope,
                              const Registry& registry, const ScoringOptions& options) {
  const Registry subset = scope_registry(registry, scope);
  std::vector<LevelReport> reports;
  reports.reserve(results.size());
  for (const auto& model : results) {
    // Results for tasks outside the scope are dropped before scoring.
    ModelResults scoped{model.model_id, {}, model.metadata};
    for (const auto& [task_id, raw] : model.scores) {
      if (registry.find(task_id) == Registry::npos) {
        throw Error(ErrorCode::UnknownTaskId, fmt::format("{}/{}", model.model_id, task_id),
                    "result references a task missing from the registry");
      }
      if (subset.find(task_id) != Registry::npos) scoped.scores.emplace(task_id, raw);
    }
    reports.push_back(score_model(scoped, subset, options));
  }
  return rank_reports(std::move(reports), scope, registry.fingerprint());
}

ExportFormat parse_export_format(std::string_view text) {
  if (text == "json") return ExportFormat::Json;
  if (text == "csv") return ExportFormat::Csv;
  throw Error(ErrorCode::UnsupportedFormat, std::string(text), "expected json or csv");
}

std::string_view extension(ExportFormat format) {
  return format == ExportFormat::Json ? "json" : "csv";
}

std::string export_leaderboard(const Leaderboard& leaderboard, ExportFormat format, int decimals) {
  if (format == ExportFormat::Csv) {
    std::string out = "rank,model_id,level,score,win_count,supported_count\n";
    for (const auto& e : leaderboard.entries) {
      out += csv::join({std::to_string(e.rank), e.model_id, std::to_string(e.level),
                        format_presented(e.score.value(), decimals), std::to_string(e.win_count),
                        std::to_string(e.supported_count)});
      out.push_back('\n');
    }
    return out;
  }

  nlohmann::ordered_json doc;
  doc["scope"] = leaderboard.scope.label();
  doc["generated_from"] = leaderboard.registry_fingerprint;
  doc["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : leaderboard.entries) {
    nlohmann::ordered_json entry;
    entry["rank"] = e.rank;
    entry["model_id"] = e.model_id;
    entry["level"] = e.level;
    entry["score"] = present(e.score.value(), decimals);
    entry["win_count"] = e.win_count;
    entry["supported_count"] = e.supported_count;
    entry["components"] = components_to_json(e.report, decimals);
    entry["tie_break_trace"] = e.tie_break_trace;
    doc["entries"].push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

}  // namespace genlevel
