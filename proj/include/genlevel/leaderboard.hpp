#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "genlevel/registry.hpp"
#include "genlevel/results.hpp"
#include "genlevel/scoring.hpp"

namespace genlevel {

/// Leaderboard granularity: A full spectrum, B one modality, C one modality
/// and paradigm, D one skill.
struct Scope {
  enum class Kind { A, B, C, D };

  Kind kind = Kind::A;
  Modality modality = Modality::Image;
  Paradigm paradigm = Paradigm::Comprehension;
  std::string skill_id;

  /// "A", "B:<modality>", "C:<modality>:<paradigm>", "D:<skill>". Throws InvalidScope.
  static Scope parse(std::string_view text);
  std::string label() const;
  /// Label with ':' replaced, for file names.
  std::string file_stem() const;

  bool operator==(const Scope&) const = default;
};

/// The scope's task subset. Throws UnknownModalityForScope / UnknownSkillForScope / InvalidScope.
Registry scope_registry(const Registry& registry, const Scope& scope);

struct LeaderboardEntry {
  int rank = 0;
  std::string model_id;
  int level = 1;
  NormalizedScore score;
  std::size_t win_count = 0;
  std::size_t supported_count = 0;
  /// Criteria consulted to order this entry after the previous one.
  std::vector<std::string> tie_break_trace;
  LevelReport report;
};

struct Leaderboard {
  Scope scope;
  std::string registry_fingerprint;
  std::vector<LeaderboardEntry> entries;
};

/// Orders reports by (level desc, score desc, win_count desc,
/// supported_count desc, model_id asc) with competition ranking.
Leaderboard rank_reports(std::vector<LevelReport> reports, const Scope& scope,
                         std::string registry_fingerprint);

/// Scores every model on the scope's task subset and ranks them.
Leaderboard build_leaderboard(std::span<const ModelResults> results, const Scope& scope,
                              const Registry& registry, const ScoringOptions& options = {});

enum class ExportFormat { Json, Csv };

/// "json" or "csv". Throws UnsupportedFormat.
ExportFormat parse_export_format(std::string_view text);
std::string_view extension(ExportFormat format);

/// Deterministic bytes with a trailing newline. Scores on the 100-point scale.
std::string export_leaderboard(const Leaderboard& leaderboard, ExportFormat format,
                               int decimals = 2);

}  // namespace genlevel
