#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "genlevel/scoring.hpp"
#include "genlevel/synergy.hpp"
#include "json.hpp"

namespace genlevel {

/// Canonical value on the 100-point scale, rounded half away from zero to
/// `decimals` places after removing binary representation noise.
double present(double canonical, int decimals = 2);

/// present() formatted with exactly `decimals` digits.
std::string format_presented(double canonical, int decimals = 2);

/// LevelReport fields at presentation precision plus a "precise" sub-object
/// holding full-precision canonical values.
nlohmann::ordered_json report_to_json(const LevelReport& report, int decimals = 2);

/// Rounded S2..S5 and per-modality components, as embedded in leaderboards.
nlohmann::ordered_json components_to_json(const LevelReport& report, int decimals = 2);

std::string export_reports_json(std::span<const LevelReport> reports,
                                const std::string& registry_fingerprint, int decimals = 2);

/// Header: model_id,level,S2,S3,S4,S5,supported_count,win_count,total_tasks
std::string export_reports_csv(std::span<const LevelReport> reports, int decimals = 2);

enum class SynergyKind { Skill, Modality, CompGen };

/// "skill", "modality" or "compgen". Throws ConfigError.
SynergyKind parse_synergy_kind(std::string_view text);
std::string_view to_string(SynergyKind kind);

/// Synergy cells of one model, flattened for export. For CompGen each
/// modality yields one cell (row_key modality, col_key "CompGen").
struct ModelSynergy {
  std::string model_id;
  std::vector<SynergyCell> cells;
  /// Row/column labels when the cells form a square matrix (modality kind).
  std::vector<std::string> axis;
};

ModelSynergy synergy_for(SynergyKind kind, const NormalizedResults& results,
                         const Registry& registry);

std::string export_synergy_json(SynergyKind kind, std::span<const ModelSynergy> models);

/// Long form: model_id,row_key,col_key,win_count,excess_weight,normalized_value
std::string export_synergy_csv(std::span<const ModelSynergy> models);

}  // namespace genlevel
