#include "genlevel/report_export.hpp"

#include <cmath>
#include <cstdlib>

#include <fmt/format.h>

#include "csv.hpp"

namespace genlevel {
namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json modality_json(const ModalityComponents& c, int decimals) {
  ordered_json out;
  out["S2"] = present(c.s2.value(), decimals);
  out["S3"] = present(c.s3.value(), decimals);
  out["S4"] = present(c.s4.value(), decimals);
  out["S_C"] = present(c.comprehension.value(), decimals);
  out["S_G"] = present(c.generation.value(), decimals);
  return out;
}

ordered_json modality_precise(const ModalityComponents& c) {
  ordered_json out;
  out["S2"] = c.s2.value();
  out["S3"] = c.s3.value();
  out["S4"] = c.s4.value();
  out["S_C"] = c.comprehension.value();
  out["S_G"] = c.generation.value();
  return out;
}

ordered_json cell_json(const SynergyCell& cell) {
  ordered_json out;
  out["row_key"] = cell.row_key;
  out["col_key"] = cell.col_key;
  out["win_count"] = cell.win_count;
  out["excess_weight"] = cell.excess_weight;
  out["normalized_value"] = cell.normalized_value;
  return out;
}

}  // namespace

double present(double canonical, int decimals) {
  const double scale = std::pow(10.0, decimals);
  // 12 significant digits strips noise such as 114.74999999999999 -> 114.75.
  const double scaled = std::strtod(fmt::format("{:.12g}", canonical * 100.0 * scale).c_str(), nullptr);
  return std::round(scaled) / scale;
}

std::string format_presented(double canonical, int decimals) {
  return fmt::format("{:.{}f}", present(canonical, decimals), decimals);
}

ordered_json components_to_json(const LevelReport& report, int decimals) {
  ordered_json out;
  out["S2"] = present(report.s2.value(), decimals);
  out["S3"] = present(report.s3.value(), decimals);
  out["S4"] = present(report.s4.value(), decimals);
  out["S5"] = present(report.s5.value(), decimals);
  ordered_json modalities = ordered_json::object();
  for (const auto& c : report.components.per_modality) {
    modalities[std::string(to_string(c.modality))] = modality_json(c, decimals);
  }
  out["modalities"] = std::move(modalities);
  out["S_L"] = present(report.components.language.value(), decimals);
  out["w_L"] = present(report.components.language_weight.value(), decimals);
  return out;
}

ordered_json report_to_json(const LevelReport& report, int decimals) {
  ordered_json out;
  out["model_id"] = report.model_id;
  out["assigned_level"] = report.assigned_level;
  out["S2"] = present(report.s2.value(), decimals);
  out["S3"] = present(report.s3.value(), decimals);
  out["S4"] = present(report.s4.value(), decimals);
  out["S5"] = present(report.s5.value(), decimals);
  ordered_json modalities = ordered_json::object();
  for (const auto& c : report.components.per_modality) {
    modalities[std::string(to_string(c.modality))] = modality_json(c, decimals);
  }
  out["modalities"] = std::move(modalities);
  out["S_L"] = present(report.components.language.value(), decimals);
  out["w_L"] = present(report.components.language_weight.value(), decimals);
  out["total_tasks"] = report.total_tasks;
  out["supported_count"] = report.supported_count;
  out["supported_fraction"] = present(report.supported_fraction, decimals);
  out["win_count"] = report.win_count;
  out["win_fraction"] = present(report.win_fraction, decimals);
  out["metadata"] = report.metadata;

  ordered_json precise;
  precise["S2"] = report.s2.value();
  precise["S3"] = report.s3.value();
  precise["S4"] = report.s4.value();
  precise["S5"] = report.s5.value();
  ordered_json precise_modalities = ordered_json::object();
  for (const auto& c : report.components.per_modality) {
    precise_modalities[std::string(to_string(c.modality))] = modality_precise(c);
  }
  precise["modalities"] = std::move(precise_modalities);
  precise["S_L"] = report.components.language.value();
  precise["w_L"] = report.components.language_weight.value();
  precise["supported_fraction"] = report.supported_fraction;
  precise["win_fraction"] = report.win_fraction;
  out["precise"] = std::move(precise);
  return out;
}

std::string export_reports_json(std::span<const LevelReport> reports,
                                const std::string& registry_fingerprint, int decimals) {
  ordered_json doc;
  doc["generated_from"] = registry_fingerprint;
  doc["scale"] = "percent";
  doc["reports"] = ordered_json::array();
  for (const auto& r : reports) doc["reports"].push_back(report_to_json(r, decimals));
  return doc.dump(2) + "\n";
}

std::string export_reports_csv(std::span<const LevelReport> reports, int decimals) {
  std::string out = "model_id,level,S2,S3,S4,S5,supported_count,win_count,total_tasks\n";
  for (const auto& r : reports) {
    out += csv::join({r.model_id, std::to_string(r.assigned_level),
                      format_presented(r.s2.value(), decimals), format_presented(r.s3.value(), decimals),
                      format_presented(r.s4.value(), decimals), format_presented(r.s5.value(), decimals),
                      std::to_string(r.supported_count), std::to_string(r.win_count),
                      std::to_string(r.total_tasks)});
    out.push_back('\n');
  }
  return out;
}

SynergyKind parse_synergy_kind(std::string_view text) {
  if (text == "skill") return SynergyKind::Skill;
  if (text == "modality") return SynergyKind::Modality;
  if (text == "compgen") return SynergyKind::CompGen;
  throw Error(ErrorCode::ConfigError, std::string(text), "expected skill, modality or compgen");
}

std::string_view to_string(SynergyKind kind) {
  switch (kind) {
    case SynergyKind::Skill: return "skill";
    case SynergyKind::Modality: return "modality";
    case SynergyKind::CompGen: return "compgen";
  }
  return "?";
}

ModelSynergy synergy_for(SynergyKind kind, const NormalizedResults& results,
                         const Registry& registry) {
  ModelSynergy out{results.model_id, {}, {}};
  switch (kind) {
    case SynergyKind::Skill:
      out.cells = skill_synergy(results, registry);
      break;
    case SynergyKind::Modality: {
      auto matrix = modality_synergy_matrix(results, registry);
      for (Modality m : matrix.modalities) out.axis.emplace_back(to_string(m));
      out.cells = std::move(matrix.cells);
      break;
    }
    case SynergyKind::CompGen:
      for (const auto& s : compgen_synergy(results, registry)) {
        out.cells.push_back({std::string(to_string(s.modality)), "CompGen",
                             s.comprehension_wins + s.generation_wins,
                             s.comprehension_excess + s.generation_excess, s.value});
      }
      break;
  }
  return out;
}

std::string export_synergy_json(SynergyKind kind, std::span<const ModelSynergy> models) {
  ordered_json doc;
  doc["kind"] = to_string(kind);
  doc["models"] = ordered_json::array();
  for (const auto& m : models) {
    ordered_json model;
    model["model_id"] = m.model_id;
    if (!m.axis.empty()) {
      const std::size_t n = m.axis.size();
      model["axis"] = m.axis;
      ordered_json matrix = ordered_json::array();
      for (std::size_t i = 0; i < n; ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < n; ++j) row.push_back(m.cells[i * n + j].normalized_value);
        matrix.push_back(std::move(row));
      }
      model["matrix"] = std::move(matrix);
    }
    ordered_json cells = ordered_json::array();
    for (const auto& c : m.cells) cells.push_back(cell_json(c));
    model["cells"] = std::move(cells);
    doc["models"].push_back(std::move(model));
  }
  return doc.dump(2) + "\n";
}

std::string export_synergy_csv(std::span<const ModelSynergy> models) {
  std::string out = "model_id,row_key,col_key,win_count,excess_weight,normalized_value\n";
  for (const auto& m : models) {
    for (const auto& c : m.cells) {
      out += csv::join({m.model_id, c.row_key, c.col_key, std::to_string(c.win_count),
                        fmt::format("{:.12g}", c.excess_weight),
                        fmt::format("{:.12g}", c.normalized_value)});
      out.push_back('\n');
    }
  }
  return out;
}

}  // namespace genlevel
