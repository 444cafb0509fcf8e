#include "genlevel/scoring.hpp"

#include <algorithm>

namespace genlevel {
namespace {

// S_total of the level-5 weight, on the canonical scale.
constexpr double kTotalScore = 1.0;

void require_scored_modality(Modality modality) {
  if (modality == Modality::Language) {
    throw Error(ErrorCode::LanguageModalityNotScoredHere, "Language",
                "language tasks only enter the level-5 weight");
  }
}

NormalizedScore level4_from(const Level3Component& l3) {
  const double hm = harmonic_mean(l3.comprehension.value(), l3.generation.value());
  // With S_C == S_G rounding can land the harmonic mean one ulp above S3.
  return NormalizedScore(std::min(hm, l3.s3.value()));
}

}  // namespace

const ModalityComponents* LevelComponents::find(Modality m) const {
  for (const auto& c : per_modality) {
    if (c.modality == m) return &c;
  }
  return nullptr;
}

NormalizedScore LevelReport::level_score(int level) const {
  switch (level) {
    case 2: return s2;
    case 3: return s3;
    case 4: return s4;
    case 5: return s5;
    default: return NormalizedScore(0.0);
  }
}

NormalizedScore masked_average(std::span<const std::size_t> tasks, const NormalizedResults& results,
                               const Registry& registry) {
  if (tasks.empty()) return NormalizedScore(0.0);
  double sum = 0.0;
  for (std::size_t index : tasks) {
    const double sigma = results[index];
    sum += sigma >= registry.sota(index) ? sigma : 0.0;
  }
  return NormalizedScore(sum / static_cast<double>(tasks.size()));
}

NormalizedScore plain_average(std::span<const std::size_t> tasks, const NormalizedResults& results) {
  if (tasks.empty()) return NormalizedScore(0.0);
  double sum = 0.0;
  for (std::size_t index : tasks) sum += results[index];
  return NormalizedScore(sum / static_cast<double>(tasks.size()));
}

NormalizedScore level2_component(Modality modality, const NormalizedResults& results,
                                 const Registry& registry) {
  require_scored_modality(modality);
  const double c = plain_average(registry.group(modality, Paradigm::Comprehension), results).value();
  const double g = plain_average(registry.group(modality, Paradigm::Generation), results).value();
  return NormalizedScore(0.5 * (c + g));
}

Level3Component level3_component(Modality modality, const NormalizedResults& results,
                                  const Registry& registry) {
  require_scored_modality(modality);
  Level3Component out;
  out.comprehension =
      masked_average(registry.group(modality, Paradigm::Comprehension), results, registry);
  out.generation = masked_average(registry.group(modality, Paradigm::Generation), results, registry);
  out.s3 = NormalizedScore(0.5 * (out.comprehension.value() + out.generation.value()));
  return out;
}

double harmonic_mean(double a, double b) {
  const double sum = a + b;
  if (sum <= 0.0 || a <= 0.0 || b <= 0.0) return 0.0;
  return 2.0 * a * b / sum;
}

NormalizedScore level4_component(Modality modality, const NormalizedResults& results,
                                 const Registry& registry) {
  return level4_from(level3_component(modality, results, registry));
}

LanguageWeight level5_weight(const NormalizedResults& results, const Registry& registry) {
  const auto language = masked_average(registry.by_paradigm(Paradigm::NLP), results, registry);
  return {NormalizedScore(language.value() / kTotalScore), language};
}

NormalizedScore modality_average(const std::map<Modality, NormalizedScore>& components) {
  if (components.empty()) {
    throw Error(ErrorCode::EmptyModalitySet, "modalities", "no non-language modality to average");
  }
  double sum = 0.0;
  for (const auto& [modality, score] : components) {
    require_scored_modality(modality);
    sum += score.value();
  }
  return NormalizedScore(sum / static_cast<double>(components.size()));
}

int assign_level(const LevelReport& report, double epsilon) {
  for (int level = 5; level >= 2; --level) {
    if (report.level_score(level).value() > epsilon) return level;
  }
  return 1;
}

LevelReport score_model(const ModelResults& results, const Registry& registry,
                        const ScoringOptions& options) {
  auto report = score_model(normalize_results(results, registry), registry, options);
  report.metadata = results.metadata;
  return report;
}

LevelReport score_model(const NormalizedResults& results, const Registry& registry,
                        const ScoringOptions& options) {
  LevelReport report;
  report.model_id = results.model_id;

  std::map<Modality, NormalizedScore> s2;
  std::map<Modality, NormalizedScore> s3;
  std::map<Modality, NormalizedScore> s4;
  for (Modality m : registry.scored_modalities()) {
    ModalityComponents c;
    c.modality = m;
    c.s2 = level2_component(m, results, registry);
    const auto l3 = level3_component(m, results, registry);
    c.s3 = l3.s3;
    c.comprehension = l3.comprehension;
    c.generation = l3.generation;
    c.s4 = level4_from(l3);
    s2[m] = c.s2;
    s3[m] = c.s3;
    s4[m] = c.s4;
    report.components.per_modality.push_back(c);
  }

  const auto weight = level5_weight(results, registry);
  report.components.language = weight.language;
  report.components.language_weight = weight.weight;

  if (!s2.empty()) {
    report.s2 = modality_average(s2);
    report.s3 = modality_average(s3);
    report.s4 = modality_average(s4);
    report.s5 = NormalizedScore(report.s4.value() * weight.weight.value());
  }

  report.total_tasks = registry.size();
  for (std::size_t i = 0; i < registry.size(); ++i) {
    if (results[i] > options.epsilon) ++report.supported_count;
    if (results[i] >= registry.sota(i)) ++report.win_count;
  }
  if (report.total_tasks > 0) {
    const auto total = static_cast<double>(report.total_tasks);
    report.supported_fraction = static_cast<double>(report.supported_count) / total;
    report.win_fraction = static_cast<double>(report.win_count) / total;
  }
  report.assigned_level = assign_level(report, options.epsilon);
  return report;
}

}  // namespace genlevel
