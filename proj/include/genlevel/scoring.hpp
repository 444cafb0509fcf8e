#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "genlevel/normalize.hpp"
#include "genlevel/registry.hpp"
#include "genlevel/results.hpp"

namespace genlevel {

struct ScoringOptions {
  /// Scores at or below epsilon count as zero for support and level assignment.
  double epsilon = 1e-9;
};

/// Level scores of one non-language modality.
struct ModalityComponents {
  Modality modality = Modality::Image;
  NormalizedScore s2;
  NormalizedScore s3;
  NormalizedScore s4;
  /// Masked (SoTA-gated) comprehension and generation averages.
  NormalizedScore comprehension;
  NormalizedScore generation;

  bool operator==(const ModalityComponents&) const = default;
};

struct LevelComponents {
  std::vector<ModalityComponents> per_modality;
  /// Masked average over NLP tasks.
  NormalizedScore language;
  NormalizedScore language_weight;

  const ModalityComponents* find(Modality m) const;
  bool operator==(const LevelComponents&) const = default;
};

struct LevelReport {
  std::string model_id;
  NormalizedScore s2;
  NormalizedScore s3;
  NormalizedScore s4;
  NormalizedScore s5;
  LevelComponents components;
  std::size_t total_tasks = 0;
  std::size_t supported_count = 0;
  double supported_fraction = 0.0;
  std::size_t win_count = 0;
  double win_fraction = 0.0;
  int assigned_level = 1;
  std::map<std::string, std::string> metadata;

  /// S_k for k in 2..5; 0 for level 1.
  NormalizedScore level_score(int level) const;
  /// Score at the assigned level.
  NormalizedScore headline_score() const { return level_score(assigned_level); }

  bool operator==(const LevelReport&) const = default;
};

struct Level3Component {
  NormalizedScore s3;
  NormalizedScore comprehension;
  NormalizedScore generation;
};

struct LanguageWeight {
  NormalizedScore weight;
  NormalizedScore language;
};

/// Mean over `tasks` of sigma where sigma >= sigma_sota, else 0. Empty -> 0.
NormalizedScore masked_average(std::span<const std::size_t> tasks, const NormalizedResults& results,
                               const Registry& registry);

/// Mean of sigma over `tasks`. Empty -> 0.
NormalizedScore plain_average(std::span<const std::size_t> tasks, const NormalizedResults& results);

/// Half-sum of the plain comprehension and generation averages of one modality.
NormalizedScore level2_component(Modality modality, const NormalizedResults& results,
                                 const Registry& registry);

Level3Component level3_component(Modality modality, const NormalizedResults& results,
                                  const Registry& registry);

/// 2ab/(a+b), and 0 when a+b == 0.
double harmonic_mean(double a, double b);

/// Harmonic mean of the masked comprehension and generation averages.
NormalizedScore level4_component(Modality modality, const NormalizedResults& results,
                                 const Registry& registry);

/// w_L = S_L / S_total with S_total = 1 on the canonical scale.
LanguageWeight level5_weight(const NormalizedResults& results, const Registry& registry);

/// Equal-weight mean over the given modalities. Throws EmptyModalitySet.
NormalizedScore modality_average(const std::map<Modality, NormalizedScore>& components);

LevelReport score_model(const ModelResults& results, const Registry& registry,
                        const ScoringOptions& options = {});

LevelReport score_model(const NormalizedResults& results, const Registry& registry,
                        const ScoringOptions& options = {});

/// Highest k in 2..5 with S_k > epsilon, else 1.
int assign_level(const LevelReport& report, double epsilon);

}  // namespace genlevel
