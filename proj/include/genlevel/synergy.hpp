#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "genlevel/registry.hpp"
#include "genlevel/results.hpp"

namespace genlevel {

/// Win statistics of one group of tasks (or pair of groups) against the SoTA references.
struct SynergyCell {
  std::string row_key;
  std::string col_key;
  std::size_t win_count = 0;
  /// Sum of (sigma - sigma_sota) over winning tasks, canonical scale.
  double excess_weight = 0.0;
  double normalized_value = 0.0;

  bool operator==(const SynergyCell&) const = default;
};

/// One cell per skill in ascending skill order. row_key is the skill id,
/// col_key the skill's modality. normalized_value = excess / |skill tasks|.
std::vector<SynergyCell> skill_synergy(const NormalizedResults& results, const Registry& registry);

/// Symmetric matrix over the registry's non-language modalities.
struct ModalitySynergyMatrix {
  std::vector<Modality> modalities;
  /// Row-major, modalities.size() squared.
  std::vector<SynergyCell> cells;

  const SynergyCell& at(std::size_t row, std::size_t col) const {
    return cells[row * modalities.size() + col];
  }
};

/// Diagonal: the modality's wins and excess over all its tasks, normalized by
/// task count. Off-diagonal: geometric means of the two diagonal cells, with
/// win_count the smaller of the two.
ModalitySynergyMatrix modality_synergy_matrix(const NormalizedResults& results,
                                              const Registry& registry);

struct CompGenSynergy {
  Modality modality = Modality::Image;
  std::size_t comprehension_wins = 0;
  std::size_t generation_wins = 0;
  double comprehension_excess = 0.0;
  double generation_excess = 0.0;
  /// Excess weight divided by the group's task count.
  double comprehension_weight = 0.0;
  double generation_weight = 0.0;
  /// Harmonic mean of the two weights.
  double value = 0.0;
};

std::vector<CompGenSynergy> compgen_synergy(const NormalizedResults& results,
                                            const Registry& registry);

}  // namespace genlevel
