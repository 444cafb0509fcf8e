#include "genlevel/synergy.hpp"

#include <algorithm>
#include <cmath>

#include "genlevel/scoring.hpp"

namespace genlevel {
namespace {

struct Tally {
  std::size_t wins = 0;
  double excess = 0.0;
  std::size_t tasks = 0;

  double normalized() const { return tasks == 0 ? 0.0 : excess / static_cast<double>(tasks); }
};

Tally tally(std::span<const std::size_t> tasks, const NormalizedResults& results,
            const Registry& registry) {
  Tally t;
  t.tasks = tasks.size();
  for (std::size_t index : tasks) {
    const double sigma = results[index];
    const double sota = registry.sota(index);
    if (sigma >= sota) {
      ++t.wins;
      t.excess += sigma - sota;
    }
  }
  return t;
}

}  // namespace

std::vector<SynergyCell> skill_synergy(const NormalizedResults& results, const Registry& registry) {
  std::vector<SynergyCell> cells;
  for (const auto& skill : registry.skills()) {
    const auto tasks = registry.by_skill(skill);
    const auto t = tally(tasks, results, registry);
    cells.push_back({skill, std::string(to_string(registry.task(tasks.front()).modality)), t.wins,
                     t.excess, t.normalized()});
  }
  return cells;
}

ModalitySynergyMatrix modality_synergy_matrix(const NormalizedResults& results,
                                              const Registry& registry) {
  ModalitySynergyMatrix matrix;
  matrix.modalities = registry.scored_modalities();
  const std::size_t n = matrix.modalities.size();

  std::vector<Tally> diagonal;
  for (Modality m : matrix.modalities) diagonal.push_back(tally(registry.by_modality(m), results, registry));

  matrix.cells.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      auto& cell = matrix.cells[i * n + j];
      cell.row_key = to_string(matrix.modalities[i]);
      cell.col_key = to_string(matrix.modalities[j]);
      const auto& a = diagonal[i];
      const auto& b = diagonal[j];
      if (i == j) {
        cell.win_count = a.wins;
        cell.excess_weight = a.excess;
        cell.normalized_value = a.normalized();
      } else {
        // Both orders multiply the same pair, so cell(i,j) == cell(j,i) bit for bit.
        const auto& lo = i < j ? a : b;
        const auto& hi = i < j ? b : a;
        cell.win_count = std::min(a.wins, b.wins);
        cell.excess_weight = std::sqrt(lo.excess * hi.excess);
        cell.normalized_value = std::sqrt(lo.normalized() * hi.normalized());
      }
    }
  }
  return matrix;
}

std::vector<CompGenSynergy> compgen_synergy(const NormalizedResults& results,
                                            const Registry& registry) {
  std::vector<CompGenSynergy> out;
  for (Modality m : registry.scored_modalities()) {
    const auto c = tally(registry.group(m, Paradigm::Comprehension), results, registry);
    const auto g = tally(registry.group(m, Paradigm::Generation), results, registry);
    CompGenSynergy s;
    s.modality = m;
    s.comprehension_wins = c.wins;
    s.generation_wins = g.wins;
    s.comprehension_excess = c.excess;
    s.generation_excess = g.excess;
    s.comprehension_weight = c.normalized();
    s.generation_weight = g.normalized();
    s.value = harmonic_mean(s.comprehension_weight, s.generation_weight);
    out.push_back(s);
  }
  return out;
}

}  // namespace genlevel
