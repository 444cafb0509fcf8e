#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "genlevel/error.hpp"
#include "genlevel/normalize.hpp"
#include "genlevel/registry.hpp"

namespace genlevel {

/// One model's raw scores keyed by task_id. Absent tasks count as unsupported.
struct ModelResults {
  std::string model_id;
  std::map<std::string, RawScore, std::less<>> scores;
  std::map<std::string, std::string> metadata;
};

/// Per-task normalized scores aligned with Registry::tasks().
struct NormalizedResults {
  std::string model_id;
  std::vector<double> sigma;

  double operator[](std::size_t task_index) const { return sigma[task_index]; }
};

/// "unsupported" and empty text are missing; "inf"/"infinity" are +inf.
/// Throws Error{ParseError} for anything else that is not a number.
RawScore parse_raw_score(std::string_view text);

/// Throws UnknownTaskId or RawOutOfRange naming the model and task.
NormalizedResults normalize_results(const ModelResults& results, const Registry& registry,
                                    Diagnostics* warnings = nullptr);

/// Every result that references an unknown task or lies outside its metric domain.
Diagnostics validate_results(const ModelResults& results, const Registry& registry);

/// JSON: {"model_id", "metadata", "records": [{"task_id", "raw_score"}]}.
/// CSV: header model_id,task_id,raw_score; a single model per file.
ModelResults parse_results(std::string_view text, FileFormat format, Diagnostics& diagnostics);

/// Reads every .json/.csv file in `dir`; returns models sorted by model_id.
/// Duplicate model ids are reported as errors.
std::vector<ModelResults> load_results_dir(const std::filesystem::path& dir,
                                           Diagnostics& diagnostics);

}  // namespace genlevel
