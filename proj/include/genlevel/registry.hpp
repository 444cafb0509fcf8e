#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "genlevel/error.hpp"
#include "genlevel/normalize.hpp"
#include "genlevel/types.hpp"

namespace genlevel {

struct TaskDescriptor {
  std::string task_id;
  std::string skill_id;
  Modality modality = Modality::Image;
  Paradigm paradigm = Paradigm::Comprehension;
  MetricSpec metric;
  double sota_raw = 0.0;
  std::string sota_model;
  std::int64_t instance_count = 1;
  // Closed:open split, informational only.
  std::int64_t closed_count = 0;
  std::int64_t open_count = 0;

  bool operator==(const TaskDescriptor&) const = default;
};

/// Checks every registry invariant and returns one diagnostic per violation.
Diagnostics validate_tasks(std::span<const TaskDescriptor> tasks);

/// Immutable, validated task registry with modality/paradigm/skill indexes.
/// Tasks keep their input order; indexes hold positions into tasks().
class Registry {
 public:
  Registry() = default;
  /// Throws Error for the first invariant violation.
  explicit Registry(std::vector<TaskDescriptor> tasks);

  std::span<const TaskDescriptor> tasks() const { return tasks_; }
  std::size_t size() const { return tasks_.size(); }
  const TaskDescriptor& task(std::size_t index) const { return tasks_.at(index); }

  /// Normalized SoTA reference of the task at `index`, in (0,1].
  double sota(std::size_t index) const { return sota_.at(index); }

  /// Position of `task_id`, or npos.
  std::size_t find(std::string_view task_id) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::span<const std::size_t> by_modality(Modality m) const;
  std::span<const std::size_t> by_paradigm(Paradigm p) const;
  std::span<const std::size_t> by_skill(std::string_view skill_id) const;
  /// Tasks of one non-language modality within one paradigm.
  std::span<const std::size_t> group(Modality m, Paradigm p) const;

  /// Skill ids in ascending order.
  std::vector<std::string> skills() const;

  /// Non-language modalities with at least one task, in canonical order.
  std::vector<Modality> scored_modalities() const;

  std::size_t comprehension_count() const { return by_paradigm(Paradigm::Comprehension).size(); }
  std::size_t generation_count() const { return by_paradigm(Paradigm::Generation).size(); }
  std::size_t nlp_count() const { return by_paradigm(Paradigm::NLP).size(); }

  Registry filtered(const std::function<bool(const TaskDescriptor&)>& keep) const;

  /// "sha256:<hex>" over a canonical serialization, independent of task order.
  std::string fingerprint() const;

  bool operator==(const Registry& other) const { return tasks_ == other.tasks_; }

 private:
  static constexpr std::size_t kModalities = 5;
  static constexpr std::size_t kParadigms = 3;

  std::vector<TaskDescriptor> tasks_;
  std::vector<double> sota_;
  std::map<std::string, std::size_t, std::less<>> by_id_;
  std::vector<std::size_t> by_modality_[kModalities];
  std::vector<std::size_t> by_paradigm_[kParadigms];
  std::vector<std::size_t> by_group_[kModalities][kParadigms];
  std::map<std::string, std::vector<std::size_t>, std::less<>> by_skill_;
};

enum class FileFormat { Json, Csv };

/// Parses registry records, collecting per-record problems (unknown metric,
/// missing field, unknown extra field) into `diagnostics`. Bad records are skipped.
std::vector<TaskDescriptor> parse_registry_records(std::string_view text, FileFormat format,
                                                   Diagnostics& diagnostics);

Registry parse_registry(std::string_view text, FileFormat format,
                        Diagnostics* warnings = nullptr);

/// Format is chosen from the extension (.csv, otherwise JSON).
Registry load_registry(const std::filesystem::path& path, Diagnostics* warnings = nullptr);

/// Returns a copy with one task's SoTA replaced. Throws UnknownTaskId or
/// SotaNormalizesToZero.
Registry update_sota(const Registry& registry, std::string_view task_id, double new_sota_raw);

FileFormat format_for(const std::filesystem::path& path);
std::string read_file(const std::filesystem::path& path);

}  // namespace genlevel
