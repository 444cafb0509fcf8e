#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace genlevel {

enum class ErrorCode {
  DuplicateTaskId,
  UnknownMetricKind,
  InvalidMetricRange,
  SotaNormalizesToZero,
  ParadigmModalityMismatch,
  UnknownTaskId,
  RawOutOfRange,
  WrongMetricFamily,
  LanguageModalityNotScoredHere,
  EmptyModalitySet,
  UnknownModalityForScope,
  UnknownSkillForScope,
  InvalidScope,
  UnsupportedFormat,
  DuplicateModelId,
  DuplicateResult,
  ParseError,
  IoError,
  ConfigError,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying a machine-readable code and the offending entity
/// (task_id, model_id, path, ...).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string subject, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& subject() const noexcept { return subject_; }

 private:
  ErrorCode code_;
  std::string subject_;
};

enum class Severity { Warning, Error };

struct Diagnostic {
  Severity severity = Severity::Error;
  ErrorCode code = ErrorCode::ParseError;
  std::string subject;
  std::string message;

  std::string format() const;
  bool operator==(const Diagnostic&) const = default;
};

using Diagnostics = std::vector<Diagnostic>;

bool has_errors(const Diagnostics& diagnostics);

/// Throws the first error-severity diagnostic, if any.
void throw_first_error(const Diagnostics& diagnostics);

}  // namespace genlevel
