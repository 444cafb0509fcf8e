#include "genlevel/error.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace genlevel {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateTaskId: return "DuplicateTaskId";
    case ErrorCode::UnknownMetricKind: return "UnknownMetricKind";
    case ErrorCode::InvalidMetricRange: return "InvalidMetricRange";
    case ErrorCode::SotaNormalizesToZero: return "SotaNormalizesToZero";
    case ErrorCode::ParadigmModalityMismatch: return "ParadigmModalityMismatch";
    case ErrorCode::UnknownTaskId: return "UnknownTaskId";
    case ErrorCode::RawOutOfRange: return "RawOutOfRange";
    case ErrorCode::WrongMetricFamily: return "WrongMetricFamily";
    case ErrorCode::LanguageModalityNotScoredHere: return "LanguageModalityNotScoredHere";
    case ErrorCode::EmptyModalitySet: return "EmptyModalitySet";
    case ErrorCode::UnknownModalityForScope: return "UnknownModalityForScope";
    case ErrorCode::UnknownSkillForScope: return "UnknownSkillForScope";
    case ErrorCode::InvalidScope: return "InvalidScope";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::DuplicateModelId: return "DuplicateModelId";
    case ErrorCode::DuplicateResult: return "DuplicateResult";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, std::string subject, const std::string& detail)
    : std::runtime_error(fmt::format("{} [{}]: {}", to_string(code), subject, detail)),
      code_(code),
      subject_(std::move(subject)) {}

std::string Diagnostic::format() const {
  return fmt::format("{}: {} [{}]: {}", severity == Severity::Error ? "error" : "warning",
                     to_string(code), subject, message);
}

bool has_errors(const Diagnostics& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

void throw_first_error(const Diagnostics& diagnostics) {
  for (const auto& d : diagnostics) {
    if (d.severity == Severity::Error) throw Error(d.code, d.subject, d.message);
  }
}

}  // namespace genlevel
