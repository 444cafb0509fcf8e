#pragma once

#include <compare>
#include <optional>

#include "genlevel/error.hpp"
#include "genlevel/types.hpp"

namespace genlevel {

/// Score on the canonical [0,1] scale. Construction clamps; NaN becomes 0.
class NormalizedScore {
 public:
  constexpr NormalizedScore() = default;
  explicit NormalizedScore(double value);

  double value() const noexcept { return value_; }
  /// The 100-point presentation scale.
  double presented() const noexcept { return value_ * 100.0; }

  auto operator<=>(const NormalizedScore&) const = default;

 private:
  double value_ = 0.0;
};

/// Raw metric value. std::nullopt means missing or explicitly unsupported;
/// +inf is the unsupported sentinel for lower-better metrics.
using RawScore = std::optional<double>;

/// Maps a raw metric value onto [0,1]. Missing and non-finite values map to 0.
/// Throws Error{RawOutOfRange} for values outside a bounded metric domain;
/// WER and PercentIdentity overshoot is clamped and reported as a warning.
NormalizedScore normalize(const MetricSpec& metric, RawScore raw,
                          Diagnostics* warnings = nullptr);

/// True for the 2*sigmoid(c/x)-1 family (MAE, FID, CD, ...).
bool is_sigmoid_family(MetricKind kind);

/// The constant c of 2*sigmoid(c/x)-1. Throws Error{WrongMetricFamily}.
double sigmoid_constant(MetricKind kind);

/// Value of a sigmoid-family metric at x = 0, the perfect-score limit.
/// Throws Error{WrongMetricFamily} for any other kind.
NormalizedScore normalize_lower_better_limit_check(MetricKind kind);

}  // namespace genlevel
