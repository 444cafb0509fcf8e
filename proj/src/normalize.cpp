#include "genlevel/normalize.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace genlevel {
namespace {

[[noreturn]] void out_of_range(const MetricSpec& metric, double raw, std::string_view domain) {
  throw Error(ErrorCode::RawOutOfRange, metric.name(),
              fmt::format("raw value {} outside {}", raw, domain));
}

void warn(Diagnostics* warnings, const MetricSpec& metric, std::string message) {
  if (warnings == nullptr) return;
  warnings->push_back(
      {Severity::Warning, ErrorCode::RawOutOfRange, metric.name(), std::move(message)});
}

}  // namespace

NormalizedScore::NormalizedScore(double value)
    : value_(std::isnan(value) ? 0.0 : std::clamp(value, 0.0, 1.0)) {}

bool is_sigmoid_family(MetricKind kind) {
  switch (kind) {
    case MetricKind::MAE:
    case MetricKind::RMS:
    case MetricKind::MSE:
    case MetricKind::RMSE:
    case MetricKind::AbsRel:
    case MetricKind::EPE:
    case MetricKind::FID:
    case MetricKind::FVD:
    case MetricKind::FAD:
    case MetricKind::SAD:
    case MetricKind::RTE:
    case MetricKind::CD:
    case MetricKind::MCD:
      return true;
    default:
      return false;
  }
}

double sigmoid_constant(MetricKind kind) {
  switch (kind) {
    case MetricKind::MAE:
    case MetricKind::RMS:
      return 50.0;
    case MetricKind::MSE:
    case MetricKind::RMSE:
    case MetricKind::MCD:
      return 5.0;
    case MetricKind::AbsRel:
      return 0.1;
    case MetricKind::EPE:
    case MetricKind::CD:
      return 1.0;
    case MetricKind::FID:
      return 25.0;
    case MetricKind::FVD:
      return 100.0;
    case MetricKind::FAD:
    case MetricKind::SAD:
      return 10.0;
    case MetricKind::RTE:
      return 0.5;
    default:
      throw Error(ErrorCode::WrongMetricFamily, std::string(to_string(kind)),
                  "not a 2*sigmoid(c/x)-1 metric");
  }
}

NormalizedScore normalize_lower_better_limit_check(MetricKind kind) {
  sigmoid_constant(kind);
  return NormalizedScore(1.0);
}

NormalizedScore normalize(const MetricSpec& metric, RawScore raw, Diagnostics* warnings) {
  if (!raw.has_value() || !std::isfinite(*raw)) return NormalizedScore(0.0);
  const double x = *raw;

  if (is_sigmoid_family(metric.kind)) {
    if (x < 0.0) out_of_range(metric, x, "[0, +inf)");
    if (x == 0.0) return NormalizedScore(1.0);
    // 2*sigmoid(z) - 1 == tanh(z/2); the tanh form keeps precision for small z.
    return NormalizedScore(std::tanh(sigmoid_constant(metric.kind) / (2.0 * x)));
  }

  switch (metric.kind) {
    case MetricKind::PSNR:
      if (x < 0.0) out_of_range(metric, x, "[0, +inf)");
      return NormalizedScore(std::tanh(x / 20.0));
    case MetricKind::WER:
      if (x < 0.0 || x > 1.0) {
        warn(warnings, metric, fmt::format("WER {} clamped to [0, 1]", x));
      }
      return NormalizedScore(1.0 - std::clamp(x, 0.0, 1.0));
    case MetricKind::MSSSIM:
      if (x < -1.0 || x > 1.0) out_of_range(metric, x, "[-1, 1]");
      return NormalizedScore((x + 1.0) / 2.0);
    case MetricKind::MOS:
      if (x < 1.0 || x > 5.0) out_of_range(metric, x, "[1, 5]");
      return NormalizedScore((x - 1.0) / 4.0);
    case MetricKind::PercentIdentity:
      if (x < 0.0) out_of_range(metric, x, "[0, 100]");
      if (x > 100.0) {
        warn(warnings, metric, fmt::format("percentage {} clamped to 100", x));
      }
      return NormalizedScore(std::min(x, 100.0) / 100.0);
    case MetricKind::LinearRange: {
      const double lo = metric.range_min;
      const double hi = metric.range_max;
      if (!(hi > lo)) {
        throw Error(ErrorCode::InvalidMetricRange, metric.name(),
                    fmt::format("metric_max {} must exceed metric_min {}", hi, lo));
      }
      if (x < lo || x > hi) out_of_range(metric, x, fmt::format("[{}, {}]", lo, hi));
      const double t = (x - lo) / (hi - lo);
      return NormalizedScore(metric.linear_direction == Direction::HigherBetter ? t : 1.0 - t);
    }
    default:
      break;
  }
  throw Error(ErrorCode::UnknownMetricKind, metric.name(), "no normalization rule");
}

}  // namespace genlevel
