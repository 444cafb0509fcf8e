#pragma once

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace genlevel {

enum class Modality { Image, Video, Audio, ThreeD, Language };

/// Canonical order used for every per-modality listing and export.
inline constexpr std::array<Modality, 4> kNonLanguageModalities = {
    Modality::Image, Modality::Video, Modality::Audio, Modality::ThreeD};

enum class Paradigm { Comprehension, Generation, NLP };

enum class Direction { HigherBetter, LowerBetter };

enum class MetricKind {
  MAE,
  RMS,
  MSE,
  RMSE,
  AbsRel,
  EPE,
  FID,
  FVD,
  FAD,
  PSNR,
  SAD,
  RTE,
  CD,
  MCD,
  WER,
  MSSSIM,
  MOS,
  PercentIdentity,
  LinearRange,
};

inline constexpr std::array<MetricKind, 19> kAllMetricKinds = {
    MetricKind::MAE,  MetricKind::RMS,  MetricKind::MSE,    MetricKind::RMSE,
    MetricKind::AbsRel, MetricKind::EPE, MetricKind::FID,   MetricKind::FVD,
    MetricKind::FAD,  MetricKind::PSNR, MetricKind::SAD,    MetricKind::RTE,
    MetricKind::CD,   MetricKind::MCD,  MetricKind::WER,    MetricKind::MSSSIM,
    MetricKind::MOS,  MetricKind::PercentIdentity, MetricKind::LinearRange};

/// A metric kind plus the bounds a LinearRange metric declares.
struct MetricSpec {
  MetricKind kind = MetricKind::PercentIdentity;
  double range_min = 0.0;
  double range_max = 0.0;
  Direction linear_direction = Direction::HigherBetter;

  Direction direction() const;
  bool operator==(const MetricSpec&) const = default;

  /// Registry spelling: "FID", "MS-SSIM", "LinearRange", "LinearRangeLowerBetter", ...
  std::string name() const;
};

/// Parses a registry metric name. Aliases of PercentIdentity (Acc, F1, mIoU,
/// BLEU, ...) are accepted. LinearRange needs its bounds supplied.
std::optional<MetricSpec> parse_metric(std::string_view name, double range_min = 0.0,
                                       double range_max = 0.0);

std::string_view to_string(Modality m);
std::string_view to_string(Paradigm p);
std::string_view to_string(MetricKind k);

std::optional<Modality> parse_modality(std::string_view text);
std::optional<Paradigm> parse_paradigm(std::string_view text);

/// Single-letter code used in skill ids ("I-C-17", "D-G-3", "L-2").
char skill_code(Modality m);

}  // namespace genlevel
