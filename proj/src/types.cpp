#include "genlevel/types.hpp"

#include <algorithm>
#include <cctype>

namespace genlevel {
namespace {

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

// Metrics reported natively on a 0-100 higher-better scale.
constexpr std::array<std::string_view, 14> kPercentAliases = {
    "PercentIdentity", "Acc", "Accuracy", "F1", "mIoU", "IoU", "BLEU", "ROUGE-L",
    "CIDEr", "Recall", "Precision", "mAP", "METEOR", "EM"};

}  // namespace

Direction MetricSpec::direction() const {
  switch (kind) {
    case MetricKind::PSNR:
    case MetricKind::MSSSIM:
    case MetricKind::MOS:
    case MetricKind::PercentIdentity:
      return Direction::HigherBetter;
    case MetricKind::LinearRange:
      return linear_direction;
    default:
      return Direction::LowerBetter;
  }
}

std::string MetricSpec::name() const {
  if (kind == MetricKind::LinearRange && linear_direction == Direction::LowerBetter) {
    return "LinearRangeLowerBetter";
  }
  return std::string(to_string(kind));
}

std::optional<MetricSpec> parse_metric(std::string_view name, double range_min,
                                       double range_max) {
  if (name == "LinearRange" || name == "LinearRangeLowerBetter") {
    MetricSpec spec{MetricKind::LinearRange, range_min, range_max, Direction::HigherBetter};
    if (name == "LinearRangeLowerBetter") spec.linear_direction = Direction::LowerBetter;
    return spec;
  }
  for (auto kind : kAllMetricKinds) {
    if (kind != MetricKind::LinearRange && name == to_string(kind)) {
      return MetricSpec{kind};
    }
  }
  for (auto alias : kPercentAliases) {
    if (iequals(name, alias)) return MetricSpec{MetricKind::PercentIdentity};
  }
  return std::nullopt;
}

std::string_view to_string(Modality m) {
  switch (m) {
    case Modality::Image: return "Image";
    case Modality::Video: return "Video";
    case Modality::Audio: return "Audio";
    case Modality::ThreeD: return "3D";
    case Modality::Language: return "Language";
  }
  return "?";
}

std::string_view to_string(Paradigm p) {
  switch (p) {
    case Paradigm::Comprehension: return "Comprehension";
    case Paradigm::Generation: return "Generation";
    case Paradigm::NLP: return "NLP";
  }
  return "?";
}

std::string_view to_string(MetricKind k) {
  switch (k) {
    case MetricKind::MAE: return "MAE";
    case MetricKind::RMS: return "RMS";
    case MetricKind::MSE: return "MSE";
    case MetricKind::RMSE: return "RMSE";
    case MetricKind::AbsRel: return "absRel";
    case MetricKind::EPE: return "EPE";
    case MetricKind::FID: return "FID";
    case MetricKind::FVD: return "FVD";
    case MetricKind::FAD: return "FAD";
    case MetricKind::PSNR: return "PSNR";
    case MetricKind::SAD: return "SAD";
    case MetricKind::RTE: return "RTE";
    case MetricKind::CD: return "CD";
    case MetricKind::MCD: return "MCD";
    case MetricKind::WER: return "WER";
    case MetricKind::MSSSIM: return "MS-SSIM";
    case MetricKind::MOS: return "MOS";
    case MetricKind::PercentIdentity: return "PercentIdentity";
    case MetricKind::LinearRange: return "LinearRange";
  }
  return "?";
}

std::optional<Modality> parse_modality(std::string_view text) {
  if (iequals(text, "Image")) return Modality::Image;
  if (iequals(text, "Video")) return Modality::Video;
  if (iequals(text, "Audio")) return Modality::Audio;
  if (iequals(text, "3D") || iequals(text, "ThreeD")) return Modality::ThreeD;
  if (iequals(text, "Language")) return Modality::Language;
  return std::nullopt;
}

std::optional<Paradigm> parse_paradigm(std::string_view text) {
  if (iequals(text, "Comprehension")) return Paradigm::Comprehension;
  if (iequals(text, "Generation")) return Paradigm::Generation;
  if (iequals(text, "NLP")) return Paradigm::NLP;
  return std::nullopt;
}

char skill_code(Modality m) {
  switch (m) {
    case Modality::Image: return 'I';
    case Modality::Video: return 'V';
    case Modality::Audio: return 'A';
    case Modality::ThreeD: return 'D';
    case Modality::Language: return 'L';
  }
  return '?';
}

}  // namespace genlevel
