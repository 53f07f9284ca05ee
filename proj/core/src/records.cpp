#include "handtrack/records.hpp"

#include <stdexcept>

namespace handtrack {

std::string_view to_code(Handedness side) noexcept {
  switch (side) {
    case Handedness::Left:
      return "L";
    case Handedness::Right:
      return "R";
    case Handedness::Unknown:
      break;
  }
  return "U";
}

Handedness handedness_from_code(std::string_view code) {
  if (code == "L") return Handedness::Left;
  if (code == "R") return Handedness::Right;
  if (code == "U") return Handedness::Unknown;
  throw std::invalid_argument("unknown hand side '" + std::string(code) + "' (expected L, R or U)");
}

std::string_view to_code(Provenance p) noexcept {
  return p == Provenance::Detected ? "det" : "pred";
}

Provenance provenance_from_code(std::string_view code) {
  if (code == "det") return Provenance::Detected;
  if (code == "pred") return Provenance::Predicted;
  throw std::invalid_argument("unknown provenance '" + std::string(code) +
                              "' (expected det or pred)");
}

std::string_view to_code(SurgeryCategory c) noexcept {
  switch (c) {
    case SurgeryCategory::Breast:
      return "breast";
    case SurgeryCategory::Gastrointestinal:
      return "gastrointestinal";
    case SurgeryCategory::HeadAndNeck:
      break;
  }
  return "head_and_neck";
}

SurgeryCategory category_from_code(std::string_view code) {
  if (code == "breast") return SurgeryCategory::Breast;
  if (code == "gastrointestinal") return SurgeryCategory::Gastrointestinal;
  if (code == "head_and_neck") return SurgeryCategory::HeadAndNeck;
  throw std::invalid_argument("unknown surgery category '" + std::string(code) + "'");
}

void VideoManifest::validate() const {
  if (video_id.empty()) {
    throw std::invalid_argument("manifest: video_id must not be empty");
  }
  if (!(duration_s > 0.0) || !(native_fps > 0.0) || width <= 0 || height <= 0) {
    throw std::invalid_argument("manifest '" + video_id +
                                "': duration, fps and resolution must be positive");
  }
}

}  // namespace handtrack
