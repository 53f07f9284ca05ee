#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "handtrack/geometry.hpp"

namespace handtrack {

/// A box with detector confidence in [0, 1]. Unscored inputs use 1.0.
struct ScoredBox {
  BoundingBox box;
  double score = 1.0;

  friend bool operator==(const ScoredBox&, const ScoredBox&) = default;
};

struct Detection {
  std::string video_id;
  std::int64_t frame = 0;
  BoundingBox box;
  double score = 1.0;

  ScoredBox scored() const { return {box, score}; }

  friend bool operator==(const Detection&, const Detection&) = default;
};

enum class Handedness { Left, Right, Unknown };

std::string_view to_code(Handedness side) noexcept;  // "L" | "R" | "U"
Handedness handedness_from_code(std::string_view code);

struct HandBox {
  BoundingBox box;
  Handedness side = Handedness::Unknown;

  friend bool operator==(const HandBox&, const HandBox&) = default;
};

/// Ground truth for one frame: zero or more hands plus the revision counter
/// maintained by the annotation store.
struct FrameAnnotation {
  std::string video_id;
  std::int64_t frame = 0;
  std::vector<HandBox> hands;
  std::string annotator;
  std::int64_t rev = 0;

  friend bool operator==(const FrameAnnotation&, const FrameAnnotation&) = default;
};

enum class Provenance { Detected, Predicted };

std::string_view to_code(Provenance p) noexcept;  // "det" | "pred"
Provenance provenance_from_code(std::string_view code);

/// One reported box of one identity on one frame.
struct TrackRecord {
  std::string video_id;
  std::int64_t frame = 0;
  BoundingBox box;
  double score = 1.0;
  int identity = 0;
  Provenance provenance = Provenance::Detected;

  friend bool operator==(const TrackRecord&, const TrackRecord&) = default;
};

enum class SurgeryCategory { Breast, Gastrointestinal, HeadAndNeck };

inline constexpr SurgeryCategory kAllCategories[] = {
    SurgeryCategory::Breast, SurgeryCategory::Gastrointestinal, SurgeryCategory::HeadAndNeck};

std::string_view to_code(SurgeryCategory c) noexcept;
SurgeryCategory category_from_code(std::string_view code);

struct VideoManifest {
  std::string video_id;
  SurgeryCategory category = SurgeryCategory::Breast;
  double duration_s = 0.0;
  double native_fps = 0.0;
  int width = 0;
  int height = 0;

  void validate() const;

  friend bool operator==(const VideoManifest&, const VideoManifest&) = default;
};

}  // namespace handtrack
