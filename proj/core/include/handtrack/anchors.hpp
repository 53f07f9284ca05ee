#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "handtrack/geometry.hpp"

namespace handtrack {

/// Anchor tiling parameters. The anchor side on level i is
/// base_size * (strides[i] / strides[0]) * scale, reshaped by ratio = w / h.
struct AnchorConfig {
  std::vector<double> strides{8.0};
  std::vector<double> scales{1.0};
  std::vector<double> ratios{1.0};
  double base_size = 8.0;
};

/// IoU at or above this value labels an anchor positive; below it is background.
inline constexpr double kAnchorPositiveIou = 0.5;

struct AnchorLabel {
  std::optional<std::size_t> gt_index;  ///< set for Positive, empty for Background
  double iou = 0.0;                     ///< best IoU against any ground truth

  bool positive() const noexcept { return gt_index.has_value(); }
};

struct AnchorAssignment {
  std::vector<AnchorLabel> labels;

  std::size_t positive_count() const noexcept;
  std::size_t background_count() const noexcept { return labels.size() - positive_count(); }
};

/// Regular grid of anchors, centers at (i + 0.5) * stride. Anchors are not
/// clipped to the image. Order: level, row, column, scale, ratio.
std::vector<BoundingBox> generate_anchors(const AnchorConfig& config, double image_w,
                                          double image_h);

std::size_t expected_anchor_count(const AnchorConfig& config, double image_w, double image_h);

/// Labels every anchor Positive(best gt) when its best IoU >= 0.5, Background
/// otherwise. Ties between ground truths go to the lower index.
AnchorAssignment assign_anchors(std::span<const BoundingBox> anchors,
                                std::span<const BoundingBox> gts);

}  // namespace handtrack
