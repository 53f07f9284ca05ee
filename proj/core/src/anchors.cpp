#include "handtrack/anchors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace handtrack {
namespace {

void require_positive(const std::vector<double>& values, const char* name) {
  if (values.empty()) {
    throw std::invalid_argument(std::string("anchor config: ") + name + " must not be empty");
  }
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument(std::string("anchor config: ") + name +
                                  " entries must be positive");
    }
  }
}

void validate(const AnchorConfig& config, double image_w, double image_h) {
  require_positive(config.strides, "strides");
  require_positive(config.scales, "scales");
  require_positive(config.ratios, "ratios");
  if (!(config.base_size > 0.0)) {
    throw std::invalid_argument("anchor config: base_size must be positive");
  }
  if (!(image_w > 0.0) || !(image_h > 0.0)) {
    throw std::invalid_argument("anchor generation: image dimensions must be positive");
  }
}

std::size_t cells(double extent, double stride) {
  return static_cast<std::size_t>(std::ceil(extent / stride));
}

}  // namespace

std::size_t AnchorAssignment::positive_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(labels.begin(), labels.end(), [](const AnchorLabel& l) { return l.positive(); }));
}

std::size_t expected_anchor_count(const AnchorConfig& config, double image_w, double image_h) {
  validate(config, image_w, image_h);
  std::size_t total = 0;
  for (double stride : config.strides) {
    total += cells(image_w, stride) * cells(image_h, stride) * config.scales.size() *
             config.ratios.size();
  }
  return total;
}

std::vector<BoundingBox> generate_anchors(const AnchorConfig& config, double image_w,
                                          double image_h) {
  std::vector<BoundingBox> anchors;
  anchors.reserve(expected_anchor_count(config, image_w, image_h));

  const double reference_stride = config.strides.front();
  for (double stride : config.strides) {
    const double level_size = config.base_size * stride / reference_stride;
    const std::size_t cols = cells(image_w, stride);
    const std::size_t rows = cells(image_h, stride);
    for (std::size_t row = 0; row < rows; ++row) {
      const double cy = (static_cast<double>(row) + 0.5) * stride;
      for (std::size_t col = 0; col < cols; ++col) {
        const double cx = (static_cast<double>(col) + 0.5) * stride;
        for (double scale : config.scales) {
          const double side = level_size * scale;
          for (double ratio : config.ratios) {
            const double root = std::sqrt(ratio);
            const double half_w = side * root / 2.0;
            const double half_h = side / root / 2.0;
            anchors.push_back({cx - half_w, cy - half_h, cx + half_w, cy + half_h});
          }
        }
      }
    }
  }
  return anchors;
}

AnchorAssignment assign_anchors(std::span<const BoundingBox> anchors,
                                std::span<const BoundingBox> gts) {
  AnchorAssignment out;
  out.labels.reserve(anchors.size());
  for (const BoundingBox& anchor : anchors) {
    AnchorLabel label;
    std::optional<std::size_t> best;
    for (std::size_t g = 0; g < gts.size(); ++g) {
      const double overlap = iou(anchor, gts[g]);
      if (!best || overlap > label.iou) {
        best = g;
        label.iou = overlap;
      }
    }
    if (best && label.iou >= kAnchorPositiveIou) {
      label.gt_index = best;
    }
    out.labels.push_back(label);
  }
  return out;
}

}  // namespace handtrack
