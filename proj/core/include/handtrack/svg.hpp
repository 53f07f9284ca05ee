#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "handtrack/trajectory.hpp"

namespace handtrack {

/// Fixed qualitative palette; trajectory i (in ascending identity order) gets
/// entry i % size.
inline constexpr std::array<std::string_view, 10> kTrajectoryPalette = {
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
    "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};

struct TrajectoryMapStyle {
  double stroke_width = 2.0;
  /// Optional raster (e.g. a representative frame) drawn underneath.
  std::optional<std::string> background_href;
  bool legend = true;
  std::string title = "Hand trajectories";
};

/// Renders one polyline per non-empty trajectory in frame coordinates as a
/// standalone SVG 1.1 document.
std::string render_trajectory_map(std::span<const Trajectory> trajs, double frame_w, double frame_h,
                                  const TrajectoryMapStyle& style = {});

}  // namespace handtrack
