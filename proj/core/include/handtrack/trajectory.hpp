#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "handtrack/tracker.hpp"

namespace handtrack {

struct TrajectoryPoint {
  std::int64_t frame = 0;
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const TrajectoryPoint&, const TrajectoryPoint&) = default;
};

/// Epicenters of one identity's boxes, frame indices strictly increasing.
/// Frame jumps greater than one mark periods where the track was dormant.
struct Trajectory {
  int identity = 0;
  std::vector<TrajectoryPoint> points;
};

struct MotionReport {
  int identity = 0;
  double path_length = 0.0;       ///< px
  double net_displacement = 0.0;  ///< px, first to last point
  double path_efficiency = 1.0;   ///< displacement / path length, 1 for a static point
  double mean_speed = 0.0;        ///< px / frame over the observed frame span
  double max_speed = 0.0;         ///< px / frame, largest segment speed
  std::size_t frames_observed = 0;
  std::size_t gap_count = 0;      ///< segments spanning more than one frame
  /// px / s equivalents, present when the frame rate is known.
  std::optional<double> mean_speed_px_s;
  std::optional<double> max_speed_px_s;
};

/// Groups by identity (ascending), sorts by frame and maps each box to its
/// center. Duplicate (identity, frame) pairs throw.
std::vector<Trajectory> extract_trajectories(std::span<const TrackedBox> tracks);

/// Path metrics for one trajectory. A gap contributes one straight segment.
MotionReport motion_metrics(const Trajectory& traj, std::optional<double> fps = std::nullopt);

}  // namespace handtrack
