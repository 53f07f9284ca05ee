#include "handtrack/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace handtrack {

std::vector<Trajectory> extract_trajectories(std::span<const TrackedBox> tracks) {
  std::map<int, std::vector<TrajectoryPoint>> grouped;
  for (const TrackedBox& t : tracks) {
    const Point2 c = center(t.box);
    grouped[t.identity].push_back({t.frame_index, c.x, c.y});
  }

  std::vector<Trajectory> out;
  out.reserve(grouped.size());
  for (auto& [identity, points] : grouped) {
    std::stable_sort(points.begin(), points.end(),
                     [](const auto& a, const auto& b) { return a.frame < b.frame; });
    for (std::size_t i = 1; i < points.size(); ++i) {
      if (points[i].frame == points[i - 1].frame) {
        throw std::invalid_argument("identity " + std::to_string(identity) +
                                    " has two boxes on frame " + std::to_string(points[i].frame));
      }
    }
    out.push_back({identity, std::move(points)});
  }
  return out;
}

MotionReport motion_metrics(const Trajectory& traj, std::optional<double> fps) {
  if (traj.points.empty()) {
    throw std::invalid_argument("motion_metrics: trajectory " + std::to_string(traj.identity) +
                                " has no points");
  }
  if (fps && !(*fps > 0.0)) {
    throw std::invalid_argument("motion_metrics: fps must be positive");
  }
  const auto& pts = traj.points;

  MotionReport report;
  report.identity = traj.identity;
  report.frames_observed = pts.size();

  for (std::size_t i = 1; i < pts.size(); ++i) {
    const std::int64_t gap = pts[i].frame - pts[i - 1].frame;
    if (gap <= 0) {
      throw std::invalid_argument("motion_metrics: frame indices must be strictly increasing");
    }
    const double step = std::hypot(pts[i].x - pts[i - 1].x, pts[i].y - pts[i - 1].y);
    report.path_length += step;
    report.max_speed = std::max(report.max_speed, step / static_cast<double>(gap));
    if (gap > 1) ++report.gap_count;
  }

  report.net_displacement =
      std::hypot(pts.back().x - pts.front().x, pts.back().y - pts.front().y);
  report.path_efficiency =
      report.path_length > 0.0 ? std::min(1.0, report.net_displacement / report.path_length) : 1.0;

  const std::int64_t span = pts.back().frame - pts.front().frame;
  report.mean_speed = span > 0 ? report.path_length / static_cast<double>(span) : 0.0;

  if (fps) {
    report.mean_speed_px_s = report.mean_speed * *fps;
    report.max_speed_px_s = report.max_speed * *fps;
  }
  return report;
}

}  // namespace handtrack
