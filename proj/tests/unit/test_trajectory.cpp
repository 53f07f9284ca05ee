#include <gtest/gtest.h>

#include <cmath>

#include "handtrack/trajectory.hpp"
#include "oracles.hpp"

namespace handtrack {
namespace {

Trajectory path(std::initializer_list<TrajectoryPoint> pts, int identity = 0) {
  return {identity, pts};
}

TrackedBox tracked(std::int64_t frame, int identity, double cx, double cy) {
  return {frame, identity, {cx - 5, cy - 5, cx + 5, cy + 5}, Provenance::Detected, 1.0};
}

TEST(ExtractTrajectories, StaticBoxGivesIdenticalPoints) {
  std::vector<TrackedBox> boxes;
  for (int f = 0; f < 10; ++f) boxes.push_back(tracked(f, 3, 20, 30));
  const auto trajs = extract_trajectories(boxes);
  ASSERT_EQ(trajs.size(), 1u);
  EXPECT_EQ(trajs[0].identity, 3);
  ASSERT_EQ(trajs[0].points.size(), 10u);
  for (const auto& p : trajs[0].points) {
    EXPECT_EQ(p.x, 20.0);
    EXPECT_EQ(p.y, 30.0);
  }
}

TEST(ExtractTrajectories, PartitionsByIdentityAndSortsFrames) {
  const std::vector<TrackedBox> boxes = {tracked(2, 1, 0, 0), tracked(0, 0, 5, 5),
                                         tracked(0, 1, 1, 1), tracked(1, 0, 6, 6)};
  const auto trajs = extract_trajectories(boxes);
  ASSERT_EQ(trajs.size(), 2u);
  EXPECT_EQ(trajs[0].identity, 0);
  EXPECT_EQ(trajs[1].identity, 1);
  EXPECT_EQ(trajs[0].points.size() + trajs[1].points.size(), boxes.size());
  EXPECT_EQ(trajs[1].points[0].frame, 0);
  EXPECT_EQ(trajs[1].points[1].frame, 2);
}

TEST(ExtractTrajectories, DuplicateFrameThrows) {
  const std::vector<TrackedBox> boxes = {tracked(0, 0, 0, 0), tracked(0, 0, 1, 1)};
  EXPECT_THROW(extract_trajectories(boxes), std::invalid_argument);
}

TEST(MotionMetrics, StaticPoint) {
  const auto r = motion_metrics(path({{0, 4, 4}, {1, 4, 4}}));
  EXPECT_EQ(r.path_length, 0.0);
  EXPECT_EQ(r.path_efficiency, 1.0);
  EXPECT_EQ(r.frames_observed, 2u);
}

TEST(MotionMetrics, ThreeFourFive) {
  const auto r = motion_metrics(path({{0, 0, 0}, {1, 3, 4}}));
  EXPECT_EQ(r.path_length, 5.0);
  EXPECT_EQ(r.net_displacement, 5.0);
  EXPECT_EQ(r.path_efficiency, 1.0);
  EXPECT_EQ(r.max_speed, 5.0);
}

TEST(MotionMetrics, LShape) {
  const auto r = motion_metrics(path({{0, 0, 0}, {1, 3, 0}, {2, 3, 4}}), 15.0);
  EXPECT_EQ(r.path_length, 7.0);
  EXPECT_EQ(r.net_displacement, 5.0);
  EXPECT_EQ(r.path_efficiency, 5.0 / 7.0);
  EXPECT_EQ(r.mean_speed, 3.5);
  EXPECT_EQ(r.max_speed, 4.0);
  EXPECT_EQ(r.mean_speed_px_s, 52.5);
  EXPECT_EQ(r.max_speed_px_s, 60.0);
  EXPECT_EQ(r.gap_count, 0u);
}

TEST(MotionMetrics, GapIsOneSegment) {
  const auto r = motion_metrics(path({{0, 0, 0}, {4, 8, 0}}));
  EXPECT_EQ(r.path_length, 8.0);
  EXPECT_EQ(r.max_speed, 2.0);
  EXPECT_EQ(r.gap_count, 1u);
}

TEST(MotionMetrics, Errors) {
  EXPECT_THROW(motion_metrics(Trajectory{}), std::invalid_argument);
  EXPECT_THROW(motion_metrics(path({{0, 0, 0}}), 0.0), std::invalid_argument);
}

TEST(MotionMetrics, InvariantsOnRandomTrajectories) {
  testing::Rng rng(500);
  for (int trial = 0; trial < 500; ++trial) {
    Trajectory t;
    std::int64_t frame = 0;
    const int n = rng.integer(1, 30);
    for (int i = 0; i < n; ++i) {
      t.points.push_back({frame, rng.uniform(-500, 500), rng.uniform(-500, 500)});
      frame += rng.integer(1, 3);
    }
    const auto r = motion_metrics(t);
    ASSERT_GE(r.path_length + 1e-9, r.net_displacement);
    ASSERT_GE(r.path_efficiency, 0.0);
    ASSERT_LE(r.path_efficiency, 1.0 + 1e-12);

    // Rigid motion and scaling.
    const double theta = rng.uniform(0, 6.283185307179586);
    const double dx = rng.uniform(-100, 100), dy = rng.uniform(-100, 100);
    Trajectory moved = t, scaled = t;
    for (std::size_t i = 0; i < t.points.size(); ++i) {
      const auto& p = t.points[i];
      moved.points[i].x = std::cos(theta) * p.x - std::sin(theta) * p.y + dx;
      moved.points[i].y = std::sin(theta) * p.x + std::cos(theta) * p.y + dy;
      scaled.points[i].x = 3 * p.x;
      scaled.points[i].y = 3 * p.y;
    }
    const auto rm = motion_metrics(moved);
    EXPECT_NEAR(rm.path_length, r.path_length, 1e-7);
    EXPECT_NEAR(rm.net_displacement, r.net_displacement, 1e-7);
    EXPECT_NEAR(motion_metrics(scaled).path_length, 3 * r.path_length, 1e-7);
  }
}

}  // namespace
}  // namespace handtrack
