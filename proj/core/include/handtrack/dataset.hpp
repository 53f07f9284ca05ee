#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "handtrack/records.hpp"

namespace handtrack {

inline constexpr double kWorkingFps = 15.0;
inline constexpr double kMaxWindowSeconds = 20.0 * 60.0;
inline constexpr int kFramesPerVideo = 10;

struct SamplingOptions {
  double working_fps = kWorkingFps;
  double max_window_s = kMaxWindowSeconds;
  int frames = kFramesPerVideo;
};

/// Frames picked from one video, indexed on the working-fps timeline.
struct SamplingPlan {
  std::string video_id;
  double working_fps = kWorkingFps;
  double window_start_s = 0.0;
  double window_end_s = 0.0;
  std::vector<std::int64_t> frames;
};

/// Window is the whole video when it fits in max_window_s, otherwise the
/// centered max_window_s interval. Frames sit at the centers of `frames`
/// equal sub-intervals of the window. Throws when the window holds fewer
/// frames than requested.
SamplingPlan compute_sampling_plan(const VideoManifest& m, const SamplingOptions& opts = {});

enum class Subset : std::size_t { Train = 0, Validation = 1, Test = 2 };
inline constexpr std::array<std::string_view, 3> kSubsetNames = {"train", "val", "test"};

struct SplitTargets {
  std::array<std::int64_t, 3> frames{940, 380, 560};
};

struct DatasetSplit {
  std::uint64_t seed = 0;
  int frames_per_video = kFramesPerVideo;
  /// Video ids per subset, sorted.
  std::array<std::vector<std::string>, 3> videos;
  /// category_videos[category][subset]
  std::array<std::array<std::int64_t, 3>, 3> category_videos{};

  std::int64_t frame_count(Subset s) const {
    return static_cast<std::int64_t>(videos[static_cast<std::size_t>(s)].size()) * frames_per_video;
  }
};

class InfeasibleSplitError : public std::invalid_argument {
 public:
  InfeasibleSplitError(const std::string& reason, std::array<std::int64_t, 3> nearest);
  /// Closest frame allocation reachable at video granularity.
  const std::array<std::int64_t, 3>& nearest() const noexcept { return nearest_; }

 private:
  std::array<std::int64_t, 3> nearest_;
};

/// Partitions whole videos into train / val / test so that subset sizes match
/// the frame targets exactly and every surgical category follows the global
/// ratio to within one video. Deterministic for a seed and independent of the
/// input order.
DatasetSplit split_dataset(std::span<const VideoManifest> manifests,
                           int frames_per_video = kFramesPerVideo, const SplitTargets& targets = {},
                           std::uint64_t seed = 0);

void write_sampling_plans(std::ostream& out, std::span<const SamplingPlan> plans);
void write_split(std::ostream& out, const DatasetSplit& split);

}  // namespace handtrack
