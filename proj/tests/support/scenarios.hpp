#pragma once

// Scripted synthetic videos with ground-truth identities.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "handtrack/records.hpp"
#include "handtrack/tracker.hpp"

namespace handtrack::testing {

struct ScriptedBox {
  int target = 0;  ///< ground-truth identity
  BoundingBox box;
};

struct ScriptedFrame {
  std::int64_t frame = 0;
  std::vector<ScriptedBox> truth;     ///< where every target really is
  std::vector<ScriptedBox> observed;  ///< what the detector reports
};

struct Scenario {
  std::string video_id;
  std::vector<ScriptedFrame> frames;  ///< dense, consecutive
};

std::vector<Detection> to_detections(const Scenario& s);
std::vector<std::vector<BoundingBox>> observed_boxes(const Scenario& s);

/// Four well-separated targets on piecewise-linear paths, 120 frames, with
/// ~10% of detections dropped uniformly at random but no run of drops longer
/// than max_gap per target.
Scenario four_target_scenario(std::uint64_t seed, int max_gap, double drop_rate = 0.1);

/// Target 0 is visible throughout; target 1 leaves at frame 30 and is absent
/// for `absence` frames before re-entering.
Scenario exit_reentry_scenario(int absence, int frames = 90);

/// Two boxes moving toward each other on nearby rows, passing through each
/// other and swapping horizontal order.
Scenario crossing_scenario();

/// Single target moving linearly over `frames` frames.
Scenario linear_scenario(int frames = 60, double vx = 4.0, double vy = 2.0);

/// Single-target linear motion with every 5th frame's box deleted (never
/// frame 0) and five far-away single-frame spurious boxes.
struct SmoothingFixture {
  std::vector<std::vector<ScoredBox>> input;
  std::vector<BoundingBox> truth;  ///< true box per frame
  std::vector<std::size_t> deleted_frames;
  std::vector<std::pair<std::size_t, BoundingBox>> spurious;
};

SmoothingFixture smoothing_fixture(int frames = 50);

/// Scripted videos behind the checked-in fixture corpus, in file order
/// (deliberately not sorted by id).
std::vector<Scenario> fixture_scenarios();

/// Detections of fixture_scenarios() with varied scores.
std::vector<Detection> fixture_corpus();

/// Per-frame ground truth of fixture_scenarios(), one record per frame.
std::vector<FrameAnnotation> fixture_ground_truth();

struct SwitchStats {
  int switches = 0;
  int missed = 0;  ///< observed ground-truth boxes with no tracked box at IoU >= 0.5
};

/// Identity switches: per ground-truth target, the number of times the
/// tracker identity covering it changes between consecutive coverages.
SwitchStats count_identity_switches(const Scenario& s,
                                    const std::map<std::int64_t, std::vector<TrackedBox>>& output);

std::map<std::int64_t, std::vector<TrackedBox>> run_tracker(const Scenario& s,
                                                            const TrackerConfig& config);

}  // namespace handtrack::testing
