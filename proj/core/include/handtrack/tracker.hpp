#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "handtrack/geometry.hpp"
#include "handtrack/kalman.hpp"
#include "handtrack/records.hpp"

namespace handtrack {

struct TrackerConfig {
  double iou_min = 0.3;   ///< association gate, in (0, 1)
  int max_age = 3;        ///< unmatched frames tolerated before a track goes dormant
  int min_hits = 1;       ///< consecutive matches before a track is reported
  /// Queue exited identities and hand them back first-out, first-in on
  /// re-entry. When false, exited tracks are deleted as in baseline SORT.
  bool reuse_identities = true;
  KalmanNoise noise;

  void validate() const;
};

struct TrackedBox {
  std::int64_t frame_index = 0;
  int identity = 0;
  BoundingBox box;
  Provenance provenance = Provenance::Detected;
  /// Score of the matched detection, or of the last one for predicted boxes.
  double score = 1.0;

  friend bool operator==(const TrackedBox&, const TrackedBox&) = default;
};

struct AssociationResult {
  std::vector<std::pair<std::size_t, std::size_t>> matches;  ///< (track index, detection index)
  std::vector<std::size_t> unmatched_tracks;
  std::vector<std::size_t> unmatched_detections;
};

/// Hungarian assignment on 1 - IoU; matched pairs below iou_min are split
/// back into the unmatched sets. The three outputs partition the inputs.
AssociationResult associate(std::span<const BoundingBox> predicted,
                            std::span<const BoundingBox> detections, double iou_min);

class TrackerError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// SORT-style tracker over one video. Not thread-safe; run one instance per
/// sequence.
class Tracker {
 public:
  explicit Tracker(TrackerConfig config = {});

  /// Advances to `frame` (strictly greater than the previous call) and returns
  /// the reported boxes ordered by identity. Zero-area detections are ignored.
  std::vector<TrackedBox> step(std::int64_t frame, std::span<const ScoredBox> detections);
  std::vector<TrackedBox> step(std::int64_t frame, std::span<const BoundingBox> detections);

  const TrackerConfig& config() const noexcept { return config_; }

  /// All tracks, including dormant ones kept for identity reuse.
  std::vector<TrackState> tracks() const;
  std::size_t live_track_count() const noexcept;
  /// Identities in the order they will be handed out.
  const std::deque<int>& dormant_queue() const noexcept { return dormant_; }
  int identities_minted() const noexcept { return next_identity_; }

 private:
  struct Track {
    TrackState state;
    BoundingBox predicted;
    BoundingBox matched;
    double last_score = 1.0;
  };

  void spawn(const ScoredBox& det);

  TrackerConfig config_;
  std::vector<Track> tracks_;
  std::deque<int> dormant_;
  int next_identity_ = 0;
  std::optional<std::int64_t> last_frame_;
};

}  // namespace handtrack
