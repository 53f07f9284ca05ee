#include "handtrack/tracker.hpp"

#include <algorithm>
#include <cmath>

#include "handtrack/hungarian.hpp"

namespace handtrack {

void TrackerConfig::validate() const {
  if (!(iou_min > 0.0 && iou_min < 1.0)) {
    throw std::invalid_argument("tracker: iou_min must lie in (0, 1)");
  }
  if (max_age < 1) {
    throw std::invalid_argument("tracker: max_age must be >= 1");
  }
  if (min_hits < 1) {
    throw std::invalid_argument("tracker: min_hits must be >= 1");
  }
  if (!(noise.scale_floor > 0.0)) {
    throw std::invalid_argument("tracker: scale floor must be positive");
  }
}

AssociationResult associate(std::span<const BoundingBox> predicted,
                            std::span<const BoundingBox> detections, double iou_min) {
  if (!(iou_min > 0.0 && iou_min < 1.0)) {
    throw std::invalid_argument("associate: iou_min must lie in (0, 1)");
  }
  AssociationResult out;
  CostMatrix cost(predicted.size(), detections.size());
  for (std::size_t t = 0; t < predicted.size(); ++t) {
    for (std::size_t d = 0; d < detections.size(); ++d) {
      cost(t, d) = 1.0 - iou(predicted[t], detections[d]);
    }
  }

  std::vector<bool> track_used(predicted.size(), false);
  std::vector<bool> det_used(detections.size(), false);
  for (const auto& [t, d] : hungarian(cost)) {
    if (iou(predicted[t], detections[d]) < iou_min) continue;
    out.matches.emplace_back(t, d);
    track_used[t] = true;
    det_used[d] = true;
  }
  for (std::size_t t = 0; t < predicted.size(); ++t) {
    if (!track_used[t]) out.unmatched_tracks.push_back(t);
  }
  for (std::size_t d = 0; d < detections.size(); ++d) {
    if (!det_used[d]) out.unmatched_detections.push_back(d);
  }
  return out;
}

Tracker::Tracker(TrackerConfig config) : config_(std::move(config)) { config_.validate(); }

std::vector<TrackState> Tracker::tracks() const {
  std::vector<TrackState> out;
  out.reserve(tracks_.size());
  for (const auto& t : tracks_) out.push_back(t.state);
  return out;
}

std::size_t Tracker::live_track_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(tracks_.begin(), tracks_.end(), [](const Track& t) {
    return t.state.status != TrackStatus::Dormant;
  }));
}

void Tracker::spawn(const ScoredBox& det) {
  if (config_.reuse_identities && !dormant_.empty()) {
    const int identity = dormant_.front();
    dormant_.pop_front();
    auto it = std::find_if(tracks_.begin(), tracks_.end(),
                           [&](const Track& t) { return t.state.identity == identity; });
    it->state = kf_init(to_csr(det.box), identity, config_.noise);
    it->predicted = det.box;
    it->matched = det.box;
    it->last_score = det.score;
    return;
  }
  Track track;
  track.state = kf_init(to_csr(det.box), next_identity_++, config_.noise);
  track.predicted = det.box;
  track.matched = det.box;
  track.last_score = det.score;
  tracks_.push_back(track);
}

std::vector<TrackedBox> Tracker::step(std::int64_t frame, std::span<const BoundingBox> detections) {
  std::vector<ScoredBox> scored;
  scored.reserve(detections.size());
  for (const auto& b : detections) scored.push_back({b, 1.0});
  return step(frame, scored);
}

std::vector<TrackedBox> Tracker::step(std::int64_t frame, std::span<const ScoredBox> detections) {
  if (last_frame_ && frame <= *last_frame_) {
    throw TrackerError("tracker: frame " + std::to_string(frame) +
                       " does not follow frame " + std::to_string(*last_frame_));
  }
  last_frame_ = frame;

  std::vector<ScoredBox> measurable;
  measurable.reserve(detections.size());
  for (const auto& det : detections) {
    require_valid(det.box);
    if (det.box.width() > 0.0 && det.box.height() > 0.0) measurable.push_back(det);
  }

  // (a) propagate live tracks
  std::vector<std::size_t> live;
  std::vector<BoundingBox> predicted;
  for (std::size_t i = 0; i < tracks_.size(); ++i) {
    Track& track = tracks_[i];
    if (track.state.status == TrackStatus::Dormant) continue;
    Prediction p = kf_predict(track.state, config_.noise);
    track.state = std::move(p.state);
    track.predicted = from_csr(p.predicted);
    live.push_back(i);
    predicted.push_back(track.predicted);
  }

  // (b) associate
  std::vector<BoundingBox> det_boxes;
  det_boxes.reserve(measurable.size());
  for (const auto& det : measurable) det_boxes.push_back(det.box);
  const AssociationResult assoc = associate(predicted, det_boxes, config_.iou_min);

  // (c) correct matched tracks
  for (const auto& [t, d] : assoc.matches) {
    Track& track = tracks_[live[t]];
    track.state = kf_update(track.state, to_csr(measurable[d].box), config_.noise);
    track.matched = measurable[d].box;
    track.last_score = measurable[d].score;
  }

  // (d) age unmatched tracks
  std::vector<std::size_t> expired;
  for (std::size_t t : assoc.unmatched_tracks) {
    Track& track = tracks_[live[t]];
    track.state.misses += 1;
    track.state.hits = 0;
    if (track.state.misses > config_.max_age) {
      expired.push_back(live[t]);
    }
  }
  for (std::size_t idx : expired) {
    if (config_.reuse_identities) {
      tracks_[idx].state.status = TrackStatus::Dormant;
      dormant_.push_back(tracks_[idx].state.identity);
    }
  }
  if (!config_.reuse_identities && !expired.empty()) {
    std::vector<Track> kept;
    kept.reserve(tracks_.size() - expired.size());
    for (std::size_t i = 0; i < tracks_.size(); ++i) {
      if (std::find(expired.begin(), expired.end(), i) == expired.end()) kept.push_back(tracks_[i]);
    }
    tracks_ = std::move(kept);
  }

  // (e) new or re-entering identities
  for (std::size_t d : assoc.unmatched_detections) {
    spawn(measurable[d]);
  }

  // (f) report
  std::vector<TrackedBox> out;
  for (Track& track : tracks_) {
    TrackState& s = track.state;
    if (s.status == TrackStatus::Dormant) continue;
    if (s.status == TrackStatus::Tentative && s.hits >= config_.min_hits) {
      s.status = TrackStatus::Active;
    }
    if (s.status != TrackStatus::Active) continue;
    if (s.misses == 0) {
      out.push_back({frame, s.identity, track.matched, Provenance::Detected, track.last_score});
    } else {
      out.push_back({frame, s.identity, track.predicted, Provenance::Predicted, track.last_score});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const TrackedBox& a, const TrackedBox& b) { return a.identity < b.identity; });
  return out;
}

}  // namespace handtrack
