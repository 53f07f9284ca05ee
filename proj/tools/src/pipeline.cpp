#include "handtrack_app/pipeline.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <tuple>

#include <json.hpp>

#include "handtrack/trajectory.hpp"

namespace handtrack::app {
namespace {

struct VideoFrames {
  std::int64_t first = 0;
  std::vector<FrameBoxes> frames;  // dense, index = frame - first
};

std::map<std::string, VideoFrames> group_by_video(std::span<const Detection> detections) {
  std::map<std::string, std::pair<std::int64_t, std::int64_t>> ranges;
  for (const Detection& d : detections) {
    auto [it, inserted] = ranges.try_emplace(d.video_id, d.frame, d.frame);
    if (!inserted) {
      it->second.first = std::min(it->second.first, d.frame);
      it->second.second = std::max(it->second.second, d.frame);
    }
  }
  std::map<std::string, VideoFrames> grouped;
  for (const auto& [video, range] : ranges) {
    VideoFrames& vf = grouped[video];
    vf.first = range.first;
    vf.frames.resize(static_cast<std::size_t>(range.second - range.first + 1));
  }
  for (const Detection& d : detections) {
    VideoFrames& vf = grouped.at(d.video_id);
    vf.frames[static_cast<std::size_t>(d.frame - vf.first)].push_back(d.scored());
  }
  return grouped;
}

std::vector<TrackRecord> track_video(const std::string& video, const VideoFrames& vf,
                                     const PipelineConfig& config) {
  const std::vector<FrameBoxes> frames =
      config.smoothing.enabled ? run_smoothing(vf.frames, config.smoothing.iou_link) : vf.frames;

  Tracker tracker(config.tracker);
  std::vector<TrackRecord> out;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const std::int64_t frame = vf.first + static_cast<std::int64_t>(i);
    for (const TrackedBox& t : tracker.step(frame, frames[i])) {
      out.push_back({video, t.frame_index, t.box, t.score, t.identity, t.provenance});
    }
  }
  return out;
}

}  // namespace

std::vector<Detection> smooth_detections(std::span<const Detection> detections, double iou_link) {
  std::vector<Detection> out;
  for (const auto& [video, vf] : group_by_video(detections)) {
    const auto smoothed = run_smoothing(vf.frames, iou_link);
    for (std::size_t i = 0; i < smoothed.size(); ++i) {
      for (const ScoredBox& b : smoothed[i]) {
        out.push_back({video, vf.first + static_cast<std::int64_t>(i), b.box, b.score});
      }
    }
  }
  return out;
}

std::vector<TrackRecord> track_detections(std::span<const Detection> detections,
                                          const PipelineConfig& config) {
  config.tracker.validate();
  const auto grouped = group_by_video(detections);

  std::vector<std::future<std::vector<TrackRecord>>> jobs;
  jobs.reserve(grouped.size());
  for (const auto& [video, vf] : grouped) {
    jobs.push_back(std::async(std::launch::async, [&video = video, &vf = vf, &config] {
      return track_video(video, vf, config);
    }));
  }

  std::vector<TrackRecord> out;
  for (auto& job : jobs) {
    auto records = job.get();
    out.insert(out.end(), records.begin(), records.end());
  }
  return out;
}

EvalSummary evaluate(std::span<const Detection> predictions,
                     std::span<const FrameAnnotation> ground_truth, double iou) {
  using Key = std::pair<std::string, std::int64_t>;
  std::map<Key, std::vector<BoundingBox>> gt_frames;
  for (const FrameAnnotation& a : ground_truth) {
    auto& boxes = gt_frames[{a.video_id, a.frame}];
    for (const HandBox& h : a.hands) boxes.push_back(h.box);
  }
  std::map<Key, std::vector<ScoredBox>> pred_frames;
  for (const Detection& d : predictions) {
    Key key{d.video_id, d.frame};
    if (gt_frames.contains(key)) pred_frames[key].push_back(d.scored());
  }

  EvalSummary summary;
  summary.iou = iou;
  summary.frames = gt_frames.size();
  for (const auto& [key, gts] : gt_frames) {
    auto it = pred_frames.find(key);
    const std::span<const ScoredBox> preds =
        it == pred_frames.end() ? std::span<const ScoredBox>() : std::span<const ScoredBox>(it->second);
    summary.record.merge(match_detections(preds, gts, iou));
  }
  summary.ap = average_precision(summary.record);
  summary.curve = precision_recall_curve(summary.record);
  return summary;
}

std::string to_json(const EvalSummary& summary) {
  nlohmann::ordered_json j;
  j["iou"] = summary.iou;
  j["ap"] = summary.ap;
  j["frames"] = summary.frames;
  j["num_gt"] = summary.record.num_gt;
  j["tp"] = summary.record.true_positives();
  j["fp"] = summary.record.false_positives();
  j["fn"] = summary.record.false_negatives();
  j["curve"] = nlohmann::ordered_json::array();
  for (const PrPoint& p : summary.curve) {
    nlohmann::ordered_json point;
    point["recall"] = p.recall;
    point["precision"] = p.precision;
    j["curve"].push_back(std::move(point));
  }
  return j.dump(2);
}

AnalysisReport analyze_tracks(std::span<const TrackRecord> tracks, std::optional<double> fps) {
  std::map<std::string, std::vector<TrackedBox>> by_video;
  for (const TrackRecord& t : tracks) {
    by_video[t.video_id].push_back({t.frame, t.identity, t.box, t.provenance, t.score});
  }
  AnalysisReport report;
  report.fps = fps;
  for (const auto& [video, boxes] : by_video) {
    VideoMotionReport v;
    v.video_id = video;
    for (const Trajectory& traj : extract_trajectories(boxes)) {
      v.identities.push_back(motion_metrics(traj, fps));
    }
    report.videos.push_back(std::move(v));
  }
  return report;
}

}  // namespace handtrack::app
