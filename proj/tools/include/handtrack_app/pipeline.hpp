#pragma once

#include <span>
#include <string>
#include <vector>

#include "handtrack/evaluation.hpp"
#include "handtrack/serialization.hpp"
#include "handtrack/smoothing.hpp"
#include "handtrack/tracker.hpp"

namespace handtrack::app {

struct SmoothingConfig {
  bool enabled = false;
  double iou_link = kDefaultLinkIou;
};

struct PipelineConfig {
  TrackerConfig tracker;
  SmoothingConfig smoothing;
  double eval_iou = kEvalIouThreshold;
};

/// Runs the three-frame voting pass over every video. Each video is treated
/// as a dense frame range from its first to its last detection. Output is
/// ordered by (video_id, frame), keeping per-frame box order.
std::vector<Detection> smooth_detections(std::span<const Detection> detections, double iou_link);

/// Optional smoothing, then one tracker per video stepped over every frame of
/// the video's range (empty frames included). Videos run concurrently; output
/// is ordered by (video_id, frame, identity) regardless of input order.
std::vector<TrackRecord> track_detections(std::span<const Detection> detections,
                                          const PipelineConfig& config);

struct EvalSummary {
  double iou = kEvalIouThreshold;
  std::size_t frames = 0;
  EvalRecord record;
  double ap = 0.0;
  std::vector<PrPoint> curve;
};

/// Frames are the (video, frame) keys present in the ground truth;
/// predictions on other frames are ignored. Throws UndefinedApError when the
/// ground truth holds no boxes.
EvalSummary evaluate(std::span<const Detection> predictions,
                     std::span<const FrameAnnotation> ground_truth, double iou);

std::string to_json(const EvalSummary& summary);

/// Per-video motion metrics, videos sorted by id.
AnalysisReport analyze_tracks(std::span<const TrackRecord> tracks, std::optional<double> fps);

}  // namespace handtrack::app
