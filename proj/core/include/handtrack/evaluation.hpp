#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "handtrack/geometry.hpp"
#include "handtrack/records.hpp"

namespace handtrack {

/// Detection counted correct when IoU with an unmatched ground truth is at least this.
inline constexpr double kEvalIouThreshold = 0.5;

struct EvalEntry {
  double score = 0.0;
  bool true_positive = false;
};

/// Per-prediction match outcomes plus the number of ground-truth boxes they
/// were matched against. Records from disjoint frames combine with merge().
struct EvalRecord {
  std::vector<EvalEntry> predictions;
  std::size_t num_gt = 0;

  std::size_t true_positives() const noexcept;
  std::size_t false_positives() const noexcept { return predictions.size() - true_positives(); }
  std::size_t false_negatives() const noexcept { return num_gt - true_positives(); }

  void merge(const EvalRecord& other);
};

class UndefinedApError : public std::domain_error {
 public:
  UndefinedApError() : std::domain_error("undefined AP: no ground-truth boxes") {}
};

/// Greedy matching in descending confidence (ties keep input order). Each
/// prediction takes the highest-IoU ground truth still unmatched; it is a true
/// positive when that IoU >= iou_min.
EvalRecord match_detections(std::span<const ScoredBox> preds, std::span<const BoundingBox> gts,
                            double iou_min = kEvalIouThreshold);

struct PrPoint {
  double recall = 0.0;
  double precision = 0.0;
};

/// Cumulative precision/recall after each prediction, in ranked order.
std::vector<PrPoint> precision_recall_curve(const EvalRecord& record);

/// All-point interpolated average precision. Throws UndefinedApError when the
/// record has no ground truth.
double average_precision(const EvalRecord& record);

double l2_box_loss(const BoundingBox& pred, const BoundingBox& target);

}  // namespace handtrack
