#include "handtrack/evaluation.hpp"

#include <algorithm>
#include <numeric>

namespace handtrack {
namespace {

std::vector<std::size_t> ranked_order(std::size_t n, auto score_of) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return score_of(a) > score_of(b);
  });
  return order;
}

}  // namespace

std::size_t EvalRecord::true_positives() const noexcept {
  return static_cast<std::size_t>(std::count_if(
      predictions.begin(), predictions.end(), [](const EvalEntry& e) { return e.true_positive; }));
}

void EvalRecord::merge(const EvalRecord& other) {
  predictions.insert(predictions.end(), other.predictions.begin(), other.predictions.end());
  num_gt += other.num_gt;
}

EvalRecord match_detections(std::span<const ScoredBox> preds, std::span<const BoundingBox> gts,
                            double iou_min) {
  if (!(iou_min > 0.0 && iou_min <= 1.0)) {
    throw std::invalid_argument("match_detections: iou_min must lie in (0, 1]");
  }
  for (const auto& gt : gts) {
    require_valid(gt);
  }

  EvalRecord record;
  record.num_gt = gts.size();
  record.predictions.reserve(preds.size());

  std::vector<bool> consumed(gts.size(), false);
  const auto order = ranked_order(preds.size(), [&](std::size_t i) { return preds[i].score; });
  for (std::size_t idx : order) {
    const ScoredBox& pred = preds[idx];
    double best_iou = -1.0;
    std::size_t best_gt = gts.size();
    for (std::size_t g = 0; g < gts.size(); ++g) {
      if (consumed[g]) continue;
      const double overlap = iou(pred.box, gts[g]);
      if (overlap > best_iou) {
        best_iou = overlap;
        best_gt = g;
      }
    }
    const bool hit = best_gt < gts.size() && best_iou >= iou_min;
    if (hit) {
      consumed[best_gt] = true;
    }
    record.predictions.push_back({pred.score, hit});
  }
  return record;
}

std::vector<PrPoint> precision_recall_curve(const EvalRecord& record) {
  const auto& preds = record.predictions;
  const auto order = ranked_order(preds.size(), [&](std::size_t i) { return preds[i].score; });

  std::vector<PrPoint> curve;
  curve.reserve(preds.size());
  std::size_t tp = 0;
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    if (preds[order[rank]].true_positive) ++tp;
    const double recall =
        record.num_gt == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(record.num_gt);
    const double precision = static_cast<double>(tp) / static_cast<double>(rank + 1);
    curve.push_back({recall, precision});
  }
  return curve;
}

double average_precision(const EvalRecord& record) {
  if (record.num_gt == 0) {
    throw UndefinedApError();
  }
  if (record.true_positives() > record.num_gt) {
    throw std::invalid_argument("average_precision: more true positives than ground truths");
  }
  const auto& preds = record.predictions;
  const auto order = ranked_order(preds.size(), [&](std::size_t i) { return preds[i].score; });
  const auto curve = precision_recall_curve(record);

  // Precision envelope: running max from the tail.
  std::vector<double> envelope(curve.size());
  double running = 0.0;
  for (std::size_t i = curve.size(); i-- > 0;) {
    running = std::max(running, curve[i].precision);
    envelope[i] = running;
  }

  // Recall rises by exactly 1/num_gt at each true positive, so the area is the
  // envelope summed over true-positive ranks, scaled once at the end.
  double area = 0.0;
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    if (preds[order[rank]].true_positive) {
      area += envelope[rank];
    }
  }
  return area / static_cast<double>(record.num_gt);
}

double l2_box_loss(const BoundingBox& pred, const BoundingBox& target) {
  require_valid(pred);
  require_valid(target);
  const double dx1 = pred.x1 - target.x1;
  const double dy1 = pred.y1 - target.y1;
  const double dx2 = pred.x2 - target.x2;
  const double dy2 = pred.y2 - target.y2;
  return dx1 * dx1 + dy1 * dy1 + dx2 * dx2 + dy2 * dy2;
}

}  // namespace handtrack
