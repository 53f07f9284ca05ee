#include "handtrack/smoothing.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <tuple>

namespace handtrack {
namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

struct Link {
  double overlap;
  std::size_t a;
  std::size_t b;
};

// Greedy descending-IoU matching over the eligible boxes of two frames.
// Returns, for each box of `lhs`, the index of its partner in `rhs` or kNone.
std::vector<std::size_t> greedy_link(std::span<const ScoredBox> lhs, std::span<const ScoredBox> rhs,
                                     const std::vector<bool>& lhs_eligible,
                                     const std::vector<bool>& rhs_eligible, double iou_link) {
  std::vector<Link> candidates;
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    if (!lhs_eligible[i]) continue;
    for (std::size_t j = 0; j < rhs.size(); ++j) {
      if (!rhs_eligible[j]) continue;
      const double overlap = iou(lhs[i].box, rhs[j].box);
      if (overlap >= iou_link) candidates.push_back({overlap, i, j});
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(), [](const Link& x, const Link& y) {
    if (x.overlap != y.overlap) return x.overlap > y.overlap;
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
  });

  std::vector<std::size_t> partner(lhs.size(), kNone);
  std::vector<bool> rhs_taken(rhs.size(), false);
  for (const Link& link : candidates) {
    if (partner[link.a] != kNone || rhs_taken[link.b]) continue;
    partner[link.a] = link.b;
    rhs_taken[link.b] = true;
  }
  return partner;
}

}  // namespace

BoundingBox interpolate_box(const BoundingBox& a, const BoundingBox& b, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("interpolate_box: alpha must lie in [0, 1]");
  }
  require_valid(a);
  require_valid(b);
  if (alpha == 0.0) return a;
  if (alpha == 1.0) return b;
  const double keep = 1.0 - alpha;
  return {keep * a.x1 + alpha * b.x1, keep * a.y1 + alpha * b.y1, keep * a.x2 + alpha * b.x2,
          keep * a.y2 + alpha * b.y2};
}

FrameBoxes smooth_window(const FrameWindow& w, double iou_link) {
  if (!(iou_link > 0.0 && iou_link < 1.0)) {
    throw std::invalid_argument("smooth_window: iou_link must lie in (0, 1)");
  }
  const std::vector<bool> all_prev(w.prev.size(), true);
  const std::vector<bool> all_mid(w.mid.size(), true);
  const std::vector<bool> all_next(w.next.size(), true);

  const auto mid_to_prev = greedy_link(w.mid, w.prev, all_mid, all_prev, iou_link);
  const auto mid_to_next = greedy_link(w.mid, w.next, all_mid, all_next, iou_link);

  FrameBoxes out;
  out.reserve(w.mid.size());
  for (std::size_t m = 0; m < w.mid.size(); ++m) {
    if (mid_to_prev[m] != kNone || mid_to_next[m] != kNone) {
      out.push_back(w.mid[m]);
    }
  }

  std::vector<bool> prev_free(w.prev.size(), true);
  std::vector<bool> next_free(w.next.size(), true);
  for (std::size_t m = 0; m < w.mid.size(); ++m) {
    if (mid_to_prev[m] != kNone) prev_free[mid_to_prev[m]] = false;
    if (mid_to_next[m] != kNone) next_free[mid_to_next[m]] = false;
  }
  const auto gap_links = greedy_link(w.prev, w.next, prev_free, next_free, iou_link);
  for (std::size_t p = 0; p < w.prev.size(); ++p) {
    if (gap_links[p] == kNone) continue;
    const ScoredBox& before = w.prev[p];
    const ScoredBox& after = w.next[gap_links[p]];
    out.push_back({interpolate_box(before.box, after.box, 0.5), (before.score + after.score) / 2.0});
  }
  return out;
}

std::vector<FrameBoxes> run_smoothing(std::span<const FrameBoxes> sequence, double iou_link) {
  std::vector<FrameBoxes> out(sequence.begin(), sequence.end());
  if (sequence.size() < 3) {
    return out;
  }
  for (std::size_t t = 1; t + 1 < sequence.size(); ++t) {
    out[t] = smooth_window({sequence[t - 1], sequence[t], sequence[t + 1]}, iou_link);
  }
  return out;
}

}  // namespace handtrack
