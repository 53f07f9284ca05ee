#pragma once

#include <span>
#include <vector>

#include "handtrack/geometry.hpp"
#include "handtrack/records.hpp"

namespace handtrack {

using FrameBoxes = std::vector<ScoredBox>;

/// Three consecutive frames t-1, t, t+1 of one video.
struct FrameWindow {
  std::span<const ScoredBox> prev;
  std::span<const ScoredBox> mid;
  std::span<const ScoredBox> next;
};

inline constexpr double kDefaultLinkIou = 0.3;

/// (1 - alpha) * a + alpha * b, coordinate-wise. alpha must lie in [0, 1].
BoundingBox interpolate_box(const BoundingBox& a, const BoundingBox& b, double alpha);

/// Max-voting over a three-frame window. Boxes are linked prev<->mid and
/// mid<->next by greedy best-IoU matching at iou_link; prev and next boxes
/// without a mid partner are then linked to each other the same way.
///
///   prev+next, mid missing  -> insert the midpoint box (score = mean)
///   mid only                -> remove
///   anything else           -> keep as is
///
/// Kept boxes retain their original order; insertions are appended in
/// order of their prev-frame box.
FrameBoxes smooth_window(const FrameWindow& w, double iou_link = kDefaultLinkIou);

/// Stride-one sliding window over every interior frame. Each window reads the
/// uncorrected input; the first and last frames pass through. Sequences
/// shorter than three frames are returned unchanged.
std::vector<FrameBoxes> run_smoothing(std::span<const FrameBoxes> sequence,
                                      double iou_link = kDefaultLinkIou);

}  // namespace handtrack
