#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace handtrack::testing {

double raster_iou(const BoundingBox& a, const BoundingBox& b, double step) {
  const double x0 = std::min(a.x1, b.x1);
  const double y0 = std::min(a.y1, b.y1);
  const double x1 = std::max(a.x2, b.x2);
  const double y1 = std::max(a.y2, b.y2);
  auto inside = [](const BoundingBox& box, double x, double y) {
    return x > box.x1 && x < box.x2 && y > box.y1 && y < box.y2;
  };
  long long inter = 0;
  long long uni = 0;
  for (double y = y0 + step / 2.0; y < y1; y += step) {
    for (double x = x0 + step / 2.0; x < x1; x += step) {
      const bool in_a = inside(a, x, y);
      const bool in_b = inside(b, x, y);
      inter += (in_a && in_b) ? 1 : 0;
      uni += (in_a || in_b) ? 1 : 0;
    }
  }
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

double brute_force_assignment_cost(const CostMatrix& cost) {
  if (cost.empty()) return 0.0;
  const bool flip = cost.rows() > cost.cols();
  const std::size_t n = flip ? cost.cols() : cost.rows();
  const std::size_t m = flip ? cost.rows() : cost.cols();
  auto at = [&](std::size_t i, std::size_t j) { return flip ? cost(j, i) : cost(i, j); };

  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> chosen(n);
  std::vector<bool> used(m, false);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      // Sum in row order of the original matrix so totals are comparable bit for bit.
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      for (std::size_t k = 0; k < n; ++k) {
        pairs.emplace_back(flip ? chosen[k] : k, flip ? k : chosen[k]);
      }
      std::sort(pairs.begin(), pairs.end());
      double total = 0.0;
      for (const auto& [r, c] : pairs) total += cost(r, c);
      best = std::min(best, total);
      return;
    }
    for (std::size_t j = 0; j < m; ++j) {
      if (used[j]) continue;
      used[j] = true;
      chosen[i] = j;
      rec(i + 1);
      used[j] = false;
    }
  };
  rec(0);
  (void)at;
  return best;
}

std::vector<std::pair<std::size_t, std::size_t>> brute_force_max_iou_matching(
    std::span<const BoundingBox> rows, std::span<const BoundingBox> cols, double gate) {
  std::vector<std::pair<std::size_t, std::size_t>> best_pairs;
  double best = -1.0;
  std::vector<std::pair<std::size_t, std::size_t>> current;
  std::vector<bool> used(cols.size(), false);

  std::function<void(std::size_t, double)> rec = [&](std::size_t i, double total) {
    if (i == rows.size()) {
      if (total > best + 1e-12) {
        best = total;
        best_pairs = current;
      }
      return;
    }
    rec(i + 1, total);  // row i unmatched
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (used[j]) continue;
      const auto& a = rows[i];
      const auto& b = cols[j];
      const double iw = std::max(0.0, std::min(a.x2, b.x2) - std::max(a.x1, b.x1));
      const double ih = std::max(0.0, std::min(a.y2, b.y2) - std::max(a.y1, b.y1));
      const double inter = iw * ih;
      const double overlap = inter / (a.area() + b.area() - inter);
      if (overlap < gate) continue;
      used[j] = true;
      current.emplace_back(i, j);
      rec(i + 1, total + overlap);
      current.pop_back();
      used[j] = false;
    }
  };
  rec(0, 0.0);
  return best_pairs;
}

OracleMatch selection_match(std::span<const ScoredBox> preds, std::span<const BoundingBox> gts,
                            double iou_min) {
  OracleMatch out;
  std::vector<bool> done(preds.size(), false);
  std::vector<bool> taken(gts.size(), false);
  for (std::size_t round = 0; round < preds.size(); ++round) {
    std::size_t pick = preds.size();
    for (std::size_t i = 0; i < preds.size(); ++i) {
      if (done[i]) continue;
      if (pick == preds.size() || preds[i].score > preds[pick].score) pick = i;
    }
    done[pick] = true;
    double best = -1.0;
    std::size_t best_gt = gts.size();
    for (std::size_t g = 0; g < gts.size(); ++g) {
      if (taken[g]) continue;
      const double overlap = raster_iou(preds[pick].box, gts[g], 1.0);
      if (overlap > best) {
        best = overlap;
        best_gt = g;
      }
    }
    const bool tp = best_gt < gts.size() && best >= iou_min;
    if (tp) taken[best_gt] = true;
    out.tp_in_rank_order.push_back(tp);
    out.scores_in_rank_order.push_back(preds[pick].score);
  }
  return out;
}

double staircase_ap(const std::vector<bool>& tp_in_rank_order, std::size_t num_gt) {
  struct Point {
    double recall;
    double precision;
  };
  std::vector<Point> points;
  std::size_t tp = 0;
  for (std::size_t k = 0; k < tp_in_rank_order.size(); ++k) {
    if (tp_in_rank_order[k]) ++tp;
    points.push_back({static_cast<double>(tp) / static_cast<double>(num_gt),
                      static_cast<double>(tp) / static_cast<double>(k + 1)});
  }
  double ap = 0.0;
  for (std::size_t level = 1; level <= tp; ++level) {
    const double r = static_cast<double>(level) / static_cast<double>(num_gt);
    const double r_prev = static_cast<double>(level - 1) / static_cast<double>(num_gt);
    double p_interp = 0.0;
    for (const Point& pt : points) {
      if (pt.recall >= r - 1e-15) p_interp = std::max(p_interp, pt.precision);
    }
    ap += (r - r_prev) * p_interp;
  }
  return ap;
}

double focal_loss_reference(double p, int y, double gamma) {
  const double pt = y == 1 ? p : 1.0 - p;
  if (pt >= 1.0) return 0.0;
  return -std::exp(gamma * std::log(1.0 - pt)) * std::log(pt);
}

std::uint64_t Rng::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform(double lo, double hi) {
  const double unit = static_cast<double>(next() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

int Rng::integer(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(next() % span);
}

}  // namespace handtrack::testing
