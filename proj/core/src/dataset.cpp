#include "handtrack/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <set>

#include <json.hpp>

namespace handtrack {
namespace {

using OrderedJson = nlohmann::ordered_json;
using Matrix3 = std::array<std::array<std::int64_t, 3>, 3>;

std::array<std::int64_t, 3> largest_remainder(std::int64_t total,
                                              const std::array<std::int64_t, 3>& weights) {
  const std::int64_t weight_sum = std::accumulate(weights.begin(), weights.end(), std::int64_t{0});
  std::array<std::int64_t, 3> out{};
  std::array<std::int64_t, 3> rem{};
  std::int64_t assigned = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    out[k] = total * weights[k] / weight_sum;
    rem[k] = total * weights[k] % weight_sum;
    assigned += out[k];
  }
  std::array<std::size_t, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return rem[a] > rem[b]; });
  for (std::size_t i = 0; assigned < total; ++i, ++assigned) out[order[i % 3]] += 1;
  return out;
}

// Rounds the proportional allocation n_c * T_k / N to integers so that row
// sums are n_c and column sums are T_k, moving each cell by less than one.
// Cells with a fractional part can each take one extra unit; the extras are
// placed by augmenting paths over that bipartite graph.
Matrix3 controlled_rounding(const std::array<std::int64_t, 3>& rows,
                            const std::array<std::int64_t, 3>& cols, std::int64_t total) {
  Matrix3 base{};
  Matrix3 rem{};
  std::array<std::int64_t, 3> row_need{};
  std::array<std::int64_t, 3> col_need{};
  for (std::size_t c = 0; c < 3; ++c) {
    for (std::size_t k = 0; k < 3; ++k) {
      base[c][k] = rows[c] * cols[k] / total;
      rem[c][k] = rows[c] * cols[k] % total;
    }
  }
  for (std::size_t c = 0; c < 3; ++c) {
    row_need[c] = rows[c] - (base[c][0] + base[c][1] + base[c][2]);
  }
  for (std::size_t k = 0; k < 3; ++k) {
    col_need[k] = cols[k] - (base[0][k] + base[1][k] + base[2][k]);
  }

  Matrix3 extra{};
  // Candidate edges for each row, largest fractional part first.
  std::array<std::vector<std::size_t>, 3> edges;
  for (std::size_t c = 0; c < 3; ++c) {
    for (std::size_t k = 0; k < 3; ++k) {
      if (rem[c][k] > 0) edges[c].push_back(k);
    }
    std::stable_sort(edges[c].begin(), edges[c].end(),
                     [&](std::size_t a, std::size_t b) { return rem[c][a] > rem[c][b]; });
  }

  // DFS augmenting path from a row with remaining need to a column with need.
  auto augment = [&](auto&& self, std::size_t row, std::array<bool, 3>& visited_cols) -> bool {
    for (std::size_t k : edges[row]) {
      if (extra[row][k] != 0 || visited_cols[k]) continue;
      visited_cols[k] = true;
      if (col_need[k] > 0) {
        extra[row][k] = 1;
        col_need[k] -= 1;
        return true;
      }
      for (std::size_t other = 0; other < 3; ++other) {
        if (extra[other][k] == 1) {
          extra[other][k] = 0;
          if (self(self, other, visited_cols)) {
            extra[row][k] = 1;
            return true;
          }
          extra[other][k] = 1;
        }
      }
    }
    return false;
  };

  for (std::size_t c = 0; c < 3; ++c) {
    while (row_need[c] > 0) {
      std::array<bool, 3> visited{};
      if (!augment(augment, c, visited)) {
        throw std::logic_error("controlled rounding failed to find an augmenting path");
      }
      row_need[c] -= 1;
    }
  }

  Matrix3 out{};
  for (std::size_t c = 0; c < 3; ++c) {
    for (std::size_t k = 0; k < 3; ++k) out[c][k] = base[c][k] + extra[c][k];
  }
  return out;
}

void seeded_shuffle(std::vector<std::string>& items, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(items[i - 1], items[j]);
  }
}

std::string format_allocation(const std::array<std::int64_t, 3>& a) {
  return "(" + std::to_string(a[0]) + ", " + std::to_string(a[1]) + ", " + std::to_string(a[2]) +
         ")";
}

}  // namespace

SamplingPlan compute_sampling_plan(const VideoManifest& m, const SamplingOptions& opts) {
  m.validate();
  if (!(opts.working_fps > 0.0) || !(opts.max_window_s > 0.0) || opts.frames < 1) {
    throw std::invalid_argument("sampling options must be positive");
  }

  SamplingPlan plan;
  plan.video_id = m.video_id;
  plan.working_fps = opts.working_fps;
  if (m.duration_s <= opts.max_window_s) {
    plan.window_start_s = 0.0;
    plan.window_end_s = m.duration_s;
  } else {
    plan.window_start_s = (m.duration_s - opts.max_window_s) / 2.0;
    plan.window_end_s = plan.window_start_s + opts.max_window_s;
  }

  const double window_frames = (plan.window_end_s - plan.window_start_s) * opts.working_fps;
  if (window_frames < static_cast<double>(opts.frames)) {
    throw std::invalid_argument("video '" + m.video_id + "' is shorter than " +
                                std::to_string(opts.frames) + " frames at " +
                                std::to_string(opts.working_fps) + " fps");
  }

  // Valid indices on the working timeline lie in [first, last].
  const auto first = static_cast<std::int64_t>(std::ceil(plan.window_start_s * opts.working_fps));
  const auto last = static_cast<std::int64_t>(
      std::ceil(plan.window_end_s * opts.working_fps)) - 1;

  const double interval = (plan.window_end_s - plan.window_start_s) / opts.frames;
  for (int k = 0; k < opts.frames; ++k) {
    const double t = plan.window_start_s + (k + 0.5) * interval;
    const auto idx = std::clamp<std::int64_t>(std::llround(t * opts.working_fps), first, last);
    if (!plan.frames.empty() && idx <= plan.frames.back()) {
      throw std::invalid_argument("video '" + m.video_id + "' is too short for distinct samples");
    }
    plan.frames.push_back(idx);
  }
  return plan;
}

InfeasibleSplitError::InfeasibleSplitError(const std::string& reason,
                                           std::array<std::int64_t, 3> nearest)
    : std::invalid_argument(reason + "; nearest achievable allocation " +
                            format_allocation(nearest)),
      nearest_(nearest) {}

DatasetSplit split_dataset(std::span<const VideoManifest> manifests, int frames_per_video,
                           const SplitTargets& targets, std::uint64_t seed) {
  if (frames_per_video < 1) {
    throw std::invalid_argument("split: frames_per_video must be >= 1");
  }
  for (auto t : targets.frames) {
    if (t < 0) throw std::invalid_argument("split: frame targets must be non-negative");
  }
  const std::int64_t target_sum =
      std::accumulate(targets.frames.begin(), targets.frames.end(), std::int64_t{0});
  if (target_sum == 0) {
    throw std::invalid_argument("split: frame targets sum to zero");
  }

  std::array<std::vector<std::string>, 3> by_category;
  std::set<std::string, std::less<>> seen;
  for (const VideoManifest& m : manifests) {
    m.validate();
    if (!seen.insert(m.video_id).second) {
      throw std::invalid_argument("split: duplicate video_id '" + m.video_id + "'");
    }
    by_category[static_cast<std::size_t>(m.category)].push_back(m.video_id);
  }

  const auto n_videos = static_cast<std::int64_t>(manifests.size());
  const auto video_quota = largest_remainder(n_videos, targets.frames);
  std::array<std::int64_t, 3> nearest{};
  for (std::size_t k = 0; k < 3; ++k) nearest[k] = video_quota[k] * frames_per_video;

  std::array<std::int64_t, 3> quota{};
  for (std::size_t k = 0; k < 3; ++k) {
    if (targets.frames[k] % frames_per_video != 0) {
      throw InfeasibleSplitError("split: target " + format_allocation(targets.frames) +
                                     " is not a multiple of " + std::to_string(frames_per_video) +
                                     " frames per video",
                                 nearest);
    }
    quota[k] = targets.frames[k] / frames_per_video;
  }
  if (quota[0] + quota[1] + quota[2] != n_videos) {
    throw InfeasibleSplitError("split: target " + format_allocation(targets.frames) + " needs " +
                                   std::to_string(target_sum / frames_per_video) +
                                   " videos but the manifest has " + std::to_string(n_videos),
                               nearest);
  }

  std::array<std::int64_t, 3> category_sizes{};
  for (std::size_t c = 0; c < 3; ++c) {
    category_sizes[c] = static_cast<std::int64_t>(by_category[c].size());
  }
  const Matrix3 allocation = controlled_rounding(category_sizes, quota, n_videos);

  DatasetSplit split;
  split.seed = seed;
  split.frames_per_video = frames_per_video;
  split.category_videos = allocation;
  for (std::size_t c = 0; c < 3; ++c) {
    auto ids = by_category[c];
    std::sort(ids.begin(), ids.end());
    seeded_shuffle(ids, seed ^ (0x9e3779b97f4a7c15ULL * (c + 1)));
    std::size_t cursor = 0;
    for (std::size_t k = 0; k < 3; ++k) {
      for (std::int64_t i = 0; i < allocation[c][k]; ++i) {
        split.videos[k].push_back(ids[cursor++]);
      }
    }
  }
  for (auto& subset : split.videos) std::sort(subset.begin(), subset.end());
  return split;
}

void write_sampling_plans(std::ostream& out, std::span<const SamplingPlan> plans) {
  OrderedJson doc;
  doc["plans"] = OrderedJson::array();
  for (const SamplingPlan& p : plans) {
    OrderedJson j;
    j["video_id"] = p.video_id;
    j["working_fps"] = p.working_fps;
    j["window"] = OrderedJson::array({p.window_start_s, p.window_end_s});
    j["frames"] = p.frames;
    doc["plans"].push_back(std::move(j));
  }
  out << doc.dump(2) << '\n';
}

void write_split(std::ostream& out, const DatasetSplit& split) {
  OrderedJson doc;
  doc["seed"] = split.seed;
  doc["frames_per_video"] = split.frames_per_video;
  doc["subsets"] = OrderedJson::array();
  for (std::size_t k = 0; k < 3; ++k) {
    OrderedJson s;
    s["name"] = std::string(kSubsetNames[k]);
    s["frames"] = split.frame_count(static_cast<Subset>(k));
    OrderedJson per_category;
    for (SurgeryCategory c : kAllCategories) {
      per_category[std::string(to_code(c))] = split.category_videos[static_cast<std::size_t>(c)][k];
    }
    s["category_videos"] = std::move(per_category);
    s["videos"] = split.videos[k];
    doc["subsets"].push_back(std::move(s));
  }
  out << doc.dump(2) << '\n';
}

}  // namespace handtrack
