#include "handtrack_app/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "handtrack/dataset.hpp"
#include "handtrack/serialization.hpp"
#include "handtrack/svg.hpp"
#include "handtrack_app/pipeline.hpp"
#include "handtrack_app/service.hpp"

namespace handtrack::app {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return in;
}

template <typename Reader>
auto read_file(const std::string& path, Reader reader) {
  std::ifstream in = open_input(path);
  try {
    return reader(in);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what(), 0, e.field());
  }
}

void write_output(const std::string& path, const std::string& content, std::ostream& fallback) {
  if (path.empty() || path == "-") {
    fallback << content;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path);
  out << content;
  if (!out) throw DataError("write failed for " + path);
}

void add_tracker_options(CLI::App* cmd, PipelineConfig& cfg, bool& no_reuse) {
  cmd->add_flag("--smooth", cfg.smoothing.enabled, "Run three-frame max-vote smoothing first");
  cmd->add_option("--iou-link", cfg.smoothing.iou_link, "IoU linking boxes across the window")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_flag("--no-reuse", no_reuse, "Delete exited identities (baseline SORT)");
  cmd->add_option("--iou-min", cfg.tracker.iou_min, "Association IoU gate")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--max-age", cfg.tracker.max_age, "Unmatched frames before dormancy")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--min-hits", cfg.tracker.min_hits, "Matches before a track is reported")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hand detection evaluation, tracking and motion analytics for surgical video",
               "handtrack"};
  app.require_subcommand(1);

  PipelineConfig cfg;
  bool no_reuse = false;

  // eval
  std::string pred_path;
  std::string gt_path;
  auto* eval = app.add_subcommand("eval", "Average precision of detections against ground truth");
  eval->add_option("--pred", pred_path, "Detections (JSON lines)")->required()->check(CLI::ExistingFile);
  eval->add_option("--gt", gt_path, "Annotations or detections (JSON lines)")
      ->required()
      ->check(CLI::ExistingFile);
  eval->add_option("--iou", cfg.eval_iou, "IoU for a correct detection")
      ->check(CLI::Range(0.0, 1.0));

  // track
  std::string det_path;
  std::string out_path;
  auto* track = app.add_subcommand("track", "Track hands through per-frame detections");
  track->add_option("--det", det_path, "Detections (JSON lines)")->required()->check(CLI::ExistingFile);
  track->add_option("--out", out_path, "Track records output (JSON lines)")->required();
  add_tracker_options(track, cfg, no_reuse);

  // smooth
  auto* smooth = app.add_subcommand("smooth", "Three-frame max-vote smoothing of detections");
  smooth->add_option("--det", det_path, "Detections (JSON lines)")->required()->check(CLI::ExistingFile);
  smooth->add_option("--out", out_path, "Smoothed detections output")->required();
  smooth->add_option("--iou-link", cfg.smoothing.iou_link, "IoU linking boxes across the window")
      ->check(CLI::Range(0.0, 1.0));

  // analyze
  std::string tracks_path;
  std::string svg_path;
  std::string report_path;
  std::string video_filter;
  std::string background;
  double frame_w = 0.0;
  double frame_h = 0.0;
  std::optional<double> fps;
  auto* analyze = app.add_subcommand("analyze", "Trajectory map and motion metrics from tracks");
  analyze->add_option("--tracks", tracks_path, "Track records (JSON lines)")
      ->required()
      ->check(CLI::ExistingFile);
  analyze->add_option("--out-svg", svg_path, "Trajectory map (SVG)")->required();
  analyze->add_option("--out-report", report_path, "Motion report (JSON)")->required();
  analyze->add_option("--video", video_filter, "Video drawn in the map (required if several)");
  analyze->add_option("--width", frame_w, "Frame width in px (default: box extent)")
      ->check(CLI::PositiveNumber);
  analyze->add_option("--height", frame_h, "Frame height in px (default: box extent)")
      ->check(CLI::PositiveNumber);
  analyze->add_option("--fps", fps, "Frame rate, adds px/s speeds")->check(CLI::PositiveNumber);
  analyze->add_option("--background", background, "Image href drawn under the map");

  // sample-plan
  std::string manifest_path;
  auto* plan = app.add_subcommand("sample-plan", "Frames to annotate per video");
  plan->add_option("--manifest", manifest_path, "Video manifest (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  plan->add_option("--out", out_path, "Output file (default stdout)");

  // split
  std::uint64_t seed = 0;
  std::vector<std::int64_t> targets{940, 380, 560};
  int frames_per_video = kFramesPerVideo;
  auto* split = app.add_subcommand("split", "Video-level train/val/test split");
  split->add_option("--manifest", manifest_path, "Video manifest (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  split->add_option("--seed", seed, "Shuffle seed")->required();
  split->add_option("--targets", targets, "Train,val,test frame counts")
      ->delimiter(',')
      ->expected(3);
  split->add_option("--frames-per-video", frames_per_video, "Sampled frames per video")
      ->check(CLI::PositiveNumber);
  split->add_option("--out", out_path, "Output file (default stdout)");

  // serve
  std::string data_dir;
  std::string ui_dir;
  std::string bind = "127.0.0.1";
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "HTTP backend for the annotation and review UI");
  serve->add_option("--data", data_dir, "Data directory")->required()->check(CLI::ExistingDirectory);
  serve->add_option("--ui", ui_dir, "Static UI assets mounted at /")->check(CLI::ExistingDirectory);
  serve->add_option("--bind", bind, "Bind address");
  serve->add_option("--port", port, "Port")->check(CLI::Range(1, 65535));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  cfg.tracker.reuse_identities = !no_reuse;

  try {
    if (*eval) {
      const auto preds = read_file(pred_path, [](std::istream& in) { return read_detections(in); });
      const auto gts = read_file(gt_path, [](std::istream& in) { return read_ground_truth(in); });
      out << to_json(evaluate(preds, gts, cfg.eval_iou)) << '\n';
    } else if (*track) {
      const auto dets = read_file(det_path, [](std::istream& in) { return read_detections(in); });
      std::ostringstream buffer;
      write_tracks(buffer, track_detections(dets, cfg));
      write_output(out_path, buffer.str(), out);
    } else if (*smooth) {
      const auto dets = read_file(det_path, [](std::istream& in) { return read_detections(in); });
      std::ostringstream buffer;
      write_detections(buffer, smooth_detections(dets, cfg.smoothing.iou_link));
      write_output(out_path, buffer.str(), out);
    } else if (*analyze) {
      const auto records = read_file(tracks_path, [](std::istream& in) { return read_tracks(in); });
      std::ostringstream report;
      write_report(report, analyze_tracks(records, fps));

      std::set<std::string> videos;
      for (const auto& r : records) videos.insert(r.video_id);
      if (video_filter.empty() && videos.size() > 1) {
        throw UsageError("tracks cover several videos; pick one with --video");
      }
      if (!video_filter.empty() && !videos.contains(video_filter)) {
        throw DataError("video '" + video_filter + "' not found in " + tracks_path);
      }
      const std::string video = video_filter.empty() && !videos.empty() ? *videos.begin() : video_filter;

      std::vector<TrackedBox> boxes;
      double extent_w = 1.0;
      double extent_h = 1.0;
      for (const auto& r : records) {
        if (r.video_id != video) continue;
        boxes.push_back({r.frame, r.identity, r.box, r.provenance, r.score});
        extent_w = std::max(extent_w, std::ceil(r.box.x2));
        extent_h = std::max(extent_h, std::ceil(r.box.y2));
      }
      TrajectoryMapStyle style;
      if (!background.empty()) style.background_href = background;
      const auto trajectories = extract_trajectories(boxes);
      const std::string svg = render_trajectory_map(trajectories, frame_w > 0.0 ? frame_w : extent_w,
                                                    frame_h > 0.0 ? frame_h : extent_h, style);
      write_output(svg_path, svg, out);
      write_output(report_path, report.str(), out);
    } else if (*plan) {
      const auto manifests =
          read_file(manifest_path, [](std::istream& in) { return read_manifests(in); });
      std::vector<SamplingPlan> plans;
      for (const auto& m : manifests) plans.push_back(compute_sampling_plan(m));
      std::ostringstream buffer;
      write_sampling_plans(buffer, plans);
      write_output(out_path, buffer.str(), out);
    } else if (*split) {
      const auto manifests =
          read_file(manifest_path, [](std::istream& in) { return read_manifests(in); });
      SplitTargets t;
      std::copy(targets.begin(), targets.end(), t.frames.begin());
      std::ostringstream buffer;
      write_split(buffer, split_dataset(manifests, frames_per_video, t, seed));
      write_output(out_path, buffer.str(), out);
    } else if (*serve) {
      ServiceConfig service_cfg{data_dir, std::nullopt};
      if (!ui_dir.empty()) service_cfg.ui_dir = ui_dir;
      AnnotationService service(service_cfg);
      err << "serving " << data_dir << " on http://" << bind << ":" << port << "\n";
      if (!service.listen(bind, port)) {
        err << "error: cannot listen on " << bind << ":" << port << "\n";
        return kExitDataError;
      }
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDataError;
  }
  return kExitOk;
}

}  // namespace handtrack::app
