#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "handtrack/records.hpp"
#include "handtrack/trajectory.hpp"

namespace handtrack {

/// Malformed input. `line` is 1-based for line-delimited documents and 0 for
/// whole-document errors; `field` is a JSON path such as "hands[1].box".
class DataError : public std::runtime_error {
 public:
  DataError(std::string message, std::size_t line = 0, std::string field = {});

  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }
  /// Message without the "line N:" prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t line_;
  std::string field_;
  std::string detail_;
};

struct ReadOptions {
  /// Reject records carrying keys outside the documented schema.
  bool strict = true;
};

// Single records. Canonical form: keys in schema order, shortest round-trip
// floats, no whitespace, no trailing newline.
std::string to_json(const Detection& d);
std::string to_json(const FrameAnnotation& a);
std::string to_json(const TrackRecord& t);

Detection parse_detection(std::string_view text, const ReadOptions& opts = {});
FrameAnnotation parse_annotation(std::string_view text, const ReadOptions& opts = {});
TrackRecord parse_track(std::string_view text, const ReadOptions& opts = {});

// Line-delimited documents. Blank lines are skipped.
std::vector<Detection> read_detections(std::istream& in, const ReadOptions& opts = {});
std::vector<FrameAnnotation> read_annotations(std::istream& in, const ReadOptions& opts = {});
std::vector<TrackRecord> read_tracks(std::istream& in, const ReadOptions& opts = {});

void write_detections(std::ostream& out, std::span<const Detection> records);
void write_annotations(std::ostream& out, std::span<const FrameAnnotation> records);
void write_tracks(std::ostream& out, std::span<const TrackRecord> records);

/// Ground truth given either as annotation records or as detection records
/// (score ignored). One entry per line, in file order.
std::vector<FrameAnnotation> read_ground_truth(std::istream& in, const ReadOptions& opts = {});

// Whole-document formats.
std::vector<VideoManifest> read_manifests(std::istream& in, const ReadOptions& opts = {});
void write_manifests(std::ostream& out, std::span<const VideoManifest> manifests);

struct VideoMotionReport {
  std::string video_id;
  std::vector<MotionReport> identities;
};

struct AnalysisReport {
  std::optional<double> fps;
  std::vector<VideoMotionReport> videos;
};

AnalysisReport read_report(std::istream& in, const ReadOptions& opts = {});
void write_report(std::ostream& out, const AnalysisReport& report);

}  // namespace handtrack
