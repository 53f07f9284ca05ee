#include "handtrack/serialization.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <set>

#include <json.hpp>

namespace handtrack {
namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

std::string with_line(const std::string& detail, std::size_t line) {
  return line == 0 ? detail : "line " + std::to_string(line) + ": " + detail;
}

// Typed field access with JSON-path diagnostics.
class ObjectReader {
 public:
  ObjectReader(const Json& obj, std::string path, std::size_t line)
      : obj_(obj), path_(std::move(path)), line_(line) {
    if (!obj_.is_object()) fail(path_.empty() ? "record" : path_, "expected a JSON object");
  }

  [[noreturn]] void fail(const std::string& field, const std::string& what) const {
    throw DataError(field.empty() ? what : "field '" + field + "': " + what, line_, field);
  }

  std::string field_path(std::string_view key) const {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }

  const Json& require(std::string_view key) {
    seen_.insert(std::string(key));
    auto it = obj_.find(key);
    if (it == obj_.end()) fail(field_path(key), "missing");
    return *it;
  }

  const Json* optional(std::string_view key) {
    seen_.insert(std::string(key));
    auto it = obj_.find(key);
    return it == obj_.end() || it->is_null() ? nullptr : &*it;
  }

  std::string string(std::string_view key) {
    const Json& v = require(key);
    if (!v.is_string()) fail(field_path(key), "expected a string");
    return v.get<std::string>();
  }

  std::int64_t integer(std::string_view key, std::int64_t min_value) {
    return integer_value(require(key), field_path(key), min_value);
  }

  std::int64_t integer_value(const Json& v, const std::string& path, std::int64_t min_value) const {
    if (!v.is_number_integer()) fail(path, "expected an integer");
    if (v.is_number_unsigned() &&
        v.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
      fail(path, "integer out of range");
    }
    const auto value = v.get<std::int64_t>();
    if (value < min_value) fail(path, "must be >= " + std::to_string(min_value));
    return value;
  }

  double number(std::string_view key) { return number_value(require(key), field_path(key)); }

  double number_value(const Json& v, const std::string& path) const {
    if (!v.is_number()) fail(path, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(path, "must be finite");
    return d;
  }

  double probability(std::string_view key) {
    const double p = number(key);
    if (!(p >= 0.0 && p <= 1.0)) fail(field_path(key), "must lie in [0, 1]");
    return p;
  }

  BoundingBox box(std::string_view key) {
    const Json& v = require(key);
    const std::string path = field_path(key);
    if (!v.is_array() || v.size() != 4) fail(path, "expected [x1, y1, x2, y2]");
    BoundingBox b{number_value(v[0], path), number_value(v[1], path), number_value(v[2], path),
                  number_value(v[3], path)};
    if (b.x2 < b.x1) fail(path, "x2 < x1");
    if (b.y2 < b.y1) fail(path, "y2 < y1");
    return b;
  }

  void finish(const ReadOptions& opts) const {
    if (!opts.strict) return;
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (!seen_.contains(it.key())) fail(field_path(it.key()), "unknown field");
    }
  }

  std::size_t line() const noexcept { return line_; }

 private:
  const Json& obj_;
  std::string path_;
  std::size_t line_;
  std::set<std::string, std::less<>> seen_;
};

Json parse_text(std::string_view text, std::size_t line) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw DataError(std::string("malformed JSON: ") + e.what(), line);
  }
}

OrderedJson box_json(const BoundingBox& b) { return OrderedJson::array({b.x1, b.y1, b.x2, b.y2}); }

Detection detection_from(const Json& j, std::size_t line, const ReadOptions& opts) {
  ObjectReader r(j, "", line);
  Detection d;
  d.video_id = r.string("video_id");
  d.frame = r.integer("frame", 0);
  d.box = r.box("box");
  d.score = r.optional("score") ? r.probability("score") : 1.0;
  r.finish(opts);
  return d;
}

FrameAnnotation annotation_from(const Json& j, std::size_t line, const ReadOptions& opts) {
  ObjectReader r(j, "", line);
  FrameAnnotation a;
  a.video_id = r.string("video_id");
  a.frame = r.integer("frame", 0);
  const Json& hands = r.require("hands");
  if (!hands.is_array()) r.fail("hands", "expected an array");
  for (std::size_t i = 0; i < hands.size(); ++i) {
    ObjectReader hr(hands[i], "hands[" + std::to_string(i) + "]", line);
    HandBox hand;
    hand.box = hr.box("box");
    if (hr.optional("side")) {
      const std::string code = hr.string("side");
      try {
        hand.side = handedness_from_code(code);
      } catch (const std::invalid_argument& e) {
        hr.fail(hr.field_path("side"), e.what());
      }
    }
    hr.finish(opts);
    a.hands.push_back(hand);
  }
  a.annotator = r.optional("annotator") ? r.string("annotator") : std::string();
  a.rev = r.optional("rev") ? r.integer("rev", 0) : 0;
  r.finish(opts);
  return a;
}

TrackRecord track_from(const Json& j, std::size_t line, const ReadOptions& opts) {
  ObjectReader r(j, "", line);
  TrackRecord t;
  t.video_id = r.string("video_id");
  t.frame = r.integer("frame", 0);
  t.box = r.box("box");
  t.score = r.optional("score") ? r.probability("score") : 1.0;
  const std::int64_t identity = r.integer("identity", 0);
  if (identity > std::numeric_limits<int>::max()) r.fail("identity", "out of range");
  t.identity = static_cast<int>(identity);
  const std::string code = r.string("provenance");
  try {
    t.provenance = provenance_from_code(code);
  } catch (const std::invalid_argument& e) {
    r.fail("provenance", e.what());
  }
  r.finish(opts);
  return t;
}

template <typename Record, typename Parse>
std::vector<Record> read_lines(std::istream& in, Parse parse) {
  std::vector<Record> out;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back(parse(parse_text(text, line), line));
  }
  if (in.bad()) throw DataError("read failure");
  return out;
}

template <typename Record>
void write_lines(std::ostream& out, std::span<const Record> records) {
  for (const Record& r : records) out << to_json(r) << '\n';
}

Json parse_document(std::istream& in) {
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw DataError(std::string("malformed JSON document: ") + e.what());
  }
}

}  // namespace

DataError::DataError(std::string message, std::size_t line, std::string field)
    : std::runtime_error(with_line(message, line)),
      line_(line),
      field_(std::move(field)),
      detail_(std::move(message)) {}

std::string to_json(const Detection& d) {
  OrderedJson j;
  j["video_id"] = d.video_id;
  j["frame"] = d.frame;
  j["box"] = box_json(d.box);
  j["score"] = d.score;
  return j.dump();
}

std::string to_json(const FrameAnnotation& a) {
  OrderedJson j;
  j["video_id"] = a.video_id;
  j["frame"] = a.frame;
  j["hands"] = OrderedJson::array();
  for (const HandBox& h : a.hands) {
    OrderedJson hand;
    hand["box"] = box_json(h.box);
    hand["side"] = std::string(to_code(h.side));
    j["hands"].push_back(std::move(hand));
  }
  j["annotator"] = a.annotator;
  j["rev"] = a.rev;
  return j.dump();
}

std::string to_json(const TrackRecord& t) {
  OrderedJson j;
  j["video_id"] = t.video_id;
  j["frame"] = t.frame;
  j["box"] = box_json(t.box);
  j["score"] = t.score;
  j["identity"] = t.identity;
  j["provenance"] = std::string(to_code(t.provenance));
  return j.dump();
}

Detection parse_detection(std::string_view text, const ReadOptions& opts) {
  return detection_from(parse_text(text, 0), 0, opts);
}

FrameAnnotation parse_annotation(std::string_view text, const ReadOptions& opts) {
  return annotation_from(parse_text(text, 0), 0, opts);
}

TrackRecord parse_track(std::string_view text, const ReadOptions& opts) {
  return track_from(parse_text(text, 0), 0, opts);
}

std::vector<Detection> read_detections(std::istream& in, const ReadOptions& opts) {
  return read_lines<Detection>(
      in, [&](const Json& j, std::size_t line) { return detection_from(j, line, opts); });
}

std::vector<FrameAnnotation> read_annotations(std::istream& in, const ReadOptions& opts) {
  return read_lines<FrameAnnotation>(
      in, [&](const Json& j, std::size_t line) { return annotation_from(j, line, opts); });
}

std::vector<TrackRecord> read_tracks(std::istream& in, const ReadOptions& opts) {
  return read_lines<TrackRecord>(
      in, [&](const Json& j, std::size_t line) { return track_from(j, line, opts); });
}

std::vector<FrameAnnotation> read_ground_truth(std::istream& in, const ReadOptions& opts) {
  return read_lines<FrameAnnotation>(in, [&](const Json& j, std::size_t line) {
    if (j.is_object() && j.contains("hands")) return annotation_from(j, line, opts);
    const Detection d = detection_from(j, line, opts);
    FrameAnnotation a;
    a.video_id = d.video_id;
    a.frame = d.frame;
    a.hands.push_back({d.box, Handedness::Unknown});
    return a;
  });
}

void write_detections(std::ostream& out, std::span<const Detection> records) {
  write_lines(out, records);
}

void write_annotations(std::ostream& out, std::span<const FrameAnnotation> records) {
  write_lines(out, records);
}

void write_tracks(std::ostream& out, std::span<const TrackRecord> records) {
  write_lines(out, records);
}

std::vector<VideoManifest> read_manifests(std::istream& in, const ReadOptions& opts) {
  const Json doc = parse_document(in);
  ObjectReader root(doc, "", 0);
  const Json& videos = root.require("videos");
  if (!videos.is_array()) root.fail("videos", "expected an array");
  root.finish(opts);

  std::vector<VideoManifest> out;
  std::set<std::string, std::less<>> ids;
  for (std::size_t i = 0; i < videos.size(); ++i) {
    ObjectReader r(videos[i], "videos[" + std::to_string(i) + "]", 0);
    VideoManifest m;
    m.video_id = r.string("video_id");
    const std::string category = r.string("category");
    try {
      m.category = category_from_code(category);
    } catch (const std::invalid_argument& e) {
      r.fail(r.field_path("category"), e.what());
    }
    m.duration_s = r.number("duration_s");
    m.native_fps = r.number("native_fps");
    const auto width = r.integer("width", 1);
    const auto height = r.integer("height", 1);
    if (width > std::numeric_limits<int>::max() || height > std::numeric_limits<int>::max()) {
      r.fail(r.field_path("width"), "resolution out of range");
    }
    m.width = static_cast<int>(width);
    m.height = static_cast<int>(height);
    r.finish(opts);
    try {
      m.validate();
    } catch (const std::invalid_argument& e) {
      r.fail("videos[" + std::to_string(i) + "]", e.what());
    }
    if (!ids.insert(m.video_id).second) {
      r.fail(r.field_path("video_id"), "duplicate video_id '" + m.video_id + "'");
    }
    out.push_back(std::move(m));
  }
  return out;
}

void write_manifests(std::ostream& out, std::span<const VideoManifest> manifests) {
  OrderedJson doc;
  doc["videos"] = OrderedJson::array();
  for (const VideoManifest& m : manifests) {
    OrderedJson v;
    v["video_id"] = m.video_id;
    v["category"] = std::string(to_code(m.category));
    v["duration_s"] = m.duration_s;
    v["native_fps"] = m.native_fps;
    v["width"] = m.width;
    v["height"] = m.height;
    doc["videos"].push_back(std::move(v));
  }
  out << doc.dump(2) << '\n';
}

AnalysisReport read_report(std::istream& in, const ReadOptions& opts) {
  const Json doc = parse_document(in);
  ObjectReader root(doc, "", 0);
  AnalysisReport report;
  if (root.optional("fps")) {
    report.fps = root.number("fps");
    if (!(*report.fps > 0.0)) root.fail("fps", "must be positive");
  }
  const Json& videos = root.require("videos");
  if (!videos.is_array()) root.fail("videos", "expected an array");
  root.finish(opts);

  for (std::size_t i = 0; i < videos.size(); ++i) {
    const std::string vpath = "videos[" + std::to_string(i) + "]";
    ObjectReader vr(videos[i], vpath, 0);
    VideoMotionReport video;
    video.video_id = vr.string("video_id");
    const Json& ids = vr.require("identities");
    if (!ids.is_array()) vr.fail(vr.field_path("identities"), "expected an array");
    vr.finish(opts);
    for (std::size_t k = 0; k < ids.size(); ++k) {
      ObjectReader r(ids[k], vpath + ".identities[" + std::to_string(k) + "]", 0);
      MotionReport m;
      m.identity = static_cast<int>(r.integer("identity", 0));
      m.path_length = r.number("path_length");
      m.net_displacement = r.number("net_displacement");
      m.path_efficiency = r.number("path_efficiency");
      m.mean_speed = r.number("mean_speed");
      m.max_speed = r.number("max_speed");
      m.frames_observed = static_cast<std::size_t>(r.integer("frames_observed", 0));
      m.gap_count = static_cast<std::size_t>(r.integer("gap_count", 0));
      if (r.optional("mean_speed_px_s")) m.mean_speed_px_s = r.number("mean_speed_px_s");
      if (r.optional("max_speed_px_s")) m.max_speed_px_s = r.number("max_speed_px_s");
      r.finish(opts);
      video.identities.push_back(m);
    }
    report.videos.push_back(std::move(video));
  }
  return report;
}

void write_report(std::ostream& out, const AnalysisReport& report) {
  OrderedJson doc;
  if (report.fps) doc["fps"] = *report.fps;
  doc["videos"] = OrderedJson::array();
  for (const VideoMotionReport& video : report.videos) {
    OrderedJson v;
    v["video_id"] = video.video_id;
    v["identities"] = OrderedJson::array();
    for (const MotionReport& m : video.identities) {
      OrderedJson e;
      e["identity"] = m.identity;
      e["path_length"] = m.path_length;
      e["net_displacement"] = m.net_displacement;
      e["path_efficiency"] = m.path_efficiency;
      e["mean_speed"] = m.mean_speed;
      e["max_speed"] = m.max_speed;
      e["frames_observed"] = m.frames_observed;
      e["gap_count"] = m.gap_count;
      if (m.mean_speed_px_s) e["mean_speed_px_s"] = *m.mean_speed_px_s;
      if (m.max_speed_px_s) e["max_speed_px_s"] = *m.max_speed_px_s;
      v["identities"].push_back(std::move(e));
    }
    doc["videos"].push_back(std::move(v));
  }
  out << doc.dump(2) << '\n';
}

}  // namespace handtrack
