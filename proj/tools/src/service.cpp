#include "handtrack_app/service.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

// Project headers pull in Eigen, which must precede <resolv.h> (via httplib)
// because the latter defines a `_res` macro.
#include "handtrack/dataset.hpp"
#include "handtrack/serialization.hpp"
#include "handtrack_app/annotation_store.hpp"

#include <httplib.h>
#include <json.hpp>

namespace handtrack::app {
namespace {

namespace fs = std::filesystem;
using OrderedJson = nlohmann::ordered_json;

constexpr const char* kJson = "application/json";
constexpr const char* kNdjson = "application/x-ndjson";

void send_error(httplib::Response& res, int status, const std::string& message,
                const std::string& path = {}) {
  OrderedJson body;
  body["error"] = message;
  if (!path.empty()) body["path"] = path;
  res.status = status;
  res.set_content(body.dump(), kJson);
}

std::optional<std::int64_t> parse_frame(const std::string& text) {
  std::int64_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || value < 0) return std::nullopt;
  return value;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

struct AnnotationService::Impl {
  explicit Impl(ServiceConfig cfg)
      : config(std::move(cfg)), store(config.data_dir / "annotations") {
    const fs::path manifest_path = config.data_dir / "manifest.json";
    std::ifstream in(manifest_path);
    if (!in) {
      throw std::runtime_error("service: missing " + manifest_path.string());
    }
    manifests = read_manifests(in);
    if (config.ui_dir && !server.set_mount_point("/", config.ui_dir->string())) {
      throw std::runtime_error("service: cannot mount UI directory " + config.ui_dir->string());
    }
    routes();
  }

  const VideoManifest* find_video(const std::string& id) const {
    for (const auto& m : manifests) {
      if (m.video_id == id) return &m;
    }
    return nullptr;
  }

  void routes() {
    server.Get("/api/videos", [this](const httplib::Request&, httplib::Response& res) {
      std::ostringstream out;
      write_manifests(out, manifests);
      res.set_content(out.str(), kJson);
    });

    server.Get("/api/videos/:video/frames", [this](const httplib::Request& req,
                                                   httplib::Response& res) {
      const VideoManifest* m = find_video(req.path_params.at("video"));
      if (!m) return send_error(res, 404, "unknown video");
      const SamplingPlan plan = compute_sampling_plan(*m);
      OrderedJson body;
      body["video_id"] = plan.video_id;
      body["working_fps"] = plan.working_fps;
      body["window"] = OrderedJson::array({plan.window_start_s, plan.window_end_s});
      body["frames"] = OrderedJson::array();
      for (std::int64_t f : plan.frames) {
        OrderedJson entry;
        entry["frame"] = f;
        entry["image"] = "/api/frames/" + plan.video_id + "/" + std::to_string(f);
        body["frames"].push_back(std::move(entry));
      }
      res.set_content(body.dump(), kJson);
    });

    server.Get("/api/frames/:video/:frame", [this](const httplib::Request& req,
                                                   httplib::Response& res) {
      const std::string video = req.path_params.at("video");
      const auto frame = parse_frame(req.path_params.at("frame"));
      if (!is_safe_video_id(video) || !frame) return send_error(res, 400, "bad frame reference");
      const fs::path dir = config.data_dir / "frames" / video;
      for (const auto& [ext, type] : {std::pair{".jpg", "image/jpeg"}, std::pair{".png", "image/png"}}) {
        const fs::path path = dir / (std::to_string(*frame) + ext);
        if (fs::exists(path)) {
          res.set_content(read_file(path), type);
          return;
        }
      }
      send_error(res, 404, "frame image not found");
    });

    server.Get("/api/annotations/:video/:frame", [this](const httplib::Request& req,
                                                        httplib::Response& res) {
      const std::string video = req.path_params.at("video");
      const auto frame = parse_frame(req.path_params.at("frame"));
      if (!is_safe_video_id(video) || !frame) return send_error(res, 400, "bad frame reference");
      if (!find_video(video)) return send_error(res, 404, "unknown video");
      res.set_content(to_json(store.get(video, *frame)), kJson);
    });

    server.Put("/api/annotations/:video/:frame", [this](const httplib::Request& req,
                                                        httplib::Response& res) {
      const std::string video = req.path_params.at("video");
      const auto frame = parse_frame(req.path_params.at("frame"));
      if (!is_safe_video_id(video) || !frame) return send_error(res, 400, "bad frame reference");
      if (!find_video(video)) return send_error(res, 404, "unknown video");
      try {
        FrameAnnotation doc = parse_annotation(req.body);
        if (doc.video_id != video) return send_error(res, 422, "video_id does not match URL", "video_id");
        if (doc.frame != *frame) return send_error(res, 422, "frame does not match URL", "frame");
        res.set_content(to_json(store.put(std::move(doc))), kJson);
      } catch (const RevisionConflict& e) {
        OrderedJson body;
        body["error"] = e.what();
        body["current_rev"] = e.current();
        res.status = 409;
        res.set_content(body.dump(), kJson);
      } catch (const DataError& e) {
        send_error(res, e.field().empty() ? 400 : 422, e.detail(), e.field());
      }
    });

    server.Get("/api/tracks/:video", [this](const httplib::Request& req, httplib::Response& res) {
      const std::string video = req.path_params.at("video");
      if (!is_safe_video_id(video)) return send_error(res, 400, "bad video reference");
      if (!find_video(video)) return send_error(res, 404, "unknown video");
      const fs::path path = config.data_dir / "tracks" / (video + ".jsonl");
      std::vector<TrackRecord> records;
      if (fs::exists(path)) {
        std::ifstream in(path);
        records = read_tracks(in);
      }
      std::ostringstream out;
      write_tracks(out, records);
      res.set_content(out.str(), kNdjson);
    });

    server.set_exception_handler([](const httplib::Request&, httplib::Response& res,
                                    std::exception_ptr ep) {
      try {
        std::rethrow_exception(ep);
      } catch (const std::exception& e) {
        send_error(res, 500, e.what());
      } catch (...) {
        send_error(res, 500, "internal error");
      }
    });
  }

  ServiceConfig config;
  AnnotationStore store;
  std::vector<VideoManifest> manifests;
  httplib::Server server;
};

AnnotationService::AnnotationService(ServiceConfig config)
    : impl_(std::make_unique<Impl>(std::move(config))) {}

AnnotationService::~AnnotationService() = default;

bool AnnotationService::listen(const std::string& host, int port) {
  return impl_->server.listen(host, port);
}

int AnnotationService::bind_to_any_port(const std::string& host) {
  return impl_->server.bind_to_any_port(host);
}

bool AnnotationService::listen_after_bind() { return impl_->server.listen_after_bind(); }

void AnnotationService::wait_until_ready() const { impl_->server.wait_until_ready(); }

void AnnotationService::stop() { impl_->server.stop(); }

}  // namespace handtrack::app
