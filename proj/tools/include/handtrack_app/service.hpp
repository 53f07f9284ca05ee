#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

namespace handtrack::app {

struct ServiceConfig {
  std::filesystem::path data_dir;
  /// Optional directory of static UI assets mounted at "/".
  std::optional<std::filesystem::path> ui_dir;
};

/// HTTP/JSON backend for the annotation and track-review UI.
///
/// Data directory layout:
///   manifest.json                      video manifests
///   frames/<video>/<frame>.{jpg,png}   pre-extracted frames
///   annotations/<video>/<frame>.json   written by the service
///   tracks/<video>.jsonl               tracker output for review
class AnnotationService {
 public:
  explicit AnnotationService(ServiceConfig config);
  ~AnnotationService();
  AnnotationService(const AnnotationService&) = delete;
  AnnotationService& operator=(const AnnotationService&) = delete;

  /// Blocks until stop().
  bool listen(const std::string& host, int port);
  /// Binds an ephemeral port and returns it; follow with listen_after_bind().
  int bind_to_any_port(const std::string& host);
  bool listen_after_bind();
  void wait_until_ready() const;
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace handtrack::app
