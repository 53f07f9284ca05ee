#pragma once

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <stdexcept>
#include <string>

#include "handtrack/records.hpp"

namespace handtrack::app {

class RevisionConflict : public std::runtime_error {
 public:
  RevisionConflict(std::int64_t submitted, std::int64_t current);
  std::int64_t current() const noexcept { return current_; }

 private:
  std::int64_t current_;
};

/// File-backed per-frame annotation documents under <root>/<video>/<frame>.json.
/// Writes use optimistic concurrency: a PUT carries the revision it was based
/// on and succeeds only if that is still the stored revision.
class AnnotationStore {
 public:
  explicit AnnotationStore(std::filesystem::path root);

  /// Stored document, or an empty rev-0 document for an unannotated frame.
  FrameAnnotation get(const std::string& video_id, std::int64_t frame) const;

  /// Validates, checks `doc.rev` against the stored revision and persists the
  /// document with rev + 1. Returns what was stored.
  FrameAnnotation put(FrameAnnotation doc);

 private:
  std::filesystem::path path_for(const std::string& video_id, std::int64_t frame) const;
  FrameAnnotation load(const std::string& video_id, std::int64_t frame) const;

  std::filesystem::path root_;
  mutable std::mutex mutex_;
};

/// Rejects empty ids and anything that could escape a directory.
bool is_safe_video_id(const std::string& id);

}  // namespace handtrack::app
