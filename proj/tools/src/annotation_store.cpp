#include "handtrack_app/annotation_store.hpp"

#include <fstream>
#include <sstream>

#include "handtrack/serialization.hpp"

namespace handtrack::app {

RevisionConflict::RevisionConflict(std::int64_t submitted, std::int64_t current)
    : std::runtime_error("revision conflict: submitted rev " + std::to_string(submitted) +
                         ", stored rev " + std::to_string(current)),
      current_(current) {}

bool is_safe_video_id(const std::string& id) {
  if (id.empty() || id == "." || id == "..") return false;
  for (char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '-' || c == '_' || c == '.';
    if (!ok) return false;
  }
  return true;
}

AnnotationStore::AnnotationStore(std::filesystem::path root) : root_(std::move(root)) {
  std::filesystem::create_directories(root_);
}

std::filesystem::path AnnotationStore::path_for(const std::string& video_id,
                                                std::int64_t frame) const {
  if (!is_safe_video_id(video_id)) {
    throw DataError("unsafe video_id '" + video_id + "'", 0, "video_id");
  }
  if (frame < 0) throw DataError("frame must be >= 0", 0, "frame");
  return root_ / video_id / (std::to_string(frame) + ".json");
}

FrameAnnotation AnnotationStore::load(const std::string& video_id, std::int64_t frame) const {
  const auto path = path_for(video_id, frame);
  std::ifstream in(path);
  if (!in) {
    FrameAnnotation empty;
    empty.video_id = video_id;
    empty.frame = frame;
    return empty;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_annotation(buffer.str());
}

FrameAnnotation AnnotationStore::get(const std::string& video_id, std::int64_t frame) const {
  std::lock_guard lock(mutex_);
  return load(video_id, frame);
}

FrameAnnotation AnnotationStore::put(FrameAnnotation doc) {
  for (std::size_t i = 0; i < doc.hands.size(); ++i) {
    const auto& b = doc.hands[i].box;
    if (!b.valid()) {
      throw DataError("invalid box (negative extent)", 0,
                      "hands[" + std::to_string(i) + "].box");
    }
  }
  const auto path = path_for(doc.video_id, doc.frame);

  std::lock_guard lock(mutex_);
  const FrameAnnotation current = load(doc.video_id, doc.frame);
  if (doc.rev != current.rev) {
    throw RevisionConflict(doc.rev, current.rev);
  }
  doc.rev = current.rev + 1;

  std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << to_json(doc);
    if (!out) throw std::runtime_error("failed to write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
  return doc;
}

}  // namespace handtrack::app
