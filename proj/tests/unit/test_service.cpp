#include <gtest/gtest.h>

#include <atomic>
#include <sstream>
#include <thread>

#include "handtrack/serialization.hpp"
#include "handtrack_app/annotation_store.hpp"
#include "handtrack_app/service.hpp"
#include "temp_dir.hpp"

#include <httplib.h>
#include <json.hpp>

namespace handtrack::app {
namespace {

using handtrack::testing::spit;
using handtrack::testing::TempDir;
using Json = nlohmann::json;

class ServiceTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::ostringstream manifest;
    const std::vector<VideoManifest> ms = {{"v1", SurgeryCategory::Breast, 1800, 30, 1280, 720}};
    write_manifests(manifest, ms);
    spit(dir.path() / "manifest.json", manifest.str());
    spit(dir.path() / "frames" / "v1" / "5400.png", "not really a png");
    spit(dir.path() / "tracks" / "v1.jsonl",
         R"({"video_id":"v1","frame":3,"box":[1.0,2.0,3.0,4.0],"score":0.5,"identity":0,"provenance":"det"})"
         "\n");

    service = std::make_unique<AnnotationService>(ServiceConfig{dir.path(), std::nullopt});
    port = service->bind_to_any_port("127.0.0.1");
    ASSERT_GT(port, 0);
    thread = std::thread([this] { service->listen_after_bind(); });
    service->wait_until_ready();
  }

  void TearDown() override {
    service->stop();
    if (thread.joinable()) thread.join();
  }

  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port);
    c.set_connection_timeout(5);
    c.set_read_timeout(5);
    return c;
  }

  static std::string doc(std::int64_t rev, const std::string& box = "[10,10,50,60]") {
    return R"({"video_id":"v1","frame":5400,"hands":[{"box":)" + box +
           R"(,"side":"L"}],"annotator":"a","rev":)" + std::to_string(rev) + "}";
  }

  TempDir dir;
  std::unique_ptr<AnnotationService> service;
  std::thread thread;
  int port = 0;
};

TEST_F(ServiceTest, ListsVideosAndSampledFrames) {
  auto c = client();
  auto videos = c.Get("/api/videos");
  ASSERT_TRUE(videos);
  EXPECT_EQ(videos->status, 200);
  EXPECT_EQ(Json::parse(videos->body).at("videos").size(), 1u);

  auto frames = c.Get("/api/videos/v1/frames");
  ASSERT_TRUE(frames);
  const auto j = Json::parse(frames->body);
  ASSERT_EQ(j.at("frames").size(), 10u);
  EXPECT_EQ(j.at("frames")[0].at("frame"), 5400);

  auto image = c.Get("/api/frames/v1/5400");
  ASSERT_TRUE(image);
  EXPECT_EQ(image->status, 200);
  EXPECT_EQ(image->get_header_value("Content-Type"), "image/png");
  EXPECT_EQ(c.Get("/api/frames/v1/1")->status, 404);
  EXPECT_EQ(c.Get("/api/videos/nope/frames")->status, 404);
}

TEST_F(ServiceTest, AnnotationRoundTrip) {
  auto c = client();
  auto empty = c.Get("/api/annotations/v1/5400");
  ASSERT_TRUE(empty);
  EXPECT_EQ(Json::parse(empty->body).at("rev"), 0);

  auto put = c.Put("/api/annotations/v1/5400", doc(0), "application/json");
  ASSERT_TRUE(put);
  ASSERT_EQ(put->status, 200) << put->body;
  EXPECT_EQ(Json::parse(put->body).at("rev"), 1);

  auto get = c.Get("/api/annotations/v1/5400");
  ASSERT_TRUE(get);
  EXPECT_EQ(get->body, put->body);
  const auto stored = parse_annotation(get->body);
  ASSERT_EQ(stored.hands.size(), 1u);
  EXPECT_EQ(stored.hands[0].box, (BoundingBox{10, 10, 50, 60}));

  // Saving what was loaded reproduces the same boxes.
  auto again = c.Put("/api/annotations/v1/5400", get->body, "application/json");
  ASSERT_EQ(again->status, 200);
  EXPECT_EQ(parse_annotation(again->body).hands, stored.hands);
}

TEST_F(ServiceTest, ValidationErrors) {
  auto c = client();
  auto inverted = c.Put("/api/annotations/v1/5400", doc(0, "[50,10,10,60]"), "application/json");
  ASSERT_TRUE(inverted);
  EXPECT_EQ(inverted->status, 422);
  EXPECT_EQ(Json::parse(inverted->body).at("path"), "hands[0].box");

  EXPECT_EQ(c.Put("/api/annotations/v1/5400", "{oops", "application/json")->status, 400);
  EXPECT_EQ(c.Put("/api/annotations/v1/1", doc(0), "application/json")->status, 422);
  EXPECT_EQ(c.Get("/api/annotations/v1/-3")->status, 400);
  EXPECT_EQ(c.Get("/api/annotations/zz/1")->status, 404);
}

TEST_F(ServiceTest, StaleRevisionConflicts) {
  auto c = client();
  ASSERT_EQ(c.Put("/api/annotations/v1/5400", doc(0), "application/json")->status, 200);
  auto stale = c.Put("/api/annotations/v1/5400", doc(0), "application/json");
  ASSERT_TRUE(stale);
  EXPECT_EQ(stale->status, 409);
  EXPECT_EQ(Json::parse(stale->body).at("current_rev"), 1);
}

TEST_F(ServiceTest, ConcurrentSavesOnSameRevisionYieldOneConflict) {
  constexpr int kWriters = 2;
  std::atomic<int> ok{0}, conflict{0}, other{0};
  std::vector<std::thread> writers;
  for (int i = 0; i < kWriters; ++i) {
    writers.emplace_back([&] {
      auto c = client();
      auto r = c.Put("/api/annotations/v1/5400", doc(0), "application/json");
      if (r && r->status == 200) ++ok;
      else if (r && r->status == 409) ++conflict;
      else ++other;
    });
  }
  for (auto& t : writers) t.join();
  EXPECT_EQ(ok.load(), 1);
  EXPECT_EQ(conflict.load(), 1);
  EXPECT_EQ(other.load(), 0);
}

TEST_F(ServiceTest, ServesTracks) {
  auto r = client().Get("/api/tracks/v1");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 200);
  std::istringstream in(r->body);
  EXPECT_EQ(read_tracks(in).size(), 1u);
}

TEST(AnnotationStore, RejectsUnsafeIds) {
  EXPECT_FALSE(is_safe_video_id(""));
  EXPECT_FALSE(is_safe_video_id(".."));
  EXPECT_FALSE(is_safe_video_id("a/b"));
  EXPECT_TRUE(is_safe_video_id("case_01-b"));
}

}  // namespace
}  // namespace handtrack::app
