#include <gtest/gtest.h>

#include <cmath>

#include "handtrack/anchors.hpp"

namespace handtrack {
namespace {

TEST(Anchors, SmallGridByHand) {
  AnchorConfig cfg;
  cfg.strides = {8};
  cfg.scales = {1};
  cfg.ratios = {1};
  cfg.base_size = 8;
  const auto anchors = generate_anchors(cfg, 16, 16);
  // Hand-enumerated grid: centers (4,4), (12,4), (4,12), (12,12), 8x8 each.
  const std::vector<BoundingBox> expected = {
      {0, 0, 8, 8}, {8, 0, 16, 8}, {0, 8, 8, 16}, {8, 8, 16, 16}};
  EXPECT_EQ(anchors, expected);
}

TEST(Anchors, UnitRatioIsSquare) {
  AnchorConfig cfg;
  cfg.strides = {8, 16, 32};
  cfg.scales = {1.0, 1.26, 1.59};
  cfg.ratios = {1.0};
  cfg.base_size = 32;
  for (const auto& a : generate_anchors(cfg, 100, 60)) {
    ASSERT_NEAR(a.width(), a.height(), 1e-9);
  }
}

TEST(Anchors, RatioIsWidthOverHeight) {
  AnchorConfig cfg;
  cfg.ratios = {0.5, 2.0};
  const auto anchors = generate_anchors(cfg, 8, 8);
  ASSERT_EQ(anchors.size(), 2u);
  EXPECT_NEAR(anchors[0].width() / anchors[0].height(), 0.5, 1e-12);
  EXPECT_NEAR(anchors[1].width() / anchors[1].height(), 2.0, 1e-12);
  EXPECT_NEAR(anchors[0].area(), 64.0, 1e-9);
}

TEST(Anchors, CountFormula) {
  AnchorConfig cfg;
  cfg.strides = {8, 16, 32};
  cfg.scales = {1.0, 1.5};
  cfg.ratios = {0.5, 1.0, 2.0};
  const double w = 100;
  const double h = 75;
  std::size_t expected = 0;
  for (double s : cfg.strides) {
    expected += static_cast<std::size_t>(std::ceil(w / s) * std::ceil(h / s)) * 2 * 3;
  }
  EXPECT_EQ(generate_anchors(cfg, w, h).size(), expected);
  EXPECT_EQ(expected_anchor_count(cfg, w, h), expected);
}

TEST(Anchors, RejectsEmptyOrNonPositiveConfig) {
  AnchorConfig cfg;
  cfg.scales.clear();
  EXPECT_THROW(generate_anchors(cfg, 10, 10), std::invalid_argument);
  cfg = {};
  cfg.strides = {0};
  EXPECT_THROW(generate_anchors(cfg, 10, 10), std::invalid_argument);
  cfg = {};
  EXPECT_THROW(generate_anchors(cfg, 0, 10), std::invalid_argument);
}

TEST(AnchorAssignment, IdenticalAnchorIsPositive) {
  const std::vector<BoundingBox> anchors = {{0, 0, 10, 10}, {50, 50, 60, 60}};
  const std::vector<BoundingBox> gts = {{50, 50, 60, 60}};
  const auto a = assign_anchors(anchors, gts);
  ASSERT_EQ(a.labels.size(), 2u);
  EXPECT_FALSE(a.labels[0].positive());
  ASSERT_TRUE(a.labels[1].positive());
  EXPECT_EQ(*a.labels[1].gt_index, 0u);
  EXPECT_DOUBLE_EQ(a.labels[1].iou, 1.0);
}

TEST(AnchorAssignment, EmptyGroundTruthIsAllBackground) {
  const std::vector<BoundingBox> anchors = {{0, 0, 10, 10}, {5, 5, 15, 15}};
  const auto a = assign_anchors(anchors, {});
  EXPECT_EQ(a.background_count(), 2u);
  EXPECT_EQ(a.positive_count(), 0u);
}

TEST(AnchorAssignment, BelowHalfIsBackground) {
  // Widths 10 vs 10 shifted so IoU = 0.45: overlap w satisfies w / (20 - w) = 0.45.
  const double w = 0.45 * 20.0 / 1.45;
  const BoundingBox gt{0, 0, 10, 1};
  const BoundingBox anchor{10 - w, 0, 20 - w, 1};
  const auto a = assign_anchors(std::vector<BoundingBox>{anchor}, std::vector<BoundingBox>{gt});
  EXPECT_NEAR(a.labels[0].iou, 0.45, 1e-12);
  EXPECT_FALSE(a.labels[0].positive());
}

TEST(AnchorAssignment, ExactlyHalfIsPositive) {
  // [0,10] inside [0,20]: 10 / 20 = 0.5 exactly.
  const auto a = assign_anchors(std::vector<BoundingBox>{{0, 0, 10, 1}},
                                std::vector<BoundingBox>{{0, 0, 20, 1}});
  EXPECT_EQ(a.labels[0].iou, 0.5);
  EXPECT_TRUE(a.labels[0].positive());
}

TEST(AnchorAssignment, PicksBestGroundTruthAndPartitions) {
  AnchorConfig cfg;
  cfg.strides = {8, 16};
  cfg.scales = {1.0, 2.0};
  cfg.ratios = {0.5, 1.0, 2.0};
  cfg.base_size = 16;
  const auto anchors = generate_anchors(cfg, 64, 64);
  const std::vector<BoundingBox> gts = {{4, 4, 20, 20}, {30, 30, 62, 62}};
  const auto a = assign_anchors(anchors, gts);
  ASSERT_EQ(a.labels.size(), anchors.size());
  EXPECT_EQ(a.positive_count() + a.background_count(), anchors.size());
  EXPECT_GT(a.positive_count(), 0u);
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    const double best = std::max(iou(anchors[i], gts[0]), iou(anchors[i], gts[1]));
    EXPECT_DOUBLE_EQ(a.labels[i].iou, best);
    EXPECT_EQ(a.labels[i].positive(), best >= 0.5);
    if (a.labels[i].positive()) {
      EXPECT_DOUBLE_EQ(iou(anchors[i], gts[*a.labels[i].gt_index]), best);
    }
  }
}

}  // namespace
}  // namespace handtrack
