#pragma once

#include <stdexcept>
#include <string>

namespace handtrack {

/// Axis-aligned box in continuous pixel coordinates, origin top-left.
/// Width is x2 - x1 with no pixel-inclusive "+1".
struct BoundingBox {
  double x1 = 0.0;
  double y1 = 0.0;
  double x2 = 0.0;
  double y2 = 0.0;

  double width() const noexcept { return x2 - x1; }
  double height() const noexcept { return y2 - y1; }
  double area() const noexcept { return width() * height(); }

  /// True when both extents are non-negative and all coordinates are finite.
  bool valid() const noexcept;

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

/// Measurement-space box: center (u, v), scale s = area, aspect ratio r = w / h.
struct CsrBox {
  double u = 0.0;
  double v = 0.0;
  double s = 0.0;
  double r = 1.0;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws GeometryError on negative extents or non-finite coordinates.
void require_valid(const BoundingBox& b);

/// Intersection over union. Zero-union pairs yield 0.
double iou(const BoundingBox& a, const BoundingBox& b);

CsrBox to_csr(const BoundingBox& b);
BoundingBox from_csr(const CsrBox& c);

Point2 center(const BoundingBox& b);

std::string to_string(const BoundingBox& b);

}  // namespace handtrack
