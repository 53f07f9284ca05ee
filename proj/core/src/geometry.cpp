#include "handtrack/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace handtrack {

bool BoundingBox::valid() const noexcept {
  return std::isfinite(x1) && std::isfinite(y1) && std::isfinite(x2) &&
         std::isfinite(y2) && x2 >= x1 && y2 >= y1;
}

void require_valid(const BoundingBox& b) {
  if (!b.valid()) {
    throw GeometryError("invalid bounding box " + to_string(b));
  }
}

double iou(const BoundingBox& a, const BoundingBox& b) {
  require_valid(a);
  require_valid(b);

  const double iw = std::max(0.0, std::min(a.x2, b.x2) - std::max(a.x1, b.x1));
  const double ih = std::max(0.0, std::min(a.y2, b.y2) - std::max(a.y1, b.y1));
  const double inter = iw * ih;
  const double uni = a.area() + b.area() - inter;
  if (uni <= 0.0) {
    return 0.0;
  }
  return std::clamp(inter / uni, 0.0, 1.0);
}

CsrBox to_csr(const BoundingBox& b) {
  require_valid(b);
  if (b.height() <= 0.0) {
    throw GeometryError("aspect ratio undefined for zero-height box " + to_string(b));
  }
  const double w = b.width();
  const double h = b.height();
  return {b.x1 + w / 2.0, b.y1 + h / 2.0, w * h, w / h};
}

BoundingBox from_csr(const CsrBox& c) {
  if (!(c.s >= 0.0) || !(c.r > 0.0) || !std::isfinite(c.s) || !std::isfinite(c.r) ||
      !std::isfinite(c.u) || !std::isfinite(c.v)) {
    throw GeometryError("invalid csr box (requires s >= 0, r > 0)");
  }
  const double w = std::sqrt(c.s * c.r);
  const double h = w > 0.0 ? c.s / w : 0.0;
  return {c.u - w / 2.0, c.v - h / 2.0, c.u + w / 2.0, c.v + h / 2.0};
}

Point2 center(const BoundingBox& b) {
  require_valid(b);
  return {(b.x1 + b.x2) / 2.0, (b.y1 + b.y2) / 2.0};
}

std::string to_string(const BoundingBox& b) {
  std::ostringstream os;
  os << '(' << b.x1 << ", " << b.y1 << ", " << b.x2 << ", " << b.y2 << ')';
  return os.str();
}

}  // namespace handtrack
