#include "handtrack/focal_loss.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace handtrack {
namespace {

void check_common(const FocalLossInput& in) {
  if (!(in.p >= 0.0 && in.p <= 1.0)) {
    throw std::invalid_argument("focal loss: p must lie in [0, 1]");
  }
  if (!(in.gamma >= 0.0) || !std::isfinite(in.gamma)) {
    throw std::invalid_argument("focal loss: gamma must be finite and >= 0");
  }
  if (in.y != Label::Positive && in.y != Label::Negative) {
    throw std::invalid_argument("focal loss: label must be -1 or +1");
  }
}

}  // namespace

double focal_loss(const FocalLossInput& in) {
  check_common(in);
  const double pt = in.p_t();
  if (pt >= 1.0) {
    return 0.0;
  }
  const double modulating = std::pow(1.0 - pt, in.gamma);
  return -modulating * std::log(std::max(pt, kLogClampEpsilon));
}

double focal_loss_grad(const FocalLossInput& in) {
  check_common(in);
  if (!(in.p > 0.0 && in.p < 1.0)) {
    throw std::invalid_argument("focal loss gradient: p must lie strictly inside (0, 1)");
  }
  const double pt = in.p_t();
  const double q = 1.0 - pt;

  // dFL/dp_t = gamma (1-p_t)^(gamma-1) log(p_t) - (1-p_t)^gamma / p_t
  double d_dpt = -std::pow(q, in.gamma) / pt;
  if (in.gamma != 0.0) {
    d_dpt += in.gamma * std::pow(q, in.gamma - 1.0) * std::log(pt);
  }
  // dp_t/dp = y
  return in.y == Label::Positive ? d_dpt : -d_dpt;
}

}  // namespace handtrack
