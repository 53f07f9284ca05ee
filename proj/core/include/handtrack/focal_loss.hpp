#pragma once

namespace handtrack {

/// Ground-truth label for the binary hand / background classifier.
enum class Label : int { Negative = -1, Positive = 1 };

inline constexpr double kDefaultFocusing = 2.0;
inline constexpr double kLogClampEpsilon = 1e-12;

struct FocalLossInput {
  double p = 0.5;                  ///< estimated probability of the positive class, in [0, 1]
  Label y = Label::Positive;
  double gamma = kDefaultFocusing; ///< focusing parameter, >= 0

  /// Probability assigned to the true class: p for positives, 1 - p otherwise.
  double p_t() const noexcept { return y == Label::Positive ? p : 1.0 - p; }
};

/// -(1 - p_t)^gamma * log(p_t). p_t is clamped to [eps, 1] before the log
/// only, so the loss is exactly zero when p_t == 1.
double focal_loss(const FocalLossInput& in);

/// d(focal_loss)/dp. Requires p strictly inside (0, 1); endpoints throw
/// instead of being clamped.
double focal_loss_grad(const FocalLossInput& in);

}  // namespace handtrack
