#pragma once

#include <stdexcept>

#include <Eigen/Core>

#include "handtrack/geometry.hpp"

namespace handtrack {

using StateVector = Eigen::Matrix<double, 7, 1>;
using StateCovariance = Eigen::Matrix<double, 7, 7>;
using MeasurementVector = Eigen::Matrix<double, 4, 1>;

/// Noise magnitudes for the constant-velocity box model. State layout is
/// [u, v, s, r, du, dv, ds]; the aspect ratio has no velocity.
struct KalmanNoise {
  /// Initial variances of [u, v, s, r]; velocities start at initial_velocity_variance.
  Eigen::Vector4d initial_measured_variance{10.0, 10.0, 100.0, 0.01};
  double initial_velocity_variance = 1e4;
  Eigen::Matrix<double, 7, 1> process_variance =
      (Eigen::Matrix<double, 7, 1>() << 1.0, 1.0, 1.0, 1e-4, 0.01, 0.01, 1e-4).finished();
  Eigen::Vector4d measurement_variance{1.0, 1.0, 10.0, 0.01};
  /// Lower bound on the predicted area, px^2.
  double scale_floor = 1.0;
};

enum class TrackStatus { Tentative, Active, Dormant };

struct TrackState {
  StateVector mean = StateVector::Zero();
  StateCovariance covariance = StateCovariance::Identity();
  int identity = 0;
  int hits = 0;    ///< consecutive matched frames
  int misses = 0;  ///< consecutive unmatched frames
  TrackStatus status = TrackStatus::Tentative;

  CsrBox measurement() const { return {mean(0), mean(1), mean(2), mean(3)}; }
  BoundingBox box() const { return from_csr(measurement()); }
};

struct Prediction {
  CsrBox predicted;
  TrackState state;
};

class KalmanError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Symmetric with smallest eigenvalue >= -tolerance.
bool is_valid_covariance(const StateCovariance& p, double tolerance = 1e-9);

TrackState kf_init(const CsrBox& measurement, int identity, const KalmanNoise& noise = {});

/// Constant-velocity step; area floored at noise.scale_floor. Dormant tracks throw.
Prediction kf_predict(const TrackState& state, const KalmanNoise& noise = {});

/// Kalman correction against [u, v, s, r]. Increments hits and clears misses.
TrackState kf_update(const TrackState& state, const CsrBox& z, const KalmanNoise& noise = {});

}  // namespace handtrack
