#include "handtrack/kalman.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace handtrack {
namespace {

using MeasurementMatrix = Eigen::Matrix<double, 4, 7>;
using GainMatrix = Eigen::Matrix<double, 7, 4>;

StateCovariance transition() {
  StateCovariance f = StateCovariance::Identity();
  f(0, 4) = 1.0;
  f(1, 5) = 1.0;
  f(2, 6) = 1.0;
  return f;
}

MeasurementMatrix observation() {
  MeasurementMatrix h = MeasurementMatrix::Zero();
  h.leftCols<4>().setIdentity();
  return h;
}

void require_measurable(const CsrBox& c) {
  if (!(c.s > 0.0) || !(c.r > 0.0) || !std::isfinite(c.u) || !std::isfinite(c.v) ||
      !std::isfinite(c.s) || !std::isfinite(c.r)) {
    throw GeometryError("degenerate Kalman measurement (requires s > 0, r > 0)");
  }
}

void check_covariance(const StateCovariance& p, const char* where) {
  if (!is_valid_covariance(p)) {
    throw KalmanError(std::string("covariance lost symmetry or positive semidefiniteness after ") +
                      where);
  }
}

}  // namespace

bool is_valid_covariance(const StateCovariance& p, double tolerance) {
  if (!p.allFinite()) return false;
  if ((p - p.transpose()).cwiseAbs().maxCoeff() > tolerance) return false;
  Eigen::SelfAdjointEigenSolver<StateCovariance> solver(p, Eigen::EigenvaluesOnly);
  return solver.info() == Eigen::Success && solver.eigenvalues().minCoeff() >= -tolerance;
}

TrackState kf_init(const CsrBox& measurement, int identity, const KalmanNoise& noise) {
  require_measurable(measurement);

  TrackState state;
  state.mean << measurement.u, measurement.v, measurement.s, measurement.r, 0.0, 0.0, 0.0;
  state.covariance.setZero();
  state.covariance.diagonal().head<4>() = noise.initial_measured_variance;
  state.covariance.diagonal().tail<3>().setConstant(noise.initial_velocity_variance);
  state.identity = identity;
  state.hits = 1;
  state.misses = 0;
  state.status = TrackStatus::Tentative;
  return state;
}

Prediction kf_predict(const TrackState& state, const KalmanNoise& noise) {
  if (state.status == TrackStatus::Dormant) {
    throw KalmanError("cannot predict a dormant track");
  }
  static const StateCovariance f = transition();

  TrackState next = state;
  next.mean = f * state.mean;
  next.mean(2) = std::max(next.mean(2), noise.scale_floor);
  next.covariance = f * state.covariance * f.transpose();
  next.covariance.diagonal() += noise.process_variance;
  next.covariance = (0.5 * (next.covariance + next.covariance.transpose())).eval();
  check_covariance(next.covariance, "predict");

  return {next.measurement(), next};
}

TrackState kf_update(const TrackState& state, const CsrBox& z, const KalmanNoise& noise) {
  if (state.status == TrackStatus::Dormant) {
    throw KalmanError("cannot update a dormant track");
  }
  require_measurable(z);
  static const MeasurementMatrix h = observation();

  const MeasurementVector measured(z.u, z.v, z.s, z.r);
  const Eigen::Matrix4d r = noise.measurement_variance.asDiagonal();
  const Eigen::Matrix4d innovation_cov = h * state.covariance * h.transpose() + r;

  const Eigen::LLT<Eigen::Matrix4d> llt(innovation_cov);
  if (llt.info() != Eigen::Success) {
    throw KalmanError("singular innovation covariance");
  }
  // K = P H^T S^-1, solved as S K^T = H P.
  const GainMatrix gain = llt.solve(h * state.covariance).transpose();

  TrackState next = state;
  next.mean = state.mean + gain * (measured - h * state.mean);

  // Joseph form keeps the posterior symmetric PSD.
  const StateCovariance i_kh = StateCovariance::Identity() - gain * h;
  next.covariance = i_kh * state.covariance * i_kh.transpose() + gain * r * gain.transpose();
  next.covariance = (0.5 * (next.covariance + next.covariance.transpose())).eval();
  check_covariance(next.covariance, "update");

  next.hits = state.hits + 1;
  next.misses = 0;
  return next;
}

}  // namespace handtrack
