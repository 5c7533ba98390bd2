#pragma once

#include <Eigen/Dense>

#include <cstdint>

#include "armakit/estimation.hpp"

namespace armakit {

inline constexpr int kMaxForecastHorizon = 1000;

struct ForecastResult {
    int horizon = 0;
    /// Time stamp of the first forecast period.
    std::int64_t start = 0;
    Eigen::VectorXd point;
    /// Prediction variance of each lead time, sigma2 * sum_{j<h} psi_j^2.
    Eigen::VectorXd variance;
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;
    double alpha = 0.05;
};

/// Truncated m-step forecast: in-sample innovations come from the recursion
/// with pre-sample values set to zero, future innovations are zero. For
/// d > 0 the differenced-scale forecasts are integrated back to levels and
/// the variance uses the psi weights of the integrated process.
[[nodiscard]] ForecastResult forecast(const FittedModel& model, const TimeSeries& series, int horizon,
                                      double alpha = 0.05);

/// Innovations of the truncated recursion on the differenced, de-meaned scale.
[[nodiscard]] Eigen::VectorXd truncated_innovations(const ArmaParameters& params,
                                                    const Eigen::Ref<const Eigen::VectorXd>& differenced);

}  // namespace armakit
