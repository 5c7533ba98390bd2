#pragma once

#include <Eigen/Dense>

#include <array>
#include <optional>

#include "armakit/series.hpp"

namespace armakit {

enum class AdfRegression { none, constant, constant_trend };

struct AdfOptions {
    /// Largest augmentation lag; empty selects floor(12 (n/100)^{1/4}).
    std::optional<int> max_lag;
    /// Choose the lag in 0..max_lag by AIC on a common sample; otherwise use max_lag.
    bool autolag = true;
    AdfRegression regression = AdfRegression::constant;
    /// Level at which `reject_unit_root` is decided: 0 = 1%, 1 = 5%, 2 = 10%.
    int significance_index = 1;
};

struct AdfResult {
    double statistic = 0.0;
    double p_value = 1.0;
    int used_lag = 0;
    Eigen::Index n_obs = 0;
    /// Critical values at 1%, 5% and 10% (strictly increasing).
    std::array<double, 3> critical_values{};
    bool reject_unit_root = false;
    AdfRegression regression = AdfRegression::constant;
};

/// Augmented Dickey–Fuller regression
///   dx_t = a + b t + g x_{t-1} + sum_i c_i dx_{t-i} + e_t
/// with the t-ratio of g as statistic and MacKinnon p-values / critical values.
[[nodiscard]] AdfResult adf_test(const Eigen::Ref<const Eigen::VectorXd>& x, const AdfOptions& options = {});
[[nodiscard]] AdfResult adf_test(const TimeSeries& series, const AdfOptions& options = {});

/// MacKinnon (1994) response-surface p-value for a single-series DF statistic.
[[nodiscard]] double mackinnon_p_value(double statistic, AdfRegression regression);

/// MacKinnon (2010) finite-sample critical values at 1%, 5%, 10%.
[[nodiscard]] std::array<double, 3> mackinnon_critical_values(AdfRegression regression, double n_obs);

/// floor(12 (n/100)^{1/4}).
[[nodiscard]] int schwert_max_lag(Eigen::Index n);

}  // namespace armakit
