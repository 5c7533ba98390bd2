#pragma once

#include <Eigen/Dense>

#include <string>
#include <utility>
#include <vector>

#include "armakit/correlation.hpp"
#include "armakit/estimation.hpp"
#include "armakit/series.hpp"

namespace armakit {

struct LjungBoxResult {
    double statistic = 0.0;
    double p_value = 1.0;
    int lags = 0;
    int dof = 0;
};

struct JarqueBeraResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

/// Residual analysis of one fitted model.
struct DiagnosticsReport {
    std::string label;
    ModelOrder order;
    double aic = 0.0;
    double bic = 0.0;
    /// Raw one-step prediction errors (differenced scale).
    Eigen::VectorXd residuals;
    /// Residuals divided by their predicted standard deviation.
    Eigen::VectorXd standardized_residuals;
    /// Moments of the standardized residuals.
    MomentSummary moments;
    double max_abs_residual = 0.0;
    /// Columns: theoretical N(0,1) quantile, sorted standardized residual.
    Eigen::MatrixX2d qq_points;
    /// Columns: abscissa, density of the raw residuals.
    Eigen::MatrixX2d kde_curve;
    double kde_bandwidth = 0.0;
    CorrelationSequence residual_acf;
    LjungBoxResult ljung_box;
    JarqueBeraResult jarque_bera;
};

inline constexpr int kKdeGridPoints = 512;

[[nodiscard]] DiagnosticsReport diagnose(const FittedModel& model, const TimeSeries& series, std::string label = {});

/// Q = n (n + 2) sum_{k<=lags} rho_k^2 / (n - k), chi-squared with `dof` degrees of freedom.
[[nodiscard]] LjungBoxResult ljung_box(const Eigen::Ref<const Eigen::VectorXd>& x, int lags, int dof);

/// JB = n / 6 (S^2 + (K - 3)^2 / 4) from population moments.
[[nodiscard]] JarqueBeraResult jarque_bera(const MomentSummary& m);

/// Normal plotting positions (i - 0.5) / n against sorted sample.
[[nodiscard]] Eigen::MatrixX2d normal_qq_points(const Eigen::Ref<const Eigen::VectorXd>& x);

/// 0.9 min(sd, IQR / 1.34) n^{-1/5}.
[[nodiscard]] double silverman_bandwidth(const Eigen::Ref<const Eigen::VectorXd>& x);

/// Gaussian KDE on `points` evenly spaced abscissae spanning the data range
/// widened by three bandwidths on each side.
[[nodiscard]] Eigen::MatrixX2d gaussian_kde(const Eigen::Ref<const Eigen::VectorXd>& x, double bandwidth,
                                            int points = kKdeGridPoints);

/// Trapezoid rule over (abscissa, value) rows.
[[nodiscard]] double trapezoid(const Eigen::Ref<const Eigen::MatrixX2d>& curve);

enum class CompareKey { aic, bic, max_abs_residual };

struct ComparisonRow {
    std::string label;
    double max_abs_residual = 0.0;
    double skewness = 0.0;
    double kurtosis_distance = 0.0;  // |kurtosis - 3|
    double ljung_box_p = 0.0;
    double aic = 0.0;
    double bic = 0.0;
    /// Competition ranks (ties share a rank).
    int rank_by_criterion = 0;
    int rank_by_max_residual = 0;
};

struct ComparisonTable {
    CompareKey primary = CompareKey::aic;
    /// Rows in input order.
    std::vector<ComparisonRow> rows;
    /// Row indices ordered by the primary key, then max residual; stable for ties.
    std::vector<std::size_t> ranking;
};

/// Tabulates residual statistics of several models. Ranks by the information
/// criterion (or max residual when `primary` says so); the max-residual rank
/// is always reported alongside.
[[nodiscard]] ComparisonTable compare(const std::vector<DiagnosticsReport>& reports,
                                      CompareKey primary = CompareKey::aic);

}  // namespace armakit
