#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

#include "armakit/series.hpp"

namespace armakit {

/// ARIMA(p, d, q) specification. `include_constant` adds a mean for the
/// d-times differenced series (a drift when d = 1).
struct ModelOrder {
    int p = 0;
    int d = 0;
    int q = 0;
    bool include_constant = false;

    /// Throws ConfigError for negative orders, d > 2, or an empty model.
    void validate() const;
    [[nodiscard]] std::string label() const;
    friend bool operator==(const ModelOrder&, const ModelOrder&) = default;
};

/// Default constant policy: a mean for d = 0, none for d >= 1.
[[nodiscard]] ModelOrder make_order(int p, int d, int q);

/// Coefficients of phi(B) (1 - B)^d (X_t - mu) = theta(B) w_t with
///   phi(z)   = 1 - ar_1 z - ... - ar_p z^p
///   theta(z) = 1 + ma_1 z + ... + ma_q z^q
/// `mean` is mu, the mean of the differenced process; the regression
/// intercept is mean * (1 - sum(ar)).
struct ArmaParameters {
    Eigen::VectorXd ar;
    Eigen::VectorXd ma;
    double mean = 0.0;
    double sigma2 = 1.0;

    [[nodiscard]] Eigen::Index p() const noexcept { return ar.size(); }
    [[nodiscard]] Eigen::Index q() const noexcept { return ma.size(); }
    [[nodiscard]] double intercept() const { return mean * (1.0 - ar.sum()); }
};

[[nodiscard]] ArmaParameters make_arma11(double phi, double theta, double sigma2, double mean = 0.0);

struct Violation {
    enum class Kind { stationarity, invertibility, variance };
    Kind kind;
    double min_root_modulus;
    std::string message;
};

struct AdmissibilityReport {
    Eigen::VectorXd ar_root_moduli;
    Eigen::VectorXd ma_root_moduli;
    std::vector<Violation> violations;

    [[nodiscard]] bool ok() const noexcept { return violations.empty(); }
};

/// Root moduli must exceed 1 + kRootTolerance.
inline constexpr double kRootTolerance = 1e-8;

[[nodiscard]] AdmissibilityReport check_admissible(const ArmaParameters& params);
/// Throws AdmissibilityError listing violations.
void require_admissible(const ArmaParameters& params);

/// Psi weights psi_0..psi_{count-1} of the MA(infinity) form of
/// theta(z) / (phi(z) (1 - z)^d).
[[nodiscard]] Eigen::VectorXd psi_weights(const ArmaParameters& params, int count, int d = 0);

/// Exact autocovariances gamma(0..max_lag) of the stationary ARMA process.
[[nodiscard]] Eigen::VectorXd arma_autocovariance(const ArmaParameters& params, int max_lag);

/// Gaussian ARMA path of length n after discarding max(500, 10 (p + q))
/// burn-in samples, integrated d times from zero when order.d > 0.
[[nodiscard]] TimeSeries simulate(const ArmaParameters& params, const ModelOrder& order, Eigen::Index n,
                                  std::uint64_t seed, std::int64_t start = 0);

[[nodiscard]] int burn_in_length(int p, int q);

/// Harvey state-space form of a zero-mean ARMA(p, q) with r = max(p, q + 1).
struct StateSpace {
    Eigen::MatrixXd transition;  // r x r
    Eigen::VectorXd selection;   // r, (1, theta_1, ..., theta_{r-1})
    /// Stationary state covariance divided by sigma2.
    Eigen::MatrixXd initial_cov;
};

[[nodiscard]] StateSpace make_state_space(const ArmaParameters& params);

struct LikelihoodResult {
    double loglik = 0.0;
    /// One-step prediction errors on the differenced scale (length n - d).
    Eigen::VectorXd residuals;
    /// Their variances sigma2 * f_t.
    Eigen::VectorXd residual_variances;
    /// One-step prediction for the first period after the sample (differenced scale).
    double next_prediction = 0.0;
    /// Sum of v_t^2 / f_t and of log f_t (variance-free parts).
    double scaled_ssr = 0.0;
    double sum_log_f = 0.0;
};

/// Exact Gaussian log-likelihood of the series under ARIMA(params, order),
/// evaluated by Kalman filtering from the stationary distribution after
/// differencing d times (the first d observations are conditioned on).
[[nodiscard]] LikelihoodResult log_likelihood(const ArmaParameters& params, const ModelOrder& order,
                                              const TimeSeries& series);

/// Same on an already differenced sample; no admissibility re-check.
[[nodiscard]] LikelihoodResult filter_arma(const ArmaParameters& params,
                                           const Eigen::Ref<const Eigen::VectorXd>& w);

}  // namespace armakit
