#pragma once

#include <Eigen/Dense>

#include "armakit/series.hpp"

namespace armakit {

enum class CorrelationKind { acf, pacf };

/// ACF values start at lag 0, PACF values at lag 1; `lag(i)` maps an
/// element position to its lag. `threshold` is the half-width of the
/// white-noise band 1.96 / sqrt(n).
struct CorrelationSequence {
    CorrelationKind kind = CorrelationKind::acf;
    Eigen::VectorXd values;
    double threshold = 0.0;
    Eigen::Index n_obs = 0;

    [[nodiscard]] int first_lag() const noexcept { return kind == CorrelationKind::acf ? 0 : 1; }
    [[nodiscard]] int lag(Eigen::Index i) const noexcept { return first_lag() + static_cast<int>(i); }
    /// Value at a given lag (throws RangeError when absent).
    [[nodiscard]] double at_lag(int lag) const;
    [[nodiscard]] int max_lag() const noexcept {
        return first_lag() + static_cast<int>(values.size()) - 1;
    }
};

/// Biased sample autocovariances gamma(0..max_lag) with denominator n.
[[nodiscard]] Eigen::VectorXd sample_autocovariance(const Eigen::Ref<const Eigen::VectorXd>& x,
                                                    int max_lag);

[[nodiscard]] CorrelationSequence sample_acf(const Eigen::Ref<const Eigen::VectorXd>& x, int max_lag);
[[nodiscard]] CorrelationSequence sample_acf(const TimeSeries& series, int max_lag);

/// Durbin–Levinson recursion on the sample ACF.
[[nodiscard]] CorrelationSequence sample_pacf(const Eigen::Ref<const Eigen::VectorXd>& x, int max_lag);
[[nodiscard]] CorrelationSequence sample_pacf(const TimeSeries& series, int max_lag);

/// Partial autocorrelations from autocorrelations rho(0..L) (rho(0) = 1).
/// Throws NumericalDegeneracyError when a reflection coefficient reaches |1|.
[[nodiscard]] Eigen::VectorXd durbin_levinson(const Eigen::Ref<const Eigen::VectorXd>& rho);

/// rho(h) = phi^h.
[[nodiscard]] double theoretical_acf_ar1(double phi, int h);

/// rho(h) = (phi + theta)(1 + phi theta) / (1 + 2 phi theta + theta^2) * phi^(h-1), h >= 1.
[[nodiscard]] double theoretical_acf_arma11(double phi, double theta, int h);

/// The reduced closed form 0.5 (1 + beta) beta^(h-1) that accompanies the
/// land/sea "causal form" X_t = w_L(t) + (1 + beta) w_S(t-1). It is not an
/// autocorrelation of the standard ARMA(1,1) in general. Prefer
/// `theoretical_acf_arma11`.
[[nodiscard]] double acf_arma11_causal_form_variant(double beta, int h);

}  // namespace armakit
