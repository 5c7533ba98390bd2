#include "armakit/correlation.hpp"

#include <cmath>
#include <string>

namespace armakit {

namespace {

constexpr double kBandZ = 1.96;

void require_stationary(double phi) {
    if (!(std::abs(phi) < 1.0)) throw NonStationaryError("AR coefficient must satisfy |phi| < 1");
}

}  // namespace

double CorrelationSequence::at_lag(int lag) const {
    const int i = lag - first_lag();
    if (i < 0 || i >= values.size()) throw RangeError("lag " + std::to_string(lag) + " not available");
    return values(i);
}

Eigen::VectorXd sample_autocovariance(const Eigen::Ref<const Eigen::VectorXd>& x, int max_lag) {
    const auto n = x.size();
    if (max_lag < 0 || max_lag >= n) throw RangeError("autocovariance lag must satisfy 0 <= lag < n");
    const Eigen::VectorXd c = x.array() - x.mean();
    Eigen::VectorXd gamma(max_lag + 1);
    for (int h = 0; h <= max_lag; ++h)
        gamma(h) = c.head(n - h).dot(c.tail(n - h)) / static_cast<double>(n);
    return gamma;
}

CorrelationSequence sample_acf(const Eigen::Ref<const Eigen::VectorXd>& x, int max_lag) {
    const auto n = x.size();
    if (max_lag < 1 || max_lag >= n) throw RangeError("ACF max_lag must satisfy 1 <= max_lag < n");
    const Eigen::VectorXd gamma = sample_autocovariance(x, max_lag);
    if (!(gamma(0) > 0.0)) throw DegenerateInputError("ACF of a constant series is undefined");
    CorrelationSequence out;
    out.kind = CorrelationKind::acf;
    out.values = gamma / gamma(0);
    out.values(0) = 1.0;
    out.n_obs = n;
    out.threshold = kBandZ / std::sqrt(static_cast<double>(n));
    return out;
}

CorrelationSequence sample_acf(const TimeSeries& series, int max_lag) {
    return sample_acf(series.values(), max_lag);
}

Eigen::VectorXd durbin_levinson(const Eigen::Ref<const Eigen::VectorXd>& rho) {
    const auto L = rho.size() - 1;
    Eigen::VectorXd pacf(L);
    if (L < 1) return pacf;
    Eigen::VectorXd phi = Eigen::VectorXd::Zero(L);
    Eigen::VectorXd prev = Eigen::VectorXd::Zero(L);
    double v = 1.0;  // prediction error variance relative to gamma(0)
    for (Eigen::Index k = 1; k <= L; ++k) {
        double num = rho(k);
        for (Eigen::Index j = 1; j < k; ++j) num -= prev(j - 1) * rho(k - j);
        const double kk = num / v;
        if (!std::isfinite(kk) || std::abs(kk) >= 1.0)
            throw NumericalDegeneracyError("Durbin-Levinson: reflection coefficient reached |1| at lag " +
                                           std::to_string(k));
        phi(k - 1) = kk;
        for (Eigen::Index j = 1; j < k; ++j) phi(j - 1) = prev(j - 1) - kk * prev(k - j - 1);
        v *= (1.0 - kk * kk);
        pacf(k - 1) = kk;
        prev.head(k) = phi.head(k);
    }
    return pacf;
}

CorrelationSequence sample_pacf(const Eigen::Ref<const Eigen::VectorXd>& x, int max_lag) {
    const auto n = x.size();
    if (max_lag < 1 || 2 * max_lag >= n) throw RangeError("PACF max_lag must satisfy 1 <= max_lag < n/2");
    const CorrelationSequence acf = sample_acf(x, max_lag);
    CorrelationSequence out;
    out.kind = CorrelationKind::pacf;
    out.values = durbin_levinson(acf.values);
    out.n_obs = n;
    out.threshold = acf.threshold;
    return out;
}

CorrelationSequence sample_pacf(const TimeSeries& series, int max_lag) {
    return sample_pacf(series.values(), max_lag);
}

double theoretical_acf_ar1(double phi, int h) {
    require_stationary(phi);
    if (h < 0) throw RangeError("lag must be non-negative");
    return std::pow(phi, h);
}

double theoretical_acf_arma11(double phi, double theta, int h) {
    require_stationary(phi);
    if (!(std::abs(theta) < 1.0)) throw AdmissibilityError("MA coefficient must satisfy |theta| < 1");
    if (h < 1) throw RangeError("ARMA(1,1) ACF formula is defined for h >= 1");
    const double rho1 = (phi + theta) * (1.0 + phi * theta) / (1.0 + 2.0 * phi * theta + theta * theta);
    return rho1 * std::pow(phi, h - 1);
}

double acf_arma11_causal_form_variant(double beta, int h) {
    require_stationary(beta);
    if (h < 1) throw RangeError("lag must be >= 1");
    return 0.5 * (1.0 + beta) * std::pow(beta, h - 1);
}

}  // namespace armakit
