#include "armakit/uncertainty.hpp"

#include <cmath>
#include <random>

namespace armakit {

namespace {

void check_noise(double sigma2_land, double sigma2_sea, double cross_cov) {
    if (!(sigma2_land >= 0.0) || !(sigma2_sea >= 0.0)) throw DomainError("noise variances must be non-negative");
    if (cross_cov * cross_cov > sigma2_land * sigma2_sea * (1.0 + 1e-12))
        throw DomainError("land/sea noise covariance is not positive semi-definite");
}

// Draws (w_L, w_S) pairs with the configured 2x2 covariance.
class LandSeaNoise {
public:
    LandSeaNoise(double sigma2_land, double sigma2_sea, double cross_cov, std::uint64_t seed) : gen_(seed) {
        sd_land_ = std::sqrt(sigma2_land);
        if (sd_land_ > 0.0) {
            load_ = cross_cov / sd_land_;
            sd_sea_rest_ = std::sqrt(std::max(0.0, sigma2_sea - load_ * load_));
        } else {
            sd_sea_rest_ = std::sqrt(sigma2_sea);
        }
    }

    std::pair<double, double> draw() {
        const double z1 = std_(gen_);
        const double z2 = std_(gen_);
        return {sd_land_ * z1, load_ * z1 + sd_sea_rest_ * z2};
    }

private:
    std::mt19937_64 gen_;
    std::normal_distribution<double> std_{0.0, 1.0};
    double sd_land_ = 0.0;
    double load_ = 0.0;
    double sd_sea_rest_ = 0.0;
};

}  // namespace

UncertaintyDecomposition decompose(double sigma2_land, double sigma2_sea) {
    if (!(sigma2_land >= 0.0) || !(sigma2_sea >= 0.0))
        throw DomainError("uncertainty components must be non-negative");
    return {sigma2_land + sigma2_sea, sigma2_land, sigma2_sea};
}

void BiasedAnomalyConfig::validate() const {
    if (!(std::abs(beta) < 1.0)) throw NonStationaryError("multiplicative bias must satisfy |beta| < 1");
    check_noise(sigma2_land, sigma2_sea, cross_cov);
    if (n < 1) throw RangeError("simulation length must be >= 1");
}

TimeSeries simulate_biased_anomaly(const BiasedAnomalyConfig& config) {
    config.validate();
    LandSeaNoise noise(config.sigma2_land, config.sigma2_sea, config.cross_cov, config.seed);
    const Eigen::Index burn = burn_in_length(1, 1);
    double x = config.alpha / (1.0 - config.beta);
    double sea_prev = 0.0;
    Eigen::VectorXd out(config.n);
    for (Eigen::Index t = 0; t < burn + config.n; ++t) {
        const auto [land, sea] = noise.draw();
        x = config.alpha + config.beta * x + land + sea_prev;
        sea_prev = sea;
        if (t >= burn) out(t - burn) = x;
    }
    return {config.start, std::move(out)};
}

ArmaReduction reduce_to_arma(const BiasedAnomalyConfig& config) {
    if (!(std::abs(config.beta) < 1.0)) throw NonStationaryError("multiplicative bias must satisfy |beta| < 1");
    check_noise(config.sigma2_land, config.sigma2_sea, config.cross_cov);
    const double gamma0 = config.sigma2_land + config.sigma2_sea;
    const double gamma1 = config.cross_cov;
    if (!(gamma0 > 0.0)) throw DomainError("reduction needs a positive total noise variance");

    double theta = 0.0;
    double sigma2 = gamma0;
    const double rho = gamma1 / gamma0;  // |rho| <= 1/2 by the PSD check
    if (rho != 0.0) {
        theta = (1.0 - std::sqrt(std::max(0.0, 1.0 - 4.0 * rho * rho))) / (2.0 * rho);
        sigma2 = gamma1 / theta;
    }
    ArmaReduction red;
    red.order = {1, 0, 1, config.alpha != 0.0};
    red.params = make_arma11(config.beta, theta, sigma2, config.alpha / (1.0 - config.beta));
    return red;
}

TimeSeries difference_series(const TimeSeries& truth, const TimeSeries& reduced) {
    if (truth.size() != reduced.size() || truth.start() != reduced.start())
        throw AlignmentError("difference_series: time indices do not align");
    return truth.with_values(truth.values() - reduced.values());
}

TimeSeries observe_reduced_coverage(const TimeSeries& truth, const ReducedCoverageConfig& config) {
    check_noise(config.sigma2_land, config.sigma2_sea, config.cross_cov);
    LandSeaNoise noise(config.sigma2_land, config.sigma2_sea, config.cross_cov, config.seed);
    Eigen::VectorXd x(truth.size());
    for (Eigen::Index t = 0; t < truth.size(); ++t) {
        const auto [land, sea] = noise.draw();
        x(t) = config.alpha + config.beta * truth[t] + land + sea;
    }
    return truth.with_values(std::move(x));
}

}  // namespace armakit
