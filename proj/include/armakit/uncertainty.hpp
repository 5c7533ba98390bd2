#pragma once

#include <cstdint>
#include <string>

#include "armakit/arma.hpp"
#include "armakit/series.hpp"

namespace armakit {

/// Total anomaly uncertainty split into land and sea contributions.
struct UncertaintyDecomposition {
    double sigma2_total = 0.0;
    double sigma2_land = 0.0;
    double sigma2_sea = 0.0;
};

[[nodiscard]] UncertaintyDecomposition decompose(double sigma2_land, double sigma2_sea);

/// Generative model X(t) = alpha + beta X(t-1) + w_L(t) + w_S(t-1) with
/// w_L ~ N(0, sigma2_land), w_S ~ N(0, sigma2_sea). `cross_cov` is
/// Cov(w_L(t), w_S(t)); zero means independent land and sea noise.
struct BiasedAnomalyConfig {
    double alpha = 0.0;
    double beta = 0.0;
    double sigma2_land = 0.0;
    double sigma2_sea = 0.0;
    double cross_cov = 0.0;
    Eigen::Index n = 0;
    std::uint64_t seed = 0;
    std::int64_t start = 0;
    /// Opaque period label (e.g. a decade index).
    std::string label;

    void validate() const;
};

[[nodiscard]] TimeSeries simulate_biased_anomaly(const BiasedAnomalyConfig& config);

struct ArmaReduction {
    ModelOrder order;
    ArmaParameters params;
};

/// Exact ARMA(1,1) equivalent of the generative model. The composite noise
/// u(t) = w_L(t) + w_S(t-1) has gamma_u(0) = sigma2_land + sigma2_sea and
/// gamma_u(1) = cross_cov, so it is an MA(1) whose invertible coefficient and
/// innovation variance follow from matching those two autocovariances.
[[nodiscard]] ArmaReduction reduce_to_arma(const BiasedAnomalyConfig& config);

/// D(t) = truth(t) - reduced(t) on identical time indices.
[[nodiscard]] TimeSeries difference_series(const TimeSeries& truth, const TimeSeries& reduced);

/// Reduced-coverage observation of a latent series,
/// X(t) = alpha + beta Y(t) + w_L(t) + w_S(t), with the same noise model.
struct ReducedCoverageConfig {
    double alpha = 0.0;
    double beta = 1.0;
    double sigma2_land = 0.0;
    double sigma2_sea = 0.0;
    double cross_cov = 0.0;
    std::uint64_t seed = 0;
};

[[nodiscard]] TimeSeries observe_reduced_coverage(const TimeSeries& truth, const ReducedCoverageConfig& config);

}  // namespace armakit
