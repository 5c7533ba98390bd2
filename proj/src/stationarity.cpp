#include "armakit/stationarity.hpp"

#include <cmath>
#include <limits>

#include "armakit/distributions.hpp"
#include "armakit/linalg.hpp"

namespace armakit {

namespace {

// MacKinnon (1994), Table 3/4 for N = 1: cut-offs and polynomial
// coefficients of the normal-CDF response surface, lowest order first.
struct PValueSurface {
    double tau_max;
    double tau_min;
    double tau_star;
    std::array<double, 3> small_p;
    std::array<double, 4> large_p;
};

constexpr PValueSurface kSurfaceNone{
    std::numeric_limits<double>::infinity(), -19.04, -1.04,
    {0.6344, 1.2378, 3.2496e-2},
    {0.4797, 9.3557e-1, -0.6999e-1, 3.3066e-2}};
constexpr PValueSurface kSurfaceConstant{
    2.74, -18.83, -1.61,
    {2.1659, 1.4412, 3.8269e-2},
    {1.7339, 9.3202e-1, -1.2745e-1, -1.0368e-2}};
constexpr PValueSurface kSurfaceTrend{
    0.7, -16.18, -2.89,
    {3.2512, 1.6047, 4.9588e-2},
    {2.5261, 6.1654e-1, -3.7956e-1, -6.0285e-2}};

// MacKinnon (2010) critical values: b0 + b1/n + b2/n^2 + b3/n^3 per level.
using CritTable = std::array<std::array<double, 4>, 3>;
constexpr CritTable kCritNone{{{-2.56574, -2.2358, -3.627, 0.0},
                               {-1.94100, -0.2686, -3.365, 31.223},
                               {-1.61682, 0.2656, -2.714, 25.364}}};
constexpr CritTable kCritConstant{{{-3.43035, -6.5393, -16.786, -79.433},
                                   {-2.86154, -2.8903, -4.234, -40.040},
                                   {-2.56677, -1.5384, -2.809, 0.0}}};
constexpr CritTable kCritTrend{{{-3.95877, -9.0531, -28.428, -134.155},
                                {-3.41049, -4.3904, -9.036, -45.374},
                                {-3.12705, -2.5856, -3.925, -22.380}}};

const PValueSurface& surface(AdfRegression r) {
    switch (r) {
        case AdfRegression::none: return kSurfaceNone;
        case AdfRegression::constant: return kSurfaceConstant;
        case AdfRegression::constant_trend: return kSurfaceTrend;
    }
    return kSurfaceConstant;
}

const CritTable& crit_table(AdfRegression r) {
    switch (r) {
        case AdfRegression::none: return kCritNone;
        case AdfRegression::constant: return kCritConstant;
        case AdfRegression::constant_trend: return kCritTrend;
    }
    return kCritConstant;
}

int deterministic_terms(AdfRegression r) {
    switch (r) {
        case AdfRegression::none: return 0;
        case AdfRegression::constant: return 1;
        case AdfRegression::constant_trend: return 2;
    }
    return 1;
}

template <std::size_t N>
double horner(const std::array<double, N>& c, double x) {
    double acc = 0.0;
    for (std::size_t i = N; i-- > 0;) acc = acc * x + c[i];
    return acc;
}

// Regression on rows t = first..n-2 of dx (dx_t = x_{t+1} - x_t), i.e. the
// last `rows` usable observations, with `lags` augmentation terms.
struct AdfDesign {
    Eigen::MatrixXd X;
    Eigen::VectorXd y;
};

AdfDesign build_design(const Eigen::VectorXd& x, const Eigen::VectorXd& dx, int lags, Eigen::Index rows,
                       AdfRegression regression) {
    const int ndet = deterministic_terms(regression);
    const Eigen::Index m = dx.size();
    AdfDesign d;
    d.X.resize(rows, 1 + lags + ndet);
    d.y = dx.tail(rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const Eigen::Index t = m - rows + r;  // index into dx
        d.X(r, 0) = x(t);                     // lagged level
        for (int i = 1; i <= lags; ++i) d.X(r, i) = dx(t - i);
        if (ndet >= 1) d.X(r, 1 + lags) = 1.0;
        if (ndet >= 2) d.X(r, 2 + lags) = static_cast<double>(r + 1);
    }
    return d;
}

}  // namespace

int schwert_max_lag(Eigen::Index n) {
    return static_cast<int>(std::floor(12.0 * std::pow(static_cast<double>(n) / 100.0, 0.25)));
}

double mackinnon_p_value(double statistic, AdfRegression regression) {
    const auto& s = surface(regression);
    if (statistic > s.tau_max) return 1.0;
    if (statistic < s.tau_min) return 0.0;
    const double z = statistic <= s.tau_star ? horner(s.small_p, statistic) : horner(s.large_p, statistic);
    return normal_cdf(z);
}

std::array<double, 3> mackinnon_critical_values(AdfRegression regression, double n_obs) {
    const auto& t = crit_table(regression);
    const double inv = std::isinf(n_obs) ? 0.0 : 1.0 / n_obs;
    std::array<double, 3> out{};
    for (std::size_t i = 0; i < 3; ++i) out[i] = horner(t[i], inv);
    return out;
}

AdfResult adf_test(const Eigen::Ref<const Eigen::VectorXd>& xin, const AdfOptions& options) {
    const Eigen::VectorXd x = xin;
    const Eigen::Index n = x.size();
    const int ndet = deterministic_terms(options.regression);
    if (options.significance_index < 0 || options.significance_index > 2)
        throw RangeError("ADF significance index must be 0, 1 or 2");

    int max_lag = options.max_lag.value_or(schwert_max_lag(n));
    if (!options.max_lag) {
        max_lag = std::min<int>(max_lag, static_cast<int>(n / 2) - ndet - 1);
        if (max_lag < 0) throw InsufficientDataError("ADF: series too short for the regression");
    }
    if (max_lag < 0) throw RangeError("ADF max_lag must be non-negative");
    if (n < max_lag + 10) throw InsufficientDataError("ADF: need n >= max_lag + 10 observations");

    const Eigen::VectorXd dx = difference(x, 1);
    const Eigen::Index m = dx.size();

    int lag = max_lag;
    if (options.autolag) {
        // Common sample for all candidate lags so AIC values are comparable.
        const Eigen::Index rows = m - max_lag;
        const AdfDesign full = build_design(x, dx, max_lag, rows, options.regression);
        double best = std::numeric_limits<double>::infinity();
        for (int k = 0; k <= max_lag; ++k) {
            Eigen::MatrixXd Xk(rows, 1 + k + ndet);
            Xk.leftCols(1 + k) = full.X.leftCols(1 + k);
            if (ndet > 0) Xk.rightCols(ndet) = full.X.rightCols(ndet);
            const double aic = ols(Xk, full.y).aic();
            if (aic < best) {
                best = aic;
                lag = k;
            }
        }
    }

    const AdfDesign design = build_design(x, dx, lag, m - lag, options.regression);
    const OlsFit fit = ols(design.X, design.y);

    AdfResult res;
    res.regression = options.regression;
    res.used_lag = lag;
    res.n_obs = design.y.size();
    res.statistic = fit.coef(0) / fit.standard_error(0);
    res.p_value = mackinnon_p_value(res.statistic, options.regression);
    res.critical_values = mackinnon_critical_values(options.regression, static_cast<double>(res.n_obs));
    res.reject_unit_root =
        res.statistic < res.critical_values[static_cast<std::size_t>(options.significance_index)];
    return res;
}

AdfResult adf_test(const TimeSeries& series, const AdfOptions& options) {
    return adf_test(series.values(), options);
}

}  // namespace armakit
