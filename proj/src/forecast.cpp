#include "armakit/forecast.hpp"

#include <cmath>

#include "armakit/distributions.hpp"

namespace armakit {

Eigen::VectorXd truncated_innovations(const ArmaParameters& params,
                                      const Eigen::Ref<const Eigen::VectorXd>& differenced) {
    const Eigen::Index n = differenced.size();
    const Eigen::Index p = params.p();
    const Eigen::Index q = params.q();
    const Eigen::VectorXd z = differenced.array() - params.mean;
    Eigen::VectorXd e(n);
    for (Eigen::Index t = 0; t < n; ++t) {
        double v = z(t);
        for (Eigen::Index i = 1; i <= std::min(p, t); ++i) v -= params.ar(i - 1) * z(t - i);
        for (Eigen::Index j = 1; j <= std::min(q, t); ++j) v -= params.ma(j - 1) * e(t - j);
        e(t) = v;
    }
    return e;
}

ForecastResult forecast(const FittedModel& model, const TimeSeries& series, int horizon, double alpha) {
    if (horizon < 1) throw RangeError("forecast horizon must be >= 1");
    if (horizon > kMaxForecastHorizon)
        throw RangeError("forecast horizon exceeds the limit of " + std::to_string(kMaxForecastHorizon));
    if (!(alpha > 0.0 && alpha < 1.0)) throw RangeError("alpha must lie in (0, 1)");
    const ArmaParameters& params = model.params;
    const int d = model.order.d;
    require_admissible(params);
    if (series.size() <= d) throw InsufficientDataError("forecast: series shorter than the differencing order");

    const Eigen::VectorXd w = difference(series.values(), d);
    const Eigen::Index n = w.size();
    const Eigen::Index p = params.p();
    const Eigen::Index q = params.q();
    const Eigen::VectorXd e = truncated_innovations(params, w);

    // De-meaned differenced series extended with forecasts.
    Eigen::VectorXd z(n + horizon);
    z.head(n) = w.array() - params.mean;
    for (Eigen::Index h = 1; h <= horizon; ++h) {
        const Eigen::Index t = n + h - 1;
        double v = 0.0;
        for (Eigen::Index i = 1; i <= p; ++i)
            if (t - i >= 0) v += params.ar(i - 1) * z(t - i);
        for (Eigen::Index j = h; j <= q; ++j)
            if (t - j >= 0) v += params.ma(j - 1) * e(t - j);
        z(t) = v;
    }
    Eigen::VectorXd point = z.tail(horizon).array() + params.mean;

    // Undo differencing one order at a time, anchoring on the last observed
    // value of each intermediate difference.
    for (int k = d; k >= 1; --k) {
        const Eigen::VectorXd lower_order = difference(series.values(), k - 1);
        double level = lower_order(lower_order.size() - 1);
        for (Eigen::Index h = 0; h < horizon; ++h) {
            level += point(h);
            point(h) = level;
        }
    }

    const Eigen::VectorXd psi = psi_weights(params, horizon, d);
    ForecastResult out;
    out.horizon = horizon;
    out.alpha = alpha;
    out.start = series.time(series.size() - 1) + 1;
    out.point = std::move(point);
    out.variance.resize(horizon);
    double acc = 0.0;
    for (int h = 0; h < horizon; ++h) {
        acc += psi(h) * psi(h);
        out.variance(h) = params.sigma2 * acc;
    }
    const double zq = normal_quantile(1.0 - alpha / 2.0);
    const Eigen::ArrayXd half = zq * out.variance.array().sqrt();
    out.lower = out.point.array() - half;
    out.upper = out.point.array() + half;
    return out;
}

}  // namespace armakit
