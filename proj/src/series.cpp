#include "armakit/series.hpp"

#include <algorithm>
#include <cmath>

namespace armakit {

TimeSeries::TimeSeries(std::int64_t start, Eigen::VectorXd values, std::string units)
    : start_(start), values_(std::move(values)), units_(std::move(units)) {
    if (!values_.allFinite()) throw DomainError("time series values must be finite");
}

TimeSeries TimeSeries::from_pairs(const std::vector<std::int64_t>& times,
                                  const std::vector<double>& values, std::string units) {
    if (times.size() != values.size())
        throw DimensionError("time series: times and values differ in length");
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (times[i] != times[i - 1] + 1)
            throw DomainError("time series: index must increase with step 1 (at position " +
                              std::to_string(i) + ")");
    }
    Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(values.data(),
                                                          static_cast<Eigen::Index>(values.size()));
    return {times.empty() ? 0 : times.front(), std::move(v), std::move(units)};
}

std::vector<std::int64_t> TimeSeries::times() const {
    std::vector<std::int64_t> t(static_cast<std::size_t>(size()));
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = start_ + static_cast<std::int64_t>(i);
    return t;
}

TimeSeries TimeSeries::with_values(Eigen::VectorXd values) const {
    if (values.size() != values_.size()) throw DimensionError("with_values: length mismatch");
    return {start_, std::move(values), units_};
}

Eigen::VectorXd integrate(const Eigen::Ref<const Eigen::VectorXd>& diffed,
                          const Eigen::Ref<const Eigen::VectorXd>& initial_values) {
    const auto d = initial_values.size();
    if (d < 1) throw DimensionError("integrate: need at least one initial value");

    // heads[k] = first element of the k-th difference of the initial values
    Eigen::VectorXd heads(d);
    Eigen::VectorXd work = initial_values;
    for (Eigen::Index k = 0; k < d; ++k) {
        heads(k) = work(0);
        if (work.size() > 1) work = (work.tail(work.size() - 1) - work.head(work.size() - 1)).eval();
    }

    Eigen::VectorXd cur = diffed;
    for (Eigen::Index k = d - 1; k >= 0; --k) {
        Eigen::VectorXd level(cur.size() + 1);
        level(0) = heads(k);
        for (Eigen::Index i = 0; i < cur.size(); ++i) level(i + 1) = level(i) + cur(i);
        cur = std::move(level);
    }
    // The reconstruction reproduces the given initial values exactly.
    cur.head(d) = initial_values;
    return cur;
}

TimeSeries difference(const TimeSeries& series, int d) {
    return {series.start() + d, difference(series.values(), d), series.units()};
}

TimeSeries integrate(const TimeSeries& diffed,
                     const Eigen::Ref<const Eigen::VectorXd>& initial_values) {
    return {diffed.start() - initial_values.size(), integrate(diffed.values(), initial_values),
            diffed.units()};
}

MomentSummary moments(const Eigen::Ref<const Eigen::VectorXd>& x) {
    const auto n = x.size();
    if (n < 2) throw InsufficientDataError("moments: need at least 2 observations");
    MomentSummary s;
    s.n = n;
    s.mean = x.mean();
    const Eigen::ArrayXd c = x.array() - s.mean;
    const double m2 = c.square().mean();
    s.variance = m2;
    if (m2 > 0.0) {
        if (n >= 3) s.skewness = c.cube().mean() / std::pow(m2, 1.5);
        if (n >= 4) s.kurtosis = c.square().square().mean() / (m2 * m2);
    }
    return s;
}

MomentSummary moments(const TimeSeries& series) { return moments(series.values()); }

double quantile(const Eigen::Ref<const Eigen::VectorXd>& x, double prob) {
    if (x.size() == 0) throw InsufficientDataError("quantile of empty sample");
    if (!(prob >= 0.0 && prob <= 1.0)) throw RangeError("quantile probability outside [0, 1]");
    std::vector<double> v(x.data(), x.data() + x.size());
    std::sort(v.begin(), v.end());
    const double h = prob * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

}  // namespace armakit
