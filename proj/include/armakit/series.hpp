#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "armakit/errors.hpp"

namespace armakit {

/// Annual observations on a uniform unit-step integer time index.
///
/// The index is stored as the first time stamp only; time i is `start() + i`.
/// Values are finite. An empty series is representable (it is the natural
/// result of some transforms) but most analyses reject it.
class TimeSeries {
public:
    TimeSeries() = default;
    TimeSeries(std::int64_t start, Eigen::VectorXd values, std::string units = "degC anomaly");

    /// Builds a series from explicit time stamps; they must be strictly
    /// increasing with step 1.
    static TimeSeries from_pairs(const std::vector<std::int64_t>& times,
                                 const std::vector<double>& values,
                                 std::string units = "degC anomaly");

    [[nodiscard]] Eigen::Index size() const noexcept { return values_.size(); }
    [[nodiscard]] bool empty() const noexcept { return values_.size() == 0; }
    [[nodiscard]] std::int64_t start() const noexcept { return start_; }
    [[nodiscard]] std::int64_t time(Eigen::Index i) const noexcept { return start_ + i; }
    [[nodiscard]] std::vector<std::int64_t> times() const;
    [[nodiscard]] const Eigen::VectorXd& values() const noexcept { return values_; }
    [[nodiscard]] double operator[](Eigen::Index i) const { return values_(i); }
    [[nodiscard]] const std::string& units() const noexcept { return units_; }

    /// Same index and units, new values (length must match).
    [[nodiscard]] TimeSeries with_values(Eigen::VectorXd values) const;

private:
    std::int64_t start_ = 0;
    Eigen::VectorXd values_;
    std::string units_ = "degC anomaly";
};

/// Central-moment summary with denominator n. Kurtosis is Pearson (normal = 3).
/// Skewness and kurtosis are empty when undefined (too few points or zero variance).
struct MomentSummary {
    double mean = 0.0;
    double variance = 0.0;
    std::optional<double> skewness;
    std::optional<double> kurtosis;
    Eigen::Index n = 0;
};

/// d-th order finite difference (1 - B)^d of a vector; result has length n - d.
template <typename Derived>
[[nodiscard]] Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1>
difference(const Eigen::MatrixBase<Derived>& x, int d) {
    using Vec = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1>;
    if (d < 0) throw RangeError("difference order must be non-negative");
    if (x.size() <= d) throw InsufficientDataError("difference: series length must exceed d");
    Vec out = x;
    for (int k = 0; k < d; ++k) {
        const Eigen::Index m = out.size() - 1;
        Vec next = out.tail(m) - out.head(m);
        out = std::move(next);
    }
    return out;
}

/// Inverse of `difference`: rebuilds the level series from d-th differences
/// and the first d level values.
[[nodiscard]] Eigen::VectorXd integrate(const Eigen::Ref<const Eigen::VectorXd>& diffed,
                                        const Eigen::Ref<const Eigen::VectorXd>& initial_values);

/// Time-indexed difference; the result starts at `series.time(d)`.
[[nodiscard]] TimeSeries difference(const TimeSeries& series, int d);

/// Time-indexed integration; the result starts d steps before `diffed`.
[[nodiscard]] TimeSeries integrate(const TimeSeries& diffed,
                                   const Eigen::Ref<const Eigen::VectorXd>& initial_values);

[[nodiscard]] MomentSummary moments(const Eigen::Ref<const Eigen::VectorXd>& x);
[[nodiscard]] MomentSummary moments(const TimeSeries& series);

/// Linear interpolation quantile (type 7), used for IQR-based bandwidths.
[[nodiscard]] double quantile(const Eigen::Ref<const Eigen::VectorXd>& x, double prob);

}  // namespace armakit
