#include "armakit/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "armakit/distributions.hpp"

namespace armakit {

namespace {

constexpr int kResidualAcfLags = 20;
constexpr int kLjungBoxLags = 10;

std::vector<int> competition_ranks(const std::vector<double>& keys) {
    std::vector<int> ranks(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) {
        int better = 0;
        for (double k : keys)
            if (k < keys[i]) ++better;
        ranks[i] = better + 1;
    }
    return ranks;
}

}  // namespace

LjungBoxResult ljung_box(const Eigen::Ref<const Eigen::VectorXd>& x, int lags, int dof) {
    const auto n = x.size();
    if (lags < 1 || lags >= n) throw RangeError("Ljung-Box lags must satisfy 1 <= lags < n");
    const CorrelationSequence acf = sample_acf(x, lags);
    const auto nd = static_cast<double>(n);
    double q = 0.0;
    for (int k = 1; k <= lags; ++k) q += acf.values(k) * acf.values(k) / (nd - k);
    LjungBoxResult out;
    out.statistic = nd * (nd + 2.0) * q;
    out.lags = lags;
    out.dof = std::max(1, dof);
    out.p_value = chi_squared_sf(out.statistic, out.dof);
    return out;
}

JarqueBeraResult jarque_bera(const MomentSummary& m) {
    if (!m.skewness || !m.kurtosis) throw InsufficientDataError("Jarque-Bera needs skewness and kurtosis");
    const double s = *m.skewness;
    const double k = *m.kurtosis - 3.0;
    JarqueBeraResult out;
    out.statistic = static_cast<double>(m.n) / 6.0 * (s * s + k * k / 4.0);
    out.p_value = chi_squared_sf(out.statistic, 2.0);
    return out;
}

Eigen::MatrixX2d normal_qq_points(const Eigen::Ref<const Eigen::VectorXd>& x) {
    const auto n = x.size();
    Eigen::VectorXd sorted = x;
    std::sort(sorted.data(), sorted.data() + n);
    Eigen::MatrixX2d qq(n, 2);
    for (Eigen::Index i = 0; i < n; ++i) {
        qq(i, 0) = normal_quantile((static_cast<double>(i) + 0.5) / static_cast<double>(n));
        qq(i, 1) = sorted(i);
    }
    return qq;
}

double silverman_bandwidth(const Eigen::Ref<const Eigen::VectorXd>& x) {
    const auto n = x.size();
    if (n < 2) throw InsufficientDataError("bandwidth needs at least 2 points");
    const double sd = std::sqrt((x.array() - x.mean()).square().sum() / static_cast<double>(n - 1));
    const double iqr = quantile(x, 0.75) - quantile(x, 0.25);
    double spread = iqr > 0.0 ? std::min(sd, iqr / 1.34) : sd;
    if (!(spread > 0.0)) throw DegenerateInputError("bandwidth of a constant sample is zero");
    return 0.9 * spread * std::pow(static_cast<double>(n), -0.2);
}

Eigen::MatrixX2d gaussian_kde(const Eigen::Ref<const Eigen::VectorXd>& x, double bandwidth, int points) {
    if (!(bandwidth > 0.0)) throw RangeError("KDE bandwidth must be positive");
    if (points < 2) throw RangeError("KDE grid needs at least 2 points");
    const double lo = x.minCoeff() - 3.0 * bandwidth;
    const double hi = x.maxCoeff() + 3.0 * bandwidth;
    const auto n = static_cast<double>(x.size());
    Eigen::MatrixX2d curve(points, 2);
    curve.col(0) = Eigen::VectorXd::LinSpaced(points, lo, hi);
    for (int i = 0; i < points; ++i) {
        const Eigen::ArrayXd u = (curve(i, 0) - x.array()) / bandwidth;
        curve(i, 1) = (-0.5 * u.square()).exp().sum() / (n * bandwidth * std::sqrt(2.0 * std::numbers::pi));
    }
    return curve;
}

double trapezoid(const Eigen::Ref<const Eigen::MatrixX2d>& curve) {
    double area = 0.0;
    for (Eigen::Index i = 1; i < curve.rows(); ++i)
        area += 0.5 * (curve(i, 1) + curve(i - 1, 1)) * (curve(i, 0) - curve(i - 1, 0));
    return area;
}

DiagnosticsReport diagnose(const FittedModel& model, const TimeSeries& series, std::string label) {
    const LikelihoodResult lr = log_likelihood(model.params, model.order, series);
    const auto n = lr.residuals.size();
    if (n < 8) throw InsufficientDataError("diagnose: need at least 8 residuals");

    DiagnosticsReport rep;
    rep.label = label.empty() ? model.order.label() : std::move(label);
    rep.order = model.order;
    rep.aic = model.aic;
    rep.bic = model.bic;
    rep.residuals = lr.residuals;
    rep.standardized_residuals = lr.residuals.array() / lr.residual_variances.array().sqrt();
    rep.moments = moments(rep.standardized_residuals);
    rep.max_abs_residual = lr.residuals.cwiseAbs().maxCoeff();
    rep.qq_points = normal_qq_points(rep.standardized_residuals);
    rep.kde_bandwidth = silverman_bandwidth(rep.residuals);
    rep.kde_curve = gaussian_kde(rep.residuals, rep.kde_bandwidth);
    rep.residual_acf = sample_acf(rep.standardized_residuals, std::min<int>(kResidualAcfLags, static_cast<int>(n) - 1));
    const int lb_lags = std::min<int>(kLjungBoxLags, static_cast<int>(n) - 1);
    rep.ljung_box = ljung_box(rep.standardized_residuals, lb_lags, lb_lags - model.order.p - model.order.q);
    rep.jarque_bera = jarque_bera(rep.moments);
    return rep;
}

ComparisonTable compare(const std::vector<DiagnosticsReport>& reports, CompareKey primary) {
    ComparisonTable table;
    table.primary = primary;
    std::vector<double> crit, maxres;
    for (const auto& r : reports) {
        ComparisonRow row;
        row.label = r.label;
        row.max_abs_residual = r.max_abs_residual;
        row.skewness = r.moments.skewness.value_or(0.0);
        row.kurtosis_distance = std::abs(r.moments.kurtosis.value_or(3.0) - 3.0);
        row.ljung_box_p = r.ljung_box.p_value;
        row.aic = r.aic;
        row.bic = r.bic;
        table.rows.push_back(row);
        crit.push_back(primary == CompareKey::bic ? r.bic : r.aic);
        maxres.push_back(r.max_abs_residual);
    }
    const auto crit_rank = competition_ranks(crit);
    const auto res_rank = competition_ranks(maxres);
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        table.rows[i].rank_by_criterion = crit_rank[i];
        table.rows[i].rank_by_max_residual = res_rank[i];
    }
    table.ranking.resize(reports.size());
    std::iota(table.ranking.begin(), table.ranking.end(), 0);
    const auto& primary_rank = primary == CompareKey::max_abs_residual ? res_rank : crit_rank;
    const auto& secondary_rank = primary == CompareKey::max_abs_residual ? crit_rank : res_rank;
    std::stable_sort(table.ranking.begin(), table.ranking.end(), [&](std::size_t a, std::size_t b) {
        if (primary_rank[a] != primary_rank[b]) return primary_rank[a] < primary_rank[b];
        return secondary_rank[a] < secondary_rank[b];
    });
    return table;
}

}  // namespace armakit
