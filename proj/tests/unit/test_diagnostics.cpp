#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "armakit/diagnostics.hpp"
#include "armakit/distributions.hpp"
#include "test_support.hpp"

using namespace armakit;
using testing::no_constant;

namespace {

DiagnosticsReport fake_report(std::string label, double aic, double bic, double maxres) {
    DiagnosticsReport r;
    r.label = std::move(label);
    r.aic = aic;
    r.bic = bic;
    r.max_abs_residual = maxres;
    r.moments.skewness = 0.0;
    r.moments.kurtosis = 3.0;
    return r;
}

Eigen::VectorXd gaussian_sample(Eigen::Index n, std::uint64_t seed, double sd = 1.0) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> nd(0.0, sd);
    Eigen::VectorXd x(n);
    for (auto& v : x) v = nd(gen);
    return x;
}

}  // namespace

TEST_CASE("KDE integrates to one") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Eigen::VectorXd x = gaussian_sample(50 + 37 * static_cast<Eigen::Index>(seed), seed, 0.1 + seed);
        const double h = silverman_bandwidth(x);
        const auto curve = gaussian_kde(x, h);
        CHECK(curve.rows() == kKdeGridPoints);
        CHECK(trapezoid(curve) == doctest::Approx(1.0).epsilon(1e-3));
        CHECK((curve.col(1).array() >= 0.0).all());
    }
}

TEST_CASE("Silverman bandwidth formula") {
    Eigen::VectorXd x(5);
    x << 1.0, 2.0, 3.0, 4.0, 10.0;
    // sd = sqrt(50/4), IQR = 4 - 2 = 2, so spread = 2 / 1.34
    const double expected = 0.9 * (2.0 / 1.34) * std::pow(5.0, -0.2);
    CHECK(silverman_bandwidth(x) == doctest::Approx(expected).epsilon(1e-14));
    CHECK_THROWS_AS(silverman_bandwidth(Eigen::VectorXd::Constant(10, 2.0)), DegenerateInputError);
    CHECK_THROWS_AS(gaussian_kde(x, 0.0), RangeError);
}

TEST_CASE("Q-Q points of exact normal quantiles lie on the diagonal") {
    const Eigen::Index n = 101;
    Eigen::VectorXd x(n);
    for (Eigen::Index i = 0; i < n; ++i) x(i) = normal_quantile((static_cast<double>(i) + 0.5) / n);
    std::mt19937_64 gen(3);
    std::shuffle(x.data(), x.data() + n, gen);
    const auto qq = normal_qq_points(x);
    CHECK((qq.col(0) - qq.col(1)).cwiseAbs().maxCoeff() <= 1e-9);
    CHECK(std::is_sorted(qq.col(1).data(), qq.col(1).data() + n));
}

TEST_CASE("Jarque-Bera statistic") {
    MomentSummary m;
    m.n = 120;
    m.skewness = 0.5;
    m.kurtosis = 4.0;
    const auto jb = jarque_bera(m);
    CHECK(jb.statistic == doctest::Approx(120.0 / 6.0 * (0.25 + 0.25)).epsilon(1e-14));
    CHECK(jb.p_value == doctest::Approx(std::exp(-jb.statistic / 2.0)).epsilon(1e-12));
    m.kurtosis.reset();
    CHECK_THROWS_AS(jarque_bera(m), InsufficientDataError);
}

TEST_CASE("Ljung-Box on white noise is rarely significant") {
    int rejections = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto lb = ljung_box(gaussian_sample(200, seed), 10, 10);
        CHECK(lb.statistic >= 0.0);
        if (lb.p_value < 0.05) ++rejections;
    }
    CHECK(rejections <= 20);
    CHECK_THROWS_AS(ljung_box(gaussian_sample(10, 1), 10, 10), RangeError);
}

TEST_CASE("GISTEMP residual maxima and their ordering") {
    const auto& s = testing::gistemp();
    struct Case {
        ModelOrder order;
        double expected;
    };
    const std::vector<Case> cases = {{no_constant(1, 0, 1), 0.232144},
                                     {no_constant(1, 1, 1), 0.240199},
                                     {no_constant(1, 0, 0), 0.266279},
                                     {no_constant(1, 2, 0), 0.398333}};
    std::vector<double> maxima;
    for (const auto& c : cases) {
        const auto rep = diagnose(fit(s, c.order), s);
        CAPTURE(rep.label);
        CHECK(rep.max_abs_residual == doctest::Approx(c.expected).epsilon(0.15));
        CHECK(rep.max_abs_residual == doctest::Approx(rep.residuals.cwiseAbs().maxCoeff()));
        CHECK(trapezoid(rep.kde_curve) == doctest::Approx(1.0).epsilon(1e-3));
        CHECK(rep.qq_points.rows() == rep.residuals.size());
        maxima.push_back(rep.max_abs_residual);
    }
    CHECK(std::is_sorted(maxima.begin(), maxima.end()));
}

TEST_CASE("standardized residuals of a correct model look like N(0,1)") {
    const auto params = make_arma11(0.6, 0.3, 2.0);
    const auto order = ModelOrder{1, 0, 1, false};
    const auto s = simulate(params, order, 2000, 11);
    const auto rep = diagnose(make_fitted(order, params, s), s);
    CHECK(rep.moments.variance == doctest::Approx(1.0).epsilon(0.08));
    CHECK(std::abs(rep.moments.mean) < 0.1);
    CHECK(std::abs(*rep.moments.skewness) < 0.2);
    CHECK(*rep.moments.kurtosis == doctest::Approx(3.0).epsilon(0.1));
    CHECK(rep.ljung_box.dof == 8);
    int outside = 0;
    const double band = 1.96 / std::sqrt(2000.0);
    for (Eigen::Index k = 1; k < rep.residual_acf.values.size(); ++k)
        if (std::abs(rep.residual_acf.values(k)) > band) ++outside;
    CHECK(outside <= 4);
}

TEST_CASE("diagnose rejects fewer than eight residuals") {
    const auto params = make_arma11(0.5, 0.0, 1.0);
    const auto order = ModelOrder{1, 0, 1, false};
    const TimeSeries s(2000, gaussian_sample(7, 2));
    CHECK_THROWS_AS(diagnose(make_fitted(order, params, s), s), InsufficientDataError);
}

TEST_CASE("compare ranks by criterion with max residual as tie-break") {
    const std::vector<DiagnosticsReport> reps = {fake_report("a", 10.0, 12.0, 0.3), fake_report("b", 8.0, 14.0, 0.5),
                                                 fake_report("c", 10.0, 11.0, 0.2),
                                                 fake_report("d", 12.0, 13.0, 0.2)};
    const auto t = compare(reps, CompareKey::aic);
    REQUIRE(t.rows.size() == 4);
    CHECK(t.rows[0].rank_by_criterion == 2);
    CHECK(t.rows[2].rank_by_criterion == 2);
    CHECK(t.rows[1].rank_by_criterion == 1);
    CHECK(t.rows[3].rank_by_criterion == 4);
    CHECK(t.rows[2].rank_by_max_residual == 1);
    CHECK(t.rows[3].rank_by_max_residual == 1);
    CHECK(t.rows[0].rank_by_max_residual == 3);
    CHECK(t.ranking == std::vector<std::size_t>{1, 2, 0, 3});

    const auto tb = compare(reps, CompareKey::bic);
    CHECK(tb.ranking == std::vector<std::size_t>{2, 0, 3, 1});

    const auto tr = compare(reps, CompareKey::max_abs_residual);
    CHECK(tr.ranking == std::vector<std::size_t>{2, 3, 0, 1});
}

TEST_CASE("compare keeps input order for exact ties") {
    const std::vector<DiagnosticsReport> reps = {fake_report("x", 1.0, 1.0, 0.1), fake_report("y", 1.0, 1.0, 0.1),
                                                 fake_report("z", 1.0, 1.0, 0.1)};
    const auto t = compare(reps);
    CHECK(t.ranking == std::vector<std::size_t>{0, 1, 2});
    for (const auto& r : t.rows) {
        CHECK(r.rank_by_criterion == 1);
        CHECK(r.rank_by_max_residual == 1);
    }
    CHECK(compare({}).rows.empty());
}
