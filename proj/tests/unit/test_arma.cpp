#include <doctest.h>

#include <numeric>
#include <random>

#include "armakit/arma.hpp"
#include "armakit/diagnostics.hpp"
#include "test_support.hpp"

using namespace armakit;

namespace {

ArmaParameters ar1(double phi, double sigma2 = 1.0, double mean = 0.0) {
    ArmaParameters p;
    p.ar = Eigen::VectorXd::Constant(1, phi);
    p.ma = Eigen::VectorXd(0);
    p.sigma2 = sigma2;
    p.mean = mean;
    return p;
}

ArmaParameters ma1(double theta) {
    ArmaParameters p;
    p.ar = Eigen::VectorXd(0);
    p.ma = Eigen::VectorXd::Constant(1, theta);
    return p;
}

}  // namespace

TEST_CASE("ModelOrder validation and labels") {
    CHECK_NOTHROW((ModelOrder{1, 0, 0, false}.validate()));
    CHECK_NOTHROW((ModelOrder{0, 0, 0, true}.validate()));
    CHECK_THROWS_AS((ModelOrder{0, 1, 0, false}.validate()), ConfigError);
    CHECK_THROWS_AS((ModelOrder{1, 3, 0, false}.validate()), ConfigError);
    CHECK_THROWS_AS((ModelOrder{-1, 0, 1, false}.validate()), ConfigError);
    CHECK(make_order(1, 0, 1).include_constant);
    CHECK_FALSE(make_order(1, 1, 1).include_constant);
    CHECK(ModelOrder{1, 0, 0, false}.label() == "AR(1)");
    CHECK(ModelOrder{0, 0, 2, false}.label() == "MA(2)");
    CHECK(ModelOrder{1, 0, 1, false}.label() == "ARMA(1,1)");
    CHECK(ModelOrder{1, 2, 0, false}.label() == "ARIMA(1,2,0)");
    CHECK(ModelOrder{1, 1, 1, true}.label() == "ARIMA(1,1,1)+drift");
}

TEST_CASE("admissibility examples") {
    CHECK(check_admissible(ar1(0.9786)).ok());
    const auto unit = check_admissible(ar1(1.0));
    REQUIRE_FALSE(unit.ok());
    CHECK(unit.violations.front().kind == Violation::Kind::stationarity);
    CHECK(check_admissible(ma1(-0.4365)).ok());
    const auto noninv = check_admissible(ma1(-1.0));
    REQUIRE_FALSE(noninv.ok());
    CHECK(noninv.violations.front().kind == Violation::Kind::invertibility);
    CHECK_THROWS_AS(require_admissible(ar1(-1.2)), AdmissibilityError);

    ArmaParameters bad_var = ar1(0.5);
    bad_var.sigma2 = 0.0;
    CHECK_FALSE(check_admissible(bad_var).ok());
}

TEST_CASE("property: admissible iff all root moduli exceed 1 + 1e-8") {
    std::mt19937_64 gen(17);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 500; ++i) {
        ArmaParameters p;
        p.ar = Eigen::Vector2d(u(gen), u(gen) * 0.5);
        p.ma = Eigen::Vector2d(u(gen), u(gen) * 0.5);
        const auto rep = check_admissible(p);
        const bool roots_ok = (rep.ar_root_moduli.array() > 1.0 + kRootTolerance).all() &&
                              (rep.ma_root_moduli.array() > 1.0 + kRootTolerance).all();
        REQUIRE(rep.ok() == roots_ok);
    }
    // AR(1) root is 1/phi.
    const auto rep = check_admissible(ar1(0.5));
    CHECK(rep.ar_root_moduli(0) == doctest::Approx(2.0));
}

TEST_CASE("psi weights") {
    const auto psi = psi_weights(make_arma11(0.5, 0.5, 1.0), 5);
    CHECK(psi(0) == 1.0);
    for (int j = 1; j < 5; ++j) CHECK(psi(j) == doctest::Approx(1.0 * std::pow(0.5, j - 1)));
    // Integrated AR(1): cumulative sums.
    const auto psi_i = psi_weights(ar1(0.5), 4, 1);
    CHECK(psi_i(1) == doctest::Approx(1.5));
    CHECK(psi_i(2) == doctest::Approx(1.75));
}

TEST_CASE("simulate: determinism, degenerate noise, stationary moments") {
    const auto p = make_arma11(0.6, 0.2, 1.0);
    const ModelOrder o{1, 0, 1, false};
    CHECK(simulate(p, o, 200, 5).values() == simulate(p, o, 200, 5).values());
    CHECK(simulate(p, o, 200, 5).values() != simulate(p, o, 200, 6).values());
    CHECK(simulate(p, o, 10, 5, 1950).start() == 1950);
    CHECK_THROWS_AS(simulate(ar1(1.1), {1, 0, 0, false}, 10, 1), AdmissibilityError);
    CHECK(burn_in_length(1, 1) == 500);
    CHECK(burn_in_length(40, 20) == 600);

    ArmaParameters c;
    c.ar = Eigen::VectorXd(0);
    c.ma = Eigen::VectorXd(0);
    c.mean = 0.42;
    c.sigma2 = 1e-24;
    const auto flat = simulate(c, {0, 0, 0, true}, 50, 1);
    CHECK((flat.values().array() - 0.42).abs().maxCoeff() < 1e-9);

    // One path's variance has relative sd ~1.9% here, so the 2% band is a
    // fixed-seed example; the averaged check below carries the real claim.
    const double stationary = 1.0 / (1.0 - 0.81);
    CHECK(std::abs(moments(simulate(ar1(0.9), {1, 0, 0, false}, 100000, 0)).variance / stationary - 1.0) < 0.02);
    double mean_dev = 0.0;
    for (std::uint64_t s = 1; s <= 50; ++s)
        mean_dev += moments(simulate(ar1(0.9), {1, 0, 0, false}, 100000, 1000 + s)).variance / stationary - 1.0;
    CHECK(std::abs(mean_dev / 50.0) < 0.01);  // ~3.7 standard errors

    const auto y = simulate(make_arma11(0.5, 0.5, 1.0), o, 100000, 9);
    CHECK(std::abs(sample_acf(y, 1).at_lag(1) - 0.714) < 0.02);

    const auto walk = simulate(ar1(0.3), {1, 1, 0, false}, 300, 10);
    CHECK(walk.size() == 300);
}

TEST_CASE("simulate is burn-in independent in distribution") {
    // Sample means of simulated paths versus those of a path generated with
    // twice the burn-in by an independent reference recursion.
    const double phi = 0.8, theta = 0.3;
    std::vector<double> a, b;
    for (std::uint64_t s = 0; s < 200; ++s) {
        a.push_back(simulate(make_arma11(phi, theta, 1.0), {1, 0, 1, false}, 400, 100 + s).values().mean());
        b.push_back(testing::simulate_arma11_reference(phi, theta, 1.0, 400, 900 + s, 1000).mean());
    }
    const auto mean = [](const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / v.size(); };
    const auto var = [&](const std::vector<double>& v) {
        const double m = mean(v);
        double acc = 0.0;
        for (double x : v) acc += (x - m) * (x - m);
        return acc / (v.size() - 1);
    };
    const double se = std::sqrt(var(a) / a.size() + var(b) / b.size());
    CHECK(std::abs(mean(a) - mean(b)) < 3.0 * se);
}

TEST_CASE("log-likelihood of white noise is the iid Gaussian density") {
    std::mt19937_64 gen(2);
    std::normal_distribution<double> nd(0.0, 1.5);
    Eigen::VectorXd x(30);
    for (auto& v : x) v = nd(gen);
    ArmaParameters p;
    p.ar = Eigen::VectorXd(0);
    p.ma = Eigen::VectorXd(0);
    p.sigma2 = 2.0;
    double expected = 0.0;
    for (double v : x) expected += -0.5 * std::log(2.0 * std::numbers::pi * 2.0) - v * v / 4.0;
    const auto ll = log_likelihood(p, {0, 0, 0, true}, TimeSeries(0, x));
    CHECK(ll.loglik == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("ARMA(1,1) log-likelihood equals the brute-force multivariate normal density") {
    std::mt19937_64 gen(31);
    std::uniform_real_distribution<double> coef(-0.95, 0.95);
    std::uniform_real_distribution<double> var(0.2, 3.0);
    std::normal_distribution<double> nd;
    for (int draw = 0; draw < 20; ++draw) {
        const double phi = coef(gen), theta = coef(gen), sigma2 = var(gen), mean = nd(gen);
        const Eigen::Index n = 3 + draw % 8;  // 3..10
        Eigen::VectorXd x(n);
        for (auto& v : x) v = mean + nd(gen);
        const auto ll = log_likelihood(make_arma11(phi, theta, sigma2, mean), {1, 0, 1, true}, TimeSeries(0, x));
        REQUIRE(std::abs(ll.loglik - testing::brute_force_arma11_loglik(x, phi, theta, sigma2, mean)) <= 1e-8);
    }
}

TEST_CASE("AR(1) log-likelihood equals the closed form") {
    const auto x = simulate(ar1(0.7, 0.5, 1.2), {1, 0, 0, true}, 200, 4).values();
    const auto ll = log_likelihood(ar1(0.7, 0.5, 1.2), {1, 0, 0, true}, TimeSeries(0, x));
    CHECK(std::abs(ll.loglik - testing::closed_form_ar1_loglik(x, 0.7, 0.5, 1.2)) <= 1e-10 * std::abs(ll.loglik));
}

TEST_CASE("log-likelihood differences the series and guards its inputs") {
    const auto& g = testing::gistemp();
    const auto p = make_arma11(0.3, -0.7, 0.01);
    const auto lv = log_likelihood(p, {1, 1, 1, false}, g);
    const auto lw = filter_arma(p, difference(g.values(), 1));
    CHECK(lv.residuals.size() == g.size() - 1);
    CHECK(lv.loglik == doctest::Approx(lw.loglik).epsilon(1e-14));
    CHECK_THROWS_AS(log_likelihood(ar1(1.0), {1, 0, 0, false}, g), AdmissibilityError);
    CHECK_THROWS_AS(log_likelihood(ar1(0.5), {1, 0, 1, false}, g), DimensionError);
    CHECK_THROWS_AS(log_likelihood(p, {1, 0, 1, false}, TimeSeries(0, Eigen::Vector2d(1, 2))),
                    InsufficientDataError);
}

TEST_CASE("log-likelihood peaks near the generating AR coefficient") {
    const auto x = simulate(ar1(0.7), {1, 0, 0, false}, 5000, 12);
    const ModelOrder o{1, 0, 0, false};
    const double l7 = log_likelihood(ar1(0.7), o, x).loglik;
    CHECK(l7 > log_likelihood(ar1(0.5), o, x).loglik);
    CHECK(l7 > log_likelihood(ar1(0.9), o, x).loglik);
}

TEST_CASE("filter residuals under the true model are white") {
    const auto p = make_arma11(0.7, 0.4, 1.0);
    const ModelOrder o{1, 0, 1, false};
    int white = 0;
    const int runs = 100;
    for (int r = 0; r < runs; ++r) {
        const auto x = simulate(p, o, 500, 300 + r);
        const auto res = log_likelihood(p, o, x);
        const Eigen::VectorXd z = res.residuals.array() / res.residual_variances.array().sqrt();
        white += ljung_box(z, 10, 10).p_value > 0.01;
    }
    CHECK(white >= 0.95 * runs);
}

TEST_CASE("state-space initial covariance solves the Lyapunov equation") {
    ArmaParameters p;
    p.ar = Eigen::Vector2d(0.5, -0.3);
    p.ma = Eigen::Vector2d(0.4, 0.2);
    const auto ss = make_state_space(p);
    const Eigen::MatrixXd rhs =
        ss.transition * ss.initial_cov * ss.transition.transpose() + ss.selection * ss.selection.transpose();
    CHECK((rhs - ss.initial_cov).cwiseAbs().maxCoeff() < 1e-12);
    // gamma(0) from the state equals the closed-form ACVF route.
    CHECK(ss.initial_cov(0, 0) == doctest::Approx(arma_autocovariance(p, 0)(0)).epsilon(1e-12));
}
