// Acceptance runner: one PASS/FAIL line per criterion, non-zero exit when any
// hard criterion fails. Soft checks print SOFT-PASS/SOFT-FAIL and never fail
// the run. Every tolerance lives in the constants below.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "armakit/uncertainty.hpp"
#include "test_support.hpp"

using namespace armakit;
using testing::no_constant;

namespace {

// 1. GISTEMP coefficients
constexpr double kAr1Phi = 0.9786, kAr1PhiTol = 0.02;
constexpr double kAr1Var = 0.0122, kAr1VarTol = 0.003;
constexpr double kArma11Phi = 0.9938, kArma11PhiTol = 0.01;
constexpr double kArma11Theta = -0.4365, kArma11ThetaTol = 0.08;
constexpr double kFitSeconds = 10.0;
// 2. residual maxima, in the expected ascending order
constexpr double kMaxResidualRelTol = 0.15;
// 3. ADF fixtures
constexpr double kAdfFixtureTol = 1e-4;
// 4. exact likelihood
constexpr double kLoglikTol = 1e-8;
constexpr int kLoglikDraws = 20;
// 5. simulation recovery
constexpr Eigen::Index kRecoveryN = 5000;
constexpr int kRecoverySeeds = 50;
constexpr double kRecoveryPhiTol = 0.03, kRecoveryThetaTol = 0.06;
constexpr double kRecoverySeconds = 60.0;
// 6. forecast coverage
constexpr int kCoverageReps = 10000;
constexpr Eigen::Index kCoverageN = 300;
constexpr double kCoverageTarget = 0.95, kCoverageTol = 0.02;
constexpr int kMonotoneDraws = 100;
// 7. uncertainty model
constexpr Eigen::Index kBiasN = 10000;
constexpr double kBetaTol = 0.05;
constexpr double kDiffVarRelTol = 0.05;
// 8. properties
constexpr double kRoundTripTol = 1e-10;
constexpr double kPacfOracleTol = 1e-6;
constexpr double kAffineTol = 1e-10;
constexpr double kScaleEquivTol = 1e-4;
constexpr double kKdeTol = 1e-3;
// soft: residual moments (skew, kurtosis)
constexpr double kMomentTol = 0.15;

struct Outcome {
    bool pass = true;
    std::string detail;
};

int hard_failures = 0;

void report(const std::string& id, const std::string& name, const Outcome& o, bool soft = false) {
    const char* tag = o.pass ? (soft ? "SOFT-PASS" : "PASS") : (soft ? "SOFT-FAIL" : "FAIL");
    std::printf("%-9s %-4s %s: %s\n", tag, id.c_str(), name.c_str(), o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass && !soft) ++hard_failures;
}

void run(const std::string& id, const std::string& name, const std::function<Outcome()>& f, bool soft = false) {
    try {
        report(id, name, f(), soft);
    } catch (const std::exception& e) {
        report(id, name, {false, std::string("exception: ") + e.what()}, soft);
    }
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool within(double v, double target, double tol) { return std::abs(v - target) <= tol; }

Eigen::VectorXd gaussian(Eigen::Index n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> nd;
    Eigen::VectorXd x(n);
    for (auto& v : x) v = nd(gen);
    return x;
}

Outcome criterion_gistemp_fits() {
    const auto& s = testing::gistemp();
    const auto t0 = std::chrono::steady_clock::now();
    const auto ar1 = fit(s, no_constant(1, 0, 0));
    const auto arma = fit(s, no_constant(1, 0, 1));
    const double secs = seconds_since(t0);
    const double phi1 = ar1.params.ar(0), var1 = ar1.params.sigma2;
    const double phi2 = arma.params.ar(0), th2 = arma.params.ma(0);
    Outcome o;
    o.pass = within(phi1, kAr1Phi, kAr1PhiTol) && within(var1, kAr1Var, kAr1VarTol) &&
             within(phi2, kArma11Phi, kArma11PhiTol) && within(th2, kArma11Theta, kArma11ThetaTol) &&
             secs < kFitSeconds;
    o.detail = fmt("AR(1) phi=%.4f sigma2=%.5f (sqrt %.4f); ARMA(1,1) phi=%.4f theta=%.4f sigma2=%.5f; %.3fs",
                   phi1, var1, std::sqrt(var1), phi2, th2, arma.params.sigma2, secs);
    return o;
}

Outcome criterion_residual_order() {
    const auto& s = testing::gistemp();
    const std::vector<std::pair<ModelOrder, double>> cases = {{no_constant(1, 0, 1), 0.232144},
                                                              {no_constant(1, 1, 1), 0.240199},
                                                              {no_constant(1, 0, 0), 0.266279},
                                                              {no_constant(1, 2, 0), 0.398333}};
    Outcome o;
    double prev = -1.0;
    for (const auto& [order, expected] : cases) {
        const double m = diagnose(fit(s, order), s).max_abs_residual;
        const bool ok = std::abs(m - expected) <= kMaxResidualRelTol * expected && m > prev;
        o.pass = o.pass && ok;
        o.detail += fmt("%s=%.6f ", order.label().c_str(), m);
        prev = m;
    }
    return o;
}

Outcome criterion_adf() {
    const auto r = adf_test(testing::gistemp());
    Outcome o;
    o.pass = r.p_value > 0.05;
    for (double c : r.critical_values) o.pass = o.pass && r.statistic > c;

    const auto series = testing::adf_series();
    double worst = 0.0;
    std::set<std::string> names;
    for (const auto& row : testing::read_csv(testing::fixture_dir() / "adf_reference.csv")) {
        AdfOptions opt;
        opt.regression = row[1] == "n" ? AdfRegression::none
                         : row[1] == "ct" ? AdfRegression::constant_trend
                                          : AdfRegression::constant;
        opt.max_lag = std::stoi(row[2]);
        opt.autolag = row[3] == "AIC";
        const auto f = adf_test(series.at(row[0]), opt);
        names.insert(row[0]);
        for (auto [got, col] : {std::pair{f.statistic, 4}, {f.p_value, 5}, {f.critical_values[0], 8},
                                {f.critical_values[1], 9}, {f.critical_values[2], 10}})
            worst = std::max(worst, std::abs(got - std::stod(row[col])));
        if (f.used_lag != std::stoi(row[6])) worst = std::numeric_limits<double>::infinity();
    }
    o.pass = o.pass && names.size() >= 3 && worst <= kAdfFixtureTol;
    o.detail = fmt("GISTEMP stat=%.4f p=%.4f crit=(%.3f, %.3f, %.3f); %zu fixture series, max dev %.2e",
                   r.statistic, r.p_value, r.critical_values[0], r.critical_values[1], r.critical_values[2],
                   names.size(), worst);
    return o;
}

Outcome criterion_loglik() {
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> coef(-0.95, 0.95);
    std::uniform_real_distribution<double> var(0.1, 3.0);
    std::uniform_int_distribution<int> len(2, 10);
    double worst = 0.0;
    for (int i = 0; i < kLoglikDraws; ++i) {
        const auto params = make_arma11(coef(gen), coef(gen), var(gen), coef(gen));
        const Eigen::Index n = len(gen);
        const Eigen::VectorXd x = testing::simulate_arma11_reference(params.ar(0), params.ma(0), params.sigma2, n,
                                                                     static_cast<std::uint64_t>(i)).array() +
                                  params.mean;
        const double ours = filter_arma(params, x).loglik;
        const double oracle =
            testing::brute_force_arma11_loglik(x, params.ar(0), params.ma(0), params.sigma2, params.mean);
        worst = std::max(worst, std::abs(ours - oracle));
    }
    return {worst <= kLoglikTol, fmt("%d draws, n<=10, max |diff| %.2e", kLoglikDraws, worst)};
}

Outcome criterion_recovery() {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    for (auto [phi, theta] : {std::pair{0.7, 0.0}, {0.9, -0.4}, {0.5, 0.5}}) {
        std::vector<double> dphi, dtheta;
        for (int seed = 0; seed < kRecoverySeeds; ++seed) {
            const auto params = make_arma11(phi, theta, 1.0);
            const auto order = make_order(1, 0, 1);
            const auto s = simulate(params, order, kRecoveryN, static_cast<std::uint64_t>(seed));
            const auto m = fit(s, order);
            dphi.push_back(std::abs(m.params.ar(0) - phi));
            dtheta.push_back(std::abs(m.params.ma(0) - theta));
        }
        const double mp = testing::median(dphi), mt = testing::median(dtheta);
        o.pass = o.pass && mp <= kRecoveryPhiTol && mt <= kRecoveryThetaTol;
        o.detail += fmt("(%.1f,%.1f): med|dphi|=%.4f med|dtheta|=%.4f; ", phi, theta, mp, mt);
    }
    const double secs = seconds_since(t0);
    o.pass = o.pass && secs < kRecoverySeconds;
    o.detail += fmt("%.1fs", secs);
    return o;
}

Outcome criterion_forecast() {
    // Coverage: each replication fits ARMA(1,1) on the first n points and
    // checks the held-out values at h = 1, 5, 10.
    const auto params = make_arma11(0.7, -0.3, 1.0, 0.0);
    const auto order = make_order(1, 0, 1);
    const std::array<int, 3> horizons{1, 5, 10};
    std::array<int, 3> hits{};
    const auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < kCoverageReps; ++r) {
        const auto full = simulate(params, order, kCoverageN + 10, static_cast<std::uint64_t>(100000 + r));
        const TimeSeries past(full.start(), full.values().head(kCoverageN));
        const auto f = forecast(fit(past, order), past, 10);
        for (std::size_t k = 0; k < horizons.size(); ++k) {
            const int h = horizons[k];
            const double truth = full[kCoverageN + h - 1];
            if (truth >= f.lower(h - 1) && truth <= f.upper(h - 1)) ++hits[k];
        }
    }
    Outcome o;
    for (std::size_t k = 0; k < horizons.size(); ++k) {
        const double cov = static_cast<double>(hits[k]) / kCoverageReps;
        o.pass = o.pass && within(cov, kCoverageTarget, kCoverageTol);
        o.detail += fmt("h=%d %.4f; ", horizons[k], cov);
    }

    std::mt19937_64 gen(77);
    std::uniform_real_distribution<double> coef(-0.98, 0.98);
    int monotone = 0;
    for (int i = 0; i < kMonotoneDraws; ++i) {
        const auto p = make_arma11(coef(gen), coef(gen), 1.0);
        const ModelOrder o2{1, i % 3, 1, false};
        FittedModel m;
        m.order = o2;
        m.params = p;
        const auto f = forecast(m, simulate(p, o2, 50, static_cast<std::uint64_t>(i)), 50);
        bool ok = (f.variance.array() > 0.0).all();
        for (int h = 1; h < 50; ++h) ok = ok && f.variance(h) >= f.variance(h - 1);
        monotone += ok ? 1 : 0;
    }
    o.pass = o.pass && monotone == kMonotoneDraws;
    o.detail += fmt("monotone variance %d/%d; %.1fs", monotone, kMonotoneDraws, seconds_since(t0));
    return o;
}

Outcome criterion_uncertainty() {
    Outcome o;
    for (double beta : {0.3, 0.6, 0.9}) {
        BiasedAnomalyConfig c;
        c.alpha = 0.02;
        c.beta = beta;
        c.sigma2_land = 0.004;
        c.sigma2_sea = 0.007;
        c.n = kBiasN;
        c.seed = 31;
        const auto m = fit(simulate_biased_anomaly(c), make_order(1, 0, 1));
        o.pass = o.pass && within(m.params.ar(0), beta, kBetaTol);
        o.detail += fmt("beta=%.1f fit %.4f; ", beta, m.params.ar(0));
    }

    BiasedAnomalyConfig truth_cfg;
    truth_cfg.beta = 0.8;
    truth_cfg.sigma2_land = 0.01;
    truth_cfg.sigma2_sea = 0.01;
    truth_cfg.n = kBiasN;
    truth_cfg.seed = 5;
    const auto truth = simulate_biased_anomaly(truth_cfg);
    ReducedCoverageConfig rc;
    rc.sigma2_land = 0.004;
    rc.sigma2_sea = 0.007;
    rc.seed = 6;
    const auto d = difference_series(truth, observe_reduced_coverage(truth, rc));
    const double v = moments(d).variance;
    const double expect = decompose(rc.sigma2_land, rc.sigma2_sea).sigma2_total;
    o.pass = o.pass && std::abs(v - expect) <= kDiffVarRelTol * expect;
    o.detail += fmt("var(D)=%.5f vs %.5f", v, expect);
    return o;
}

Outcome criterion_properties() {
    Outcome o;
    std::vector<std::string> failed;
    auto check = [&](bool ok, const std::string& what) {
        if (!ok) failed.push_back(what);
    };

    // difference / integrate round trip
    double rt = 0.0;
    for (int d = 1; d <= 2; ++d)
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            Eigen::VectorXd x = gaussian(50, seed) * 3.0;
            std::partial_sum(x.begin(), x.end(), x.begin());
            const Eigen::VectorXd back = integrate(difference(x, d), x.head(d));
            rt = std::max(rt, (back - x).cwiseAbs().maxCoeff());
        }
    check(rt <= kRoundTripTol, "round trip");

    // PACF against the regression oracle
    double pacf_dev = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto s = simulate(make_arma11(0.6, 0.3, 1.0), make_order(1, 0, 1), 200, seed);
        const auto pacf = sample_pacf(s.values(), 10);
        for (int h = 1; h <= 10; ++h)
            pacf_dev = std::max(pacf_dev, std::abs(pacf.at_lag(h) - testing::regression_pacf(s.values(), h)));
    }
    check(pacf_dev <= kPacfOracleTol, "pacf oracle");

    // ACF affine invariance
    double aff = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Eigen::VectorXd x = gaussian(120, seed + 50);
        const Eigen::VectorXd y = (x.array() * -4.2 + 17.0).matrix();
        aff = std::max(aff, (sample_acf(x, 15).values - sample_acf(y, 15).values).cwiseAbs().maxCoeff());
    }
    check(aff <= kAffineTol, "acf affine");

    // fit scale-equivariance on the GISTEMP snapshot
    const auto& g = testing::gistemp();
    const double c = 10.0;
    const auto m1 = fit(g, no_constant(1, 0, 1));
    const auto m2 = fit(g.with_values(g.values() * c), no_constant(1, 0, 1));
    const double eq = std::max({std::abs(m1.params.ar(0) - m2.params.ar(0)), std::abs(m1.params.ma(0) - m2.params.ma(0)),
                                std::abs(m2.params.sigma2 / (c * c) - m1.params.sigma2) / m1.params.sigma2});
    check(eq <= kScaleEquivTol, "scale equivariance");

    // KDE integral
    double kde = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Eigen::VectorXd x = gaussian(100 + 40 * static_cast<Eigen::Index>(seed), seed);
        kde = std::max(kde, std::abs(trapezoid(gaussian_kde(x, silverman_bandwidth(x))) - 1.0));
    }
    check(kde <= kKdeTol, "kde integral");

    // byte-identical JSON under a fixed seed
    AnalysisConfig cfg;
    cfg.input = testing::gistemp_path();
    cfg.orders = {no_constant(1, 0, 0), no_constant(1, 0, 1), no_constant(1, 1, 1), no_constant(1, 2, 0)};
    cfg.seed = 42;
    const std::string j1 = run_analysis(cfg).json.dump(2);
    const std::string j2 = run_analysis(cfg).json.dump(2);
    check(j1 == j2, "json determinism");

    o.pass = failed.empty();
    o.detail = fmt("round trip %.1e, pacf %.1e, affine %.1e, scale %.1e, kde %.1e, json %s", rt, pacf_dev, aff, eq,
                   kde, j1 == j2 ? "identical" : "differs");
    for (const auto& f : failed) o.detail += "; failed: " + f;
    return o;
}

Outcome soft_moments(const ModelOrder& order, double skew, double kurt) {
    const auto& s = testing::gistemp();
    const auto rep = diagnose(fit(s, order), s);
    const double sk = *rep.moments.skewness, ku = *rep.moments.kurtosis;
    return {within(sk, skew, kMomentTol) && within(ku, kurt, kMomentTol),
            fmt("%s skew %.3f (ref %.2f), kurtosis %.3f (ref %.2f)", order.label().c_str(), sk, skew, ku, kurt)};
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    run("1", "GISTEMP AR(1) and ARMA(1,1) coefficients", criterion_gistemp_fits);
    run("2", "residual maxima ordering", criterion_residual_order);
    run("3", "ADF verdict and fixtures", criterion_adf);
    run("4", "exact likelihood vs multivariate normal", criterion_loglik);
    run("5", "simulation recovery", criterion_recovery);
    run("6", "forecast coverage and variance growth", criterion_forecast);
    run("7", "uncertainty model equivalence", criterion_uncertainty);
    run("8", "property suites", criterion_properties);
    run("S1", "AR(1) residual moments", [] { return soft_moments(no_constant(1, 0, 0), -0.17, 2.42); }, true);
    run("S2", "ARMA(1,1) residual moments", [] { return soft_moments(no_constant(1, 0, 1), -0.13, 2.17); }, true);
    run("S3", "ARIMA(1,1,1) residual moments", [] { return soft_moments({1, 1, 1, true}, -0.13, 2.20); }, true);
    run("S4", "ARIMA(1,2,0) residual moments", [] { return soft_moments(no_constant(1, 2, 0), -0.23, 2.64); }, true);
    std::printf("%s: %d hard failure(s), %.1fs total\n", hard_failures ? "FAILED" : "ALL PASSED", hard_failures,
                seconds_since(t0));
    return hard_failures ? 1 : 0;
}
