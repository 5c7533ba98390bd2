#include "armakit/arma.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "armakit/linalg.hpp"

namespace armakit {

void ModelOrder::validate() const {
    if (p < 0 || d < 0 || q < 0) throw ConfigError("model order must be non-negative");
    if (d > 2) throw ConfigError("differencing order d > 2 is not supported");
    if (p + q < 1 && !include_constant)
        throw ConfigError("model " + label() + " has no parameters besides the variance");
}

std::string ModelOrder::label() const {
    std::ostringstream os;
    if (d == 0 && q == 0)
        os << "AR(" << p << ")";
    else if (d == 0 && p == 0)
        os << "MA(" << q << ")";
    else if (d == 0)
        os << "ARMA(" << p << "," << q << ")";
    else
        os << "ARIMA(" << p << "," << d << "," << q << ")";
    if (include_constant) os << (d == 0 ? "+mean" : "+drift");
    return os.str();
}

ModelOrder make_order(int p, int d, int q) { return {p, d, q, d == 0}; }

ArmaParameters make_arma11(double phi, double theta, double sigma2, double mean) {
    ArmaParameters params;
    params.ar = Eigen::VectorXd::Constant(1, phi);
    params.ma = Eigen::VectorXd::Constant(1, theta);
    params.sigma2 = sigma2;
    params.mean = mean;
    return params;
}

AdmissibilityReport check_admissible(const ArmaParameters& params) {
    AdmissibilityReport rep;
    rep.ar_root_moduli = polynomial_root_moduli(-params.ar);
    rep.ma_root_moduli = polynomial_root_moduli(params.ma);
    const double bound = 1.0 + kRootTolerance;
    if (rep.ar_root_moduli.size() > 0 && !(rep.ar_root_moduli(0) > bound)) {
        rep.violations.push_back({Violation::Kind::stationarity, rep.ar_root_moduli(0),
                                  "AR polynomial has a root with modulus " +
                                      std::to_string(rep.ar_root_moduli(0)) + " (not outside the unit circle)"});
    }
    if (rep.ma_root_moduli.size() > 0 && !(rep.ma_root_moduli(0) > bound)) {
        rep.violations.push_back({Violation::Kind::invertibility, rep.ma_root_moduli(0),
                                  "MA polynomial has a root with modulus " +
                                      std::to_string(rep.ma_root_moduli(0)) + " (not outside the unit circle)"});
    }
    if (!params.ar.allFinite() || !params.ma.allFinite())
        rep.violations.push_back({Violation::Kind::stationarity, 0.0, "non-finite coefficients"});
    if (!(params.sigma2 > 0.0) || !std::isfinite(params.sigma2))
        rep.violations.push_back({Violation::Kind::variance, 0.0, "innovation variance must be positive"});
    return rep;
}

void require_admissible(const ArmaParameters& params) {
    const auto rep = check_admissible(params);
    if (rep.ok()) return;
    std::string msg = "inadmissible ARMA parameters:";
    for (const auto& v : rep.violations) msg += " " + v.message + ";";
    throw AdmissibilityError(msg);
}

Eigen::VectorXd psi_weights(const ArmaParameters& params, int count, int d) {
    // phi*(z) = phi(z) (1 - z)^d written as 1 - sum a_i z^i
    Eigen::VectorXd poly = Eigen::VectorXd::Zero(params.p() + 1);
    poly(0) = 1.0;
    poly.tail(params.p()) = -params.ar;
    for (int k = 0; k < d; ++k) {
        Eigen::VectorXd next = Eigen::VectorXd::Zero(poly.size() + 1);
        next.head(poly.size()) += poly;
        next.tail(poly.size()) -= poly;
        poly = std::move(next);
    }
    const Eigen::VectorXd a = -poly.tail(poly.size() - 1);

    Eigen::VectorXd psi = Eigen::VectorXd::Zero(count);
    for (int j = 0; j < count; ++j) {
        double v = j == 0 ? 1.0 : (j <= params.q() ? params.ma(j - 1) : 0.0);
        for (Eigen::Index i = 1; i <= std::min<Eigen::Index>(j, a.size()); ++i) v += a(i - 1) * psi(j - i);
        psi(j) = v;
    }
    return psi;
}

StateSpace make_state_space(const ArmaParameters& params) {
    const Eigen::Index p = params.p();
    const Eigen::Index q = params.q();
    const Eigen::Index r = std::max<Eigen::Index>(p, q + 1);
    StateSpace ss;
    ss.transition = Eigen::MatrixXd::Zero(r, r);
    ss.transition.col(0).head(p) = params.ar;
    if (r > 1) ss.transition.topRightCorner(r - 1, r - 1).setIdentity();
    ss.selection = Eigen::VectorXd::Zero(r);
    ss.selection(0) = 1.0;
    ss.selection.segment(1, q) = params.ma;
    ss.initial_cov = solve_discrete_lyapunov(ss.transition, ss.selection * ss.selection.transpose());
    return ss;
}

Eigen::VectorXd arma_autocovariance(const ArmaParameters& params, int max_lag) {
    require_admissible(params);
    if (max_lag < 0) throw RangeError("max_lag must be non-negative");
    const StateSpace ss = make_state_space(params);
    Eigen::VectorXd gamma(max_lag + 1);
    Eigen::VectorXd col = ss.initial_cov.col(0);  // T^h P0 e1
    for (int h = 0; h <= max_lag; ++h) {
        gamma(h) = params.sigma2 * col(0);
        col = ss.transition * col;
    }
    return gamma;
}

int burn_in_length(int p, int q) { return std::max(500, 10 * (p + q)); }

TimeSeries simulate(const ArmaParameters& params, const ModelOrder& order, Eigen::Index n, std::uint64_t seed,
                    std::int64_t start) {
    require_admissible(params);
    if (order.p != params.p() || order.q != params.q())
        throw DimensionError("simulate: parameter lengths do not match the model order");
    if (n < 1) throw RangeError("simulate: n must be >= 1");

    const Eigen::Index p = params.p();
    const Eigen::Index q = params.q();
    const Eigen::Index burn = burn_in_length(order.p, order.q);
    const Eigen::Index total = burn + n;

    std::mt19937_64 gen(seed);
    std::normal_distribution<double> noise(0.0, std::sqrt(params.sigma2));
    Eigen::VectorXd w(total);
    for (Eigen::Index t = 0; t < total; ++t) w(t) = noise(gen);

    Eigen::VectorXd x = Eigen::VectorXd::Zero(total);
    for (Eigen::Index t = 0; t < total; ++t) {
        double v = w(t);
        for (Eigen::Index i = 1; i <= std::min(p, t); ++i) v += params.ar(i - 1) * x(t - i);
        for (Eigen::Index j = 1; j <= std::min(q, t); ++j) v += params.ma(j - 1) * w(t - j);
        x(t) = v;
    }
    Eigen::VectorXd out = x.tail(n).array() + params.mean;
    for (int k = 0; k < order.d; ++k) {
        for (Eigen::Index t = 1; t < n; ++t) out(t) += out(t - 1);
    }
    return {start, std::move(out)};
}

LikelihoodResult filter_arma(const ArmaParameters& params, const Eigen::Ref<const Eigen::VectorXd>& w) {
    const StateSpace ss = make_state_space(params);
    const Eigen::Index r = ss.transition.rows();
    const Eigen::Index n = w.size();
    // T is a companion matrix: first column phi (zero padded), ones above the
    // diagonal. Products with T are written out to keep the loop allocation free.
    const Eigen::VectorXd phi = ss.transition.col(0);
    const Eigen::MatrixXd RR = ss.selection * ss.selection.transpose();

    LikelihoodResult out;
    out.residuals.resize(n);
    out.residual_variances.resize(n);

    Eigen::VectorXd a = Eigen::VectorXd::Zero(r);
    Eigen::MatrixXd P = ss.initial_cov;
    Eigen::VectorXd K(r);
    Eigen::MatrixXd Pnext(r, r);
    bool steady = false;

    for (Eigen::Index t = 0; t < n; ++t) {
        const double v = w(t) - params.mean - a(0);
        const double f = P(0, 0);
        if (!(f > 0.0) || !std::isfinite(f))
            throw NumericalDegeneracyError("Kalman filter lost positive definiteness at step " + std::to_string(t));
        if (!steady)
            for (Eigen::Index i = 0; i < r; ++i) K(i) = (phi(i) * P(0, 0) + (i + 1 < r ? P(i + 1, 0) : 0.0)) / f;
        const double a0 = a(0);
        for (Eigen::Index i = 0; i < r; ++i) a(i) = phi(i) * a0 + (i + 1 < r ? a(i + 1) : 0.0) + K(i) * v;
        if (!steady) {
            double change = 0.0;
            double scale = 1.0;
            for (Eigen::Index j = 0; j < r; ++j) {
                for (Eigen::Index i = j; i < r; ++i) {
                    double tpt = phi(i) * phi(j) * P(0, 0);
                    if (j + 1 < r) tpt += phi(i) * P(0, j + 1);
                    if (i + 1 < r) tpt += phi(j) * P(i + 1, 0);
                    if (i + 1 < r && j + 1 < r) tpt += P(i + 1, j + 1);
                    const double next = tpt + RR(i, j) - f * K(i) * K(j);
                    Pnext(i, j) = Pnext(j, i) = next;
                    change = std::max(change, std::abs(next - P(i, j)));
                    scale = std::max(scale, std::abs(P(i, j)));
                }
            }
            // Converged Riccati recursion: gain and f stay fixed from here on.
            steady = change < 1e-15 * scale;
            P.swap(Pnext);
        }
        out.residuals(t) = v;
        out.residual_variances(t) = params.sigma2 * f;
        out.scaled_ssr += v * v / f;
        out.sum_log_f += std::log(f);
    }
    out.next_prediction = params.mean + a(0);
    const auto nd = static_cast<double>(n);
    out.loglik = -0.5 * (nd * std::log(2.0 * std::numbers::pi * params.sigma2) + out.sum_log_f +
                         out.scaled_ssr / params.sigma2);
    return out;
}

LikelihoodResult log_likelihood(const ArmaParameters& params, const ModelOrder& order, const TimeSeries& series) {
    require_admissible(params);
    if (order.p != params.p() || order.q != params.q())
        throw DimensionError("log_likelihood: parameter lengths do not match the model order");
    if (series.size() - order.d <= order.p + order.q)
        throw InsufficientDataError("log_likelihood: need n - d > p + q observations");
    const Eigen::VectorXd w = difference(series.values(), order.d);
    return filter_arma(params, w);
}

}  // namespace armakit
