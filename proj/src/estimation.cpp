#include "armakit/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <sstream>

#include "armakit/stationarity.hpp"

namespace armakit {

namespace {

// |u| cap in transformed space: tanh(8) = 1 - 2.3e-7 keeps every trial
// point strictly inside the admissible region.
constexpr double kTransformBound = 8.0;
constexpr double kInf = std::numeric_limits<double>::infinity();

double information_criterion(double loglik, int k, Eigen::Index n, Criterion c) {
    return c == Criterion::aic ? -2.0 * loglik + 2.0 * k
                               : -2.0 * loglik + static_cast<double>(k) * std::log(static_cast<double>(n));
}

void finish_criteria(FittedModel& m) {
    const int k = m.parameter_count();
    m.aic = information_criterion(m.loglik, k, m.n_used, Criterion::aic);
    m.bic = information_criterion(m.loglik, k, m.n_used, Criterion::bic);
}

// Maps an unconstrained vector [u_ar, u_ma, mean / scale] to parameters.
struct Layout {
    int p = 0;
    int q = 0;
    bool constant = false;
    double scale = 1.0;

    [[nodiscard]] Eigen::Index size() const { return p + q + (constant ? 1 : 0); }

    [[nodiscard]] bool in_bounds(const Eigen::VectorXd& u) const {
        return (u.head(p + q).array().abs() <= kTransformBound).all();
    }

    [[nodiscard]] ArmaParameters unpack(const Eigen::VectorXd& u) const {
        ArmaParameters params;
        params.ar = constrain_ar(u.head(p));
        params.ma = constrain_ma(u.segment(p, q));
        params.mean = constant ? u(p + q) * scale : 0.0;
        params.sigma2 = 1.0;
        return params;
    }

    [[nodiscard]] Eigen::VectorXd pack(const ArmaParameters& params) const {
        Eigen::VectorXd u(size());
        u.head(p) = unconstrain_ar(params.ar);
        u.segment(p, q) = unconstrain_ma(params.ma);
        if (constant) u(p + q) = params.mean / scale;
        for (Eigen::Index i = 0; i < p + q; ++i) u(i) = std::clamp(u(i), -kTransformBound, kTransformBound);
        return u;
    }
};

// Negative exact log-likelihood with sigma2 concentrated out.
double profile_negloglik(const ArmaParameters& params, const Eigen::VectorXd& w) {
    try {
        const LikelihoodResult r = filter_arma(params, w);
        const auto n = static_cast<double>(w.size());
        const double s2 = r.scaled_ssr / n;
        if (!(s2 > 0.0) || !std::isfinite(s2)) return kInf;
        return 0.5 * (n * (std::log(2.0 * std::numbers::pi * s2) + 1.0) + r.sum_log_f);
    } catch (const NumericalDegeneracyError&) {
        return kInf;
    }
}

double css_objective(const ArmaParameters& params, const Eigen::VectorXd& w) {
    const Eigen::Index n = w.size();
    const Eigen::Index p = params.p();
    const Eigen::Index q = params.q();
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    double ss = 0.0;
    for (Eigen::Index t = p; t < n; ++t) {
        double v = w(t) - params.mean;
        for (Eigen::Index i = 1; i <= p; ++i) v -= params.ar(i - 1) * (w(t - i) - params.mean);
        for (Eigen::Index j = 1; j <= std::min(q, t); ++j) v -= params.ma(j - 1) * e(t - j);
        e(t) = v;
        ss += v * v;
    }
    return ss;
}

std::optional<Eigen::VectorXd> profile_standard_errors(const ArmaParameters& params, const ModelOrder& order,
                                                       const Eigen::VectorXd& w) {
    const int k = order.p + order.q + (order.include_constant ? 1 : 0);
    if (k == 0) return Eigen::VectorXd{};
    Eigen::VectorXd x(k);
    x.head(order.p) = params.ar;
    x.segment(order.p, order.q) = params.ma;
    if (order.include_constant) x(k - 1) = params.mean;

    auto f = [&](const Eigen::VectorXd& v) {
        ArmaParameters trial = params;
        trial.ar = v.head(order.p);
        trial.ma = v.segment(order.p, order.q);
        if (order.include_constant) trial.mean = v(k - 1);
        trial.sigma2 = 1.0;
        if (!check_admissible(trial).ok()) return kInf;
        return profile_negloglik(trial, w);
    };

    Eigen::VectorXd h(k);
    for (int i = 0; i < k; ++i) h(i) = 1e-4 * std::max(1e-2, std::abs(x(i)));
    Eigen::MatrixXd H(k, k);
    const double f0 = f(x);
    for (int i = 0; i < k; ++i) {
        for (int j = i; j < k; ++j) {
            Eigen::VectorXd pp = x, pm = x, mp = x, mm = x;
            pp(i) += h(i); pp(j) += h(j);
            pm(i) += h(i); pm(j) -= h(j);
            mp(i) -= h(i); mp(j) += h(j);
            mm(i) -= h(i); mm(j) -= h(j);
            double val;
            if (i == j) {
                Eigen::VectorXd xp = x, xm = x;
                xp(i) += h(i);
                xm(i) -= h(i);
                val = (f(xp) - 2.0 * f0 + f(xm)) / (h(i) * h(i));
            } else {
                val = (f(pp) - f(pm) - f(mp) + f(mm)) / (4.0 * h(i) * h(j));
            }
            if (!std::isfinite(val)) return std::nullopt;
            H(i, j) = H(j, i) = val;
        }
    }
    Eigen::LDLT<Eigen::MatrixXd> ldlt(H);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) return std::nullopt;
    const Eigen::VectorXd var = ldlt.solve(Eigen::MatrixXd::Identity(k, k)).diagonal();
    if ((var.array() <= 0.0).any()) return std::nullopt;
    return var.cwiseSqrt();
}

}  // namespace

Eigen::VectorXd pacf_to_ar(const Eigen::Ref<const Eigen::VectorXd>& pacf) {
    const Eigen::Index p = pacf.size();
    Eigen::VectorXd phi = Eigen::VectorXd::Zero(p);
    Eigen::VectorXd prev(p);
    for (Eigen::Index k = 0; k < p; ++k) {
        prev.head(k) = phi.head(k);
        const double r = pacf(k);
        for (Eigen::Index j = 0; j < k; ++j) phi(j) = prev(j) - r * prev(k - 1 - j);
        phi(k) = r;
    }
    return phi;
}

Eigen::VectorXd ar_to_pacf(const Eigen::Ref<const Eigen::VectorXd>& ar) {
    const Eigen::Index p = ar.size();
    Eigen::VectorXd pacf(p);
    Eigen::VectorXd phi = ar;
    for (Eigen::Index k = p - 1; k >= 0; --k) {
        const double r = phi(k);
        if (!(std::abs(r) < 1.0)) throw AdmissibilityError("coefficients lie outside the stationary region");
        pacf(k) = r;
        Eigen::VectorXd prev(k);
        const double denom = 1.0 - r * r;
        for (Eigen::Index j = 0; j < k; ++j) prev(j) = (phi(j) + r * phi(k - 1 - j)) / denom;
        phi.head(k) = prev;
    }
    return pacf;
}

Eigen::VectorXd constrain_ar(const Eigen::Ref<const Eigen::VectorXd>& u) {
    return pacf_to_ar(u.array().tanh().matrix());
}

Eigen::VectorXd unconstrain_ar(const Eigen::Ref<const Eigen::VectorXd>& ar) {
    return ar_to_pacf(ar).array().atanh().matrix();
}

Eigen::VectorXd constrain_ma(const Eigen::Ref<const Eigen::VectorXd>& u) { return -constrain_ar(u); }

Eigen::VectorXd unconstrain_ma(const Eigen::Ref<const Eigen::VectorXd>& ma) {
    return unconstrain_ar(-Eigen::VectorXd(ma));
}

FittedModel make_fitted(const ModelOrder& order, const ArmaParameters& params, const TimeSeries& series) {
    order.validate();
    FittedModel m;
    m.order = order;
    m.params = params;
    m.loglik = log_likelihood(params, order, series).loglik;
    m.n_used = series.size() - order.d;
    m.converged = true;
    finish_criteria(m);
    return m;
}

ArmaParameters fit_css(const Eigen::Ref<const Eigen::VectorXd>& differenced, const ModelOrder& order,
                       const NelderMeadOptions& simplex) {
    const Eigen::VectorXd w = differenced;
    const double sd = std::sqrt((w.array() - w.mean()).square().mean());
    if (!(sd > 0.0)) throw DegenerateInputError("series has zero variance after differencing");
    const Layout layout{order.p, order.q, order.include_constant, sd};

    Eigen::VectorXd u0 = Eigen::VectorXd::Zero(layout.size());
    if (order.include_constant) u0(order.p + order.q) = w.mean() / sd;
    const auto objective = [&](const Eigen::VectorXd& u) {
        if (!layout.in_bounds(u)) return kInf;
        return css_objective(layout.unpack(u), w);
    };
    const NelderMeadResult r = nelder_mead(objective, u0, simplex);
    ArmaParameters params = layout.unpack(r.x);
    const auto dof = static_cast<double>(std::max<Eigen::Index>(1, w.size() - order.p));
    params.sigma2 = std::max(r.value / dof, std::numeric_limits<double>::min());
    return params;
}

FittedModel fit(const TimeSeries& series, const ModelOrder& order, const FitOptions& options) {
    order.validate();
    if (series.size() - order.d <= order.p + order.q + 5)
        throw InsufficientDataError("fit: need n - d > p + q + 5 observations for " + order.label());
    const Eigen::VectorXd w = difference(series.values(), order.d);
    const double sd = std::sqrt((w.array() - w.mean()).square().mean());
    if (!(sd > 0.0)) throw DegenerateInputError("fit: series has zero variance after differencing");

    const Layout layout{order.p, order.q, order.include_constant, sd};
    const auto objective = [&](const Eigen::VectorXd& u) {
        if (!layout.in_bounds(u)) return kInf;
        return profile_negloglik(layout.unpack(u), w);
    };

    const ArmaParameters css = fit_css(w, order, options.simplex);
    const Eigen::VectorXd u_css = layout.pack(css);

    std::vector<Eigen::VectorXd> starts{u_css};
    if (order.p + order.q > 0) {
        Eigen::VectorXd shift = Eigen::VectorXd::Zero(layout.size());
        shift.head(order.p + order.q).setConstant(options.perturbation);
        starts.emplace_back(u_css + shift);
        starts.emplace_back(u_css - shift);
        Eigen::VectorXd origin = u_css;
        origin.head(order.p + order.q).setZero();
        starts.push_back(origin);
    }
    for (auto& s : starts)
        for (Eigen::Index i = 0; i < order.p + order.q; ++i)
            s(i) = std::clamp(s(i), -kTransformBound + 1e-3, kTransformBound - 1e-3);

    FitReport report;
    report.css_loglik = -objective(u_css);
    report.starts = static_cast<int>(starts.size());

    NelderMeadResult best;
    best.value = kInf;
    bool any_converged = false;
    for (std::size_t i = 0; i < starts.size(); ++i) {
        NelderMeadResult r = nelder_mead(objective, starts[i], options.simplex);
        report.evaluations += r.evaluations;
        any_converged = any_converged || r.converged;
        if (r.value < best.value || best.x.size() == 0) {
            best = std::move(r);
            report.best_start = static_cast<int>(i);
        }
    }
    // Restart from the incumbent until the simplex stops finding improvements.
    for (int k = 0; k < options.max_restarts; ++k) {
        NelderMeadResult r = nelder_mead(objective, best.x, options.simplex);
        report.evaluations += r.evaluations;
        ++report.restarts;
        const bool improved = r.value < best.value - 1e-10 * (1.0 + std::abs(best.value));
        if (r.value <= best.value) {
            const bool conv = r.converged;
            best = std::move(r);
            best.converged = conv;
        }
        any_converged = any_converged || best.converged;
        if (!improved && best.converged) break;
    }
    report.final_diameter = best.diameter;

    FittedModel model;
    model.order = order;
    model.params = layout.unpack(best.x);
    model.n_used = w.size();
    model.fit_report = report;
    if (std::isfinite(best.value)) {
        const LikelihoodResult lr = filter_arma(model.params, w);
        model.params.sigma2 = lr.scaled_ssr / static_cast<double>(w.size());
        model.loglik = filter_arma(model.params, w).loglik;
    } else {
        model.loglik = -kInf;
    }
    finish_criteria(model);
    model.converged = best.converged && std::isfinite(best.value);

    if (!any_converged || !std::isfinite(best.value))
        throw NonConvergenceError("fit: no Nelder-Mead run converged for " + order.label(), model);
    if (!model.converged) model.converged = any_converged;

    if (options.compute_standard_errors) model.standard_errors = profile_standard_errors(model.params, order, w);
    return model;
}

AutoSelectResult auto_select(const TimeSeries& series, const AutoSelectOptions& options) {
    if (options.max_p < 0 || options.max_q < 0 || options.max_d < 0)
        throw ConfigError("auto_select: grid bounds must be non-negative");
    std::vector<int> ds;
    if (options.fixed_d) {
        if (*options.fixed_d < 0 || *options.fixed_d > 2) throw ConfigError("auto_select: fixed d must be 0, 1 or 2");
        ds.push_back(*options.fixed_d);
    } else {
        if (options.max_d > 2) throw ConfigError("auto_select: max_d must be <= 2");
        for (int d = 0; d <= options.max_d; ++d) ds.push_back(d);
    }

    std::vector<ModelOrder> grid;
    for (int d : ds)
        for (int p = 0; p <= options.max_p; ++p)
            for (int q = 0; q <= options.max_q; ++q)
                grid.push_back({p, d, q, options.include_constant.value_or(d == 0)});
    if (grid.empty()) throw ConfigError("auto_select: empty grid");
    const bool any_valid = std::any_of(grid.begin(), grid.end(), [](const ModelOrder& o) {
        try {
            o.validate();
            return true;
        } catch (const ConfigError&) {
            return false;
        }
    });
    if (!any_valid) throw ConfigError("auto_select: grid contains no model with free parameters");

    auto run = [&](const ModelOrder& order) {
        CandidateResult c;
        c.order = order;
        try {
            order.validate();
        } catch (const ConfigError& e) {
            c.status = std::string("invalid: ") + e.what();
            return c;
        }
        try {
            FittedModel m = fit(series, order, options.fit);
            const auto rep = check_admissible(m.params);
            double min_mod = kInf;
            if (rep.ar_root_moduli.size() > 0) min_mod = std::min(min_mod, rep.ar_root_moduli.minCoeff());
            if (rep.ma_root_moduli.size() > 0) min_mod = std::min(min_mod, rep.ma_root_moduli.minCoeff());
            c.criterion_value = options.criterion == Criterion::aic ? m.aic : m.bic;
            if (min_mod < options.root_guard) {
                std::ostringstream os;
                os << "boundary: root modulus " << min_mod << " below " << options.root_guard;
                c.status = os.str();
            } else {
                c.status = "ok";
            }
            c.model = std::move(m);
        } catch (const NonConvergenceError& e) {
            c.status = std::string("not converged: ") + e.what();
        } catch (const Error& e) {
            c.status = std::string("failed: ") + e.what();
        }
        return c;
    };

    std::vector<CandidateResult> results;
    results.reserve(grid.size());
    if (options.parallel) {
        std::vector<std::future<CandidateResult>> futures;
        futures.reserve(grid.size());
        for (const auto& o : grid) futures.push_back(std::async(std::launch::async, run, o));
        for (auto& f : futures) results.push_back(f.get());
    } else {
        for (const auto& o : grid) results.push_back(run(o));
    }

    auto better = [](const CandidateResult& a, const CandidateResult& b) {
        if (a.criterion_value != b.criterion_value) return a.criterion_value < b.criterion_value;
        if (a.order.p + a.order.q != b.order.p + b.order.q) return a.order.p + a.order.q < b.order.p + b.order.q;
        return a.order.q < b.order.q;
    };

    std::vector<CandidateResult> accepted;
    std::vector<CandidateResult> excluded;
    for (auto& c : results) (c.status == "ok" ? accepted : excluded).push_back(std::move(c));
    if (accepted.empty()) throw NonConvergenceError("auto_select: every candidate failed", std::nullopt);

    std::stable_sort(accepted.begin(), accepted.end(), [&](const CandidateResult& a, const CandidateResult& b) {
        if (a.order.d != b.order.d) return a.order.d < b.order.d;
        return better(a, b);
    });
    for (std::size_t i = 0; i < accepted.size(); ++i) {
        const bool first_of_d = i == 0 || accepted[i - 1].order.d != accepted[i].order.d;
        accepted[i].rank_within_d = first_of_d ? 1 : accepted[i - 1].rank_within_d + 1;
    }

    AutoSelectResult out;
    if (options.fixed_d) {
        out.selected_d = *options.fixed_d;
    } else {
        out.selected_d = options.max_d;
        for (int d : ds) {
            bool stationary = false;
            try {
                stationary = adf_test(difference(series.values(), d)).reject_unit_root;
            } catch (const Error&) {
                stationary = false;
            }
            out.d_stationary.emplace_back(d, stationary);
            if (stationary) {
                out.selected_d = d;
                break;
            }
        }
    }
    auto pick = std::find_if(accepted.begin(), accepted.end(),
                             [&](const CandidateResult& c) { return c.order.d == out.selected_d; });
    if (pick == accepted.end()) {
        pick = accepted.begin();
        out.selected_d = pick->order.d;
    }
    out.best = *pick->model;

    out.candidates = std::move(accepted);
    for (auto& c : excluded) out.candidates.push_back(std::move(c));
    return out;
}

}  // namespace armakit
