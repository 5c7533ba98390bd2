#include "armakit/report.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace armakit {

namespace {

Json vec(const Eigen::Ref<const Eigen::VectorXd>& v) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

Json opt(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

const char* regression_name(AdfRegression r) {
    switch (r) {
        case AdfRegression::none: return "n";
        case AdfRegression::constant: return "c";
        case AdfRegression::constant_trend: return "ct";
    }
    return "?";
}

const char* compare_key_name(CompareKey k) {
    switch (k) {
        case CompareKey::aic: return "aic";
        case CompareKey::bic: return "bic";
        case CompareKey::max_abs_residual: return "max_abs_residual";
    }
    return "?";
}

std::string slug(const std::string& label) {
    std::string s;
    for (char c : label) {
        if (std::isalnum(static_cast<unsigned char>(c)))
            s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        else if (c == ',' || c == '+')
            s += '_';
    }
    return s;
}

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s + " " : s + std::string(w - s.size(), ' '); }

}  // namespace

// ------------------------------------------------------------ serialisers

Json to_json(const TimeSeries& s) {
    Json j;
    j["start"] = s.start();
    j["end"] = s.empty() ? s.start() - 1 : s.time(s.size() - 1);
    j["n"] = s.size();
    j["units"] = s.units();
    j["values"] = vec(s.values());
    return j;
}

Json to_json(const MomentSummary& m) {
    Json j;
    j["n"] = m.n;
    j["mean"] = m.mean;
    j["variance"] = m.variance;
    j["skewness"] = opt(m.skewness);
    j["kurtosis"] = opt(m.kurtosis);
    return j;
}

Json to_json(const CorrelationSequence& c) {
    Json j;
    j["kind"] = c.kind == CorrelationKind::acf ? "acf" : "pacf";
    j["first_lag"] = c.first_lag();
    j["n_obs"] = c.n_obs;
    j["threshold"] = c.threshold;
    j["values"] = vec(c.values);
    return j;
}

Json to_json(const AdfResult& r) {
    Json j;
    j["regression"] = regression_name(r.regression);
    j["statistic"] = r.statistic;
    j["p_value"] = r.p_value;
    j["used_lag"] = r.used_lag;
    j["n_obs"] = r.n_obs;
    j["critical_values"] = {{"1%", r.critical_values[0]}, {"5%", r.critical_values[1]}, {"10%", r.critical_values[2]}};
    j["reject_unit_root"] = r.reject_unit_root;
    return j;
}

Json to_json(const ModelOrder& o) {
    return {{"p", o.p}, {"d", o.d}, {"q", o.q}, {"include_constant", o.include_constant}, {"label", o.label()}};
}

Json to_json(const ArmaParameters& p) {
    Json j;
    j["ar"] = vec(p.ar);
    j["ma"] = vec(p.ma);
    j["mean"] = p.mean;
    j["intercept"] = p.intercept();
    j["sigma2"] = p.sigma2;
    return j;
}

Json to_json(const FittedModel& m) {
    Json j;
    j["order"] = to_json(m.order);
    j["params"] = to_json(m.params);
    j["loglik"] = m.loglik;
    j["aic"] = m.aic;
    j["bic"] = m.bic;
    j["n_used"] = m.n_used;
    j["converged"] = m.converged;
    j["fit_report"] = {{"starts", m.fit_report.starts},
                       {"restarts", m.fit_report.restarts},
                       {"evaluations", m.fit_report.evaluations},
                       {"best_start", m.fit_report.best_start},
                       {"css_loglik", m.fit_report.css_loglik},
                       {"final_diameter", m.fit_report.final_diameter}};
    j["standard_errors"] = m.standard_errors ? vec(*m.standard_errors) : Json(nullptr);
    return j;
}

Json to_json(const DiagnosticsReport& d) {
    Json j;
    j["label"] = d.label;
    j["moments"] = to_json(d.moments);
    j["max_abs_residual"] = d.max_abs_residual;
    j["ljung_box"] = {{"statistic", d.ljung_box.statistic},
                      {"p_value", d.ljung_box.p_value},
                      {"lags", d.ljung_box.lags},
                      {"dof", d.ljung_box.dof}};
    j["jarque_bera"] = {{"statistic", d.jarque_bera.statistic}, {"p_value", d.jarque_bera.p_value}};
    j["residual_acf"] = to_json(d.residual_acf);
    j["residuals"] = vec(d.residuals);
    j["standardized_residuals"] = vec(d.standardized_residuals);
    j["qq"] = {{"theoretical", vec(d.qq_points.col(0))}, {"sample", vec(d.qq_points.col(1))}};
    j["kde"] = {{"bandwidth", d.kde_bandwidth}, {"x", vec(d.kde_curve.col(0))}, {"density", vec(d.kde_curve.col(1))}};
    return j;
}

Json to_json(const ForecastResult& f) {
    Json j;
    j["horizon"] = f.horizon;
    j["start"] = f.start;
    j["alpha"] = f.alpha;
    j["point"] = vec(f.point);
    j["variance"] = vec(f.variance);
    j["lower"] = vec(f.lower);
    j["upper"] = vec(f.upper);
    return j;
}

Json to_json(const AutoSelectResult& a) {
    Json j;
    j["selected_d"] = a.selected_d;
    j["best"] = to_json(a.best.order);
    Json ds = Json::array();
    for (const auto& [d, ok] : a.d_stationary) ds.push_back({{"d", d}, {"reject_unit_root", ok}});
    j["d_stationarity"] = ds;
    Json cs = Json::array();
    for (const auto& c : a.candidates) {
        Json cj;
        cj["order"] = to_json(c.order);
        cj["status"] = c.status;
        cj["criterion"] = c.model ? Json(c.criterion_value) : Json(nullptr);
        cj["rank_within_d"] = c.rank_within_d;
        cj["loglik"] = c.model ? Json(c.model->loglik) : Json(nullptr);
        cs.push_back(cj);
    }
    j["candidates"] = cs;
    return j;
}

Json to_json(const ComparisonTable& t) {
    Json j;
    j["primary"] = compare_key_name(t.primary);
    Json rows = Json::array();
    for (const auto& r : t.rows)
        rows.push_back({{"label", r.label},
                        {"aic", r.aic},
                        {"bic", r.bic},
                        {"max_abs_residual", r.max_abs_residual},
                        {"skewness", r.skewness},
                        {"kurtosis_distance", r.kurtosis_distance},
                        {"ljung_box_p", r.ljung_box_p},
                        {"rank_by_criterion", r.rank_by_criterion},
                        {"rank_by_max_residual", r.rank_by_max_residual}});
    j["rows"] = rows;
    Json ranking = Json::array();
    for (auto i : t.ranking) ranking.push_back(t.rows[i].label);
    j["ranking"] = ranking;
    return j;
}

// ------------------------------------------------------------- text views

std::string format_number(double v) {
    if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string render_correlation_text(const CorrelationSequence& c) {
    std::ostringstream os;
    os << (c.kind == CorrelationKind::acf ? "ACF" : "PACF") << "  (n = " << c.n_obs
       << ", band +/-" << format_number(c.threshold) << ")\n";
    os << pad("lag", 6) << pad("value", 14) << "\n";
    for (Eigen::Index i = 0; i < c.values.size(); ++i) {
        const bool lag0 = c.lag(i) == 0;
        os << pad(std::to_string(c.lag(i)), 6) << pad(format_number(c.values(i)), 14)
           << (!lag0 && std::abs(c.values(i)) > c.threshold ? "*" : "") << "\n";
    }
    return os.str();
}

std::string render_adf_text(const AdfResult& r) {
    std::ostringstream os;
    os << "ADF (regression " << regression_name(r.regression) << ")\n"
       << "  statistic  " << format_number(r.statistic) << "\n"
       << "  p-value    " << format_number(r.p_value) << "\n"
       << "  lags used  " << r.used_lag << "\n"
       << "  n obs      " << r.n_obs << "\n"
       << "  critical   1%: " << format_number(r.critical_values[0]) << "  5%: " << format_number(r.critical_values[1])
       << "  10%: " << format_number(r.critical_values[2]) << "\n"
       << "  unit root  " << (r.reject_unit_root ? "rejected" : "not rejected") << "\n";
    return os.str();
}

std::string render_fit_text(const FittedModel& m) {
    std::ostringstream os;
    os << m.order.label() << (m.converged ? "" : "  [not converged]") << "\n";
    for (Eigen::Index i = 0; i < m.params.ar.size(); ++i)
        os << "  ar" << (i + 1) << pad("", 8 - std::to_string(i + 1).size()) << format_number(m.params.ar(i)) << "\n";
    for (Eigen::Index i = 0; i < m.params.ma.size(); ++i)
        os << "  ma" << (i + 1) << pad("", 8 - std::to_string(i + 1).size()) << format_number(m.params.ma(i)) << "\n";
    if (m.order.include_constant) os << "  mean      " << format_number(m.params.mean) << "\n";
    os << "  sigma2    " << format_number(m.params.sigma2) << "\n"
       << "  loglik    " << format_number(m.loglik) << "\n"
       << "  aic       " << format_number(m.aic) << "\n"
       << "  bic       " << format_number(m.bic) << "\n"
       << "  n used    " << m.n_used << "\n";
    return os.str();
}

std::string render_diagnostics_text(const DiagnosticsReport& d) {
    std::ostringstream os;
    os << "Residual diagnostics: " << d.label << "\n"
       << "  max |residual|   " << format_number(d.max_abs_residual) << "\n"
       << "  skewness         " << (d.moments.skewness ? format_number(*d.moments.skewness) : "n/a") << "\n"
       << "  kurtosis         " << (d.moments.kurtosis ? format_number(*d.moments.kurtosis) : "n/a") << "\n"
       << "  Ljung-Box Q(" << d.ljung_box.lags << ")  " << format_number(d.ljung_box.statistic)
       << "  p " << format_number(d.ljung_box.p_value) << "  dof " << d.ljung_box.dof << "\n"
       << "  Jarque-Bera      " << format_number(d.jarque_bera.statistic) << "  p "
       << format_number(d.jarque_bera.p_value) << "\n"
       << "  KDE bandwidth    " << format_number(d.kde_bandwidth) << "\n";
    return os.str();
}

std::string render_forecast_text(const ForecastResult& f) {
    std::ostringstream os;
    const int level = static_cast<int>(std::lround(100.0 * (1.0 - f.alpha)));
    os << "Forecast (" << level << "% intervals)\n"
       << pad("time", 8) << pad("point", 14) << pad("lower", 14) << pad("upper", 14) << "variance\n";
    for (int h = 0; h < f.horizon; ++h)
        os << pad(std::to_string(f.start + h), 8) << pad(format_number(f.point(h)), 14)
           << pad(format_number(f.lower(h)), 14) << pad(format_number(f.upper(h)), 14)
           << format_number(f.variance(h)) << "\n";
    return os.str();
}

std::string render_auto_text(const AutoSelectResult& a) {
    std::ostringstream os;
    os << "Automatic order selection (d = " << a.selected_d << ")\n";
    for (const auto& [d, ok] : a.d_stationary)
        os << "  d = " << d << ": unit root " << (ok ? "rejected" : "not rejected") << "\n";
    os << pad("  model", 26) << pad("criterion", 14) << pad("rank", 6) << "status\n";
    for (const auto& c : a.candidates)
        os << "  " << pad(c.order.label(), 24) << pad(c.model ? format_number(c.criterion_value) : "-", 14)
           << pad(c.rank_within_d ? std::to_string(c.rank_within_d) : "-", 6) << c.status << "\n";
    os << "Selected: " << a.best.order.label() << "\n";
    return os.str();
}

std::string render_comparison_text(const ComparisonTable& t) {
    std::ostringstream os;
    os << "Model comparison (primary key " << compare_key_name(t.primary) << ")\n"
       << pad("model", 24) << pad("aic", 12) << pad("bic", 12) << pad("max|res|", 12) << pad("skew", 12)
       << pad("|kurt-3|", 12) << pad("LB p", 12) << "ranks (crit, res)\n";
    for (auto i : t.ranking) {
        const auto& r = t.rows[i];
        os << pad(r.label, 24) << pad(format_number(r.aic), 12) << pad(format_number(r.bic), 12)
           << pad(format_number(r.max_abs_residual), 12) << pad(format_number(r.skewness), 12)
           << pad(format_number(r.kurtosis_distance), 12) << pad(format_number(r.ljung_box_p), 12)
           << r.rank_by_criterion << ", " << r.rank_by_max_residual << "\n";
    }
    return os.str();
}

std::string render_text(const AnalysisResult& r) {
    std::ostringstream os;
    const auto& s = r.series;
    os << "Series: " << s.size() << " observations, " << s.start() << "-" << s.time(s.size() - 1) << "\n\n";
    for (const auto& t : r.transforms) {
        os << "== " << (t.d == 0 ? std::string("levels") : "difference order " + std::to_string(t.d)) << " ==\n"
           << render_correlation_text(t.acf) << "\n"
           << render_correlation_text(t.pacf) << "\n"
           << render_adf_text(t.adf) << "\n";
    }
    if (r.auto_selection) os << render_auto_text(*r.auto_selection) << "\n";
    for (const auto& m : r.models)
        os << render_fit_text(m.model) << "\n" << render_diagnostics_text(m.diagnostics) << "\n"
           << render_forecast_text(m.forecast) << "\n";
    os << render_comparison_text(r.comparison);
    return os.str();
}

// ------------------------------------------------------------- pipeline

OutputFormat parse_output_format(const std::string& s) {
    if (s == "text") return OutputFormat::text;
    if (s == "json") return OutputFormat::json;
    if (s == "svg") return OutputFormat::svg;
    throw ConfigError("unknown output format '" + s + "' (expected text, json or svg)");
}

std::string to_string(OutputFormat f) {
    switch (f) {
        case OutputFormat::text: return "text";
        case OutputFormat::json: return "json";
        case OutputFormat::svg: return "svg";
    }
    return "?";
}

void AnalysisConfig::validate() const {
    if (orders.empty() == !auto_grid.has_value())
        throw ConfigError("give either explicit orders or an automatic-selection grid, not both or neither");
    for (const auto& o : orders) o.validate();
    if (auto_grid) {
        const auto& g = *auto_grid;
        if (g.max_p < 0 || g.max_d < 0 || g.max_q < 0 || g.max_d > 2)
            throw ConfigError("grid bounds must satisfy max_p, max_q >= 0 and 0 <= max_d <= 2");
        if (g.fixed_d && (*g.fixed_d < 0 || *g.fixed_d > g.max_d))
            throw ConfigError("fixed d lies outside the grid");
        const bool constant = g.include_constant.value_or(false);
        if (g.max_p + g.max_q == 0 && !constant) throw ConfigError("empty candidate grid");
    }
    if (correlation_lags < 1) throw ConfigError("lags must be >= 1");
    if (horizon < 1 || horizon > kMaxForecastHorizon)
        throw ConfigError("horizon must lie in [1, " + std::to_string(kMaxForecastHorizon) + "]");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
    if (formats.empty()) throw ConfigError("no output format requested");
}

namespace {

Json config_json(const AnalysisConfig& c) {
    Json j;
    j["input"] = c.input.filename().string();
    j["year_column"] = c.columns.year_column;
    j["value_column"] = c.columns.value_column;
    if (c.auto_grid) {
        const auto& g = *c.auto_grid;
        j["mode"] = "auto";
        j["grid"] = {{"max_p", g.max_p},
                     {"max_d", g.max_d},
                     {"max_q", g.max_q},
                     {"fixed_d", g.fixed_d ? Json(*g.fixed_d) : Json(nullptr)},
                     {"criterion", g.criterion == Criterion::aic ? "aic" : "bic"},
                     {"include_constant", g.include_constant ? Json(*g.include_constant) : Json(nullptr)},
                     {"root_guard", g.root_guard}};
    } else {
        j["mode"] = "explicit";
        Json os = Json::array();
        for (const auto& o : c.orders) os.push_back(to_json(o));
        j["orders"] = os;
    }
    j["lags"] = c.correlation_lags;
    j["adf"] = {{"regression", regression_name(c.adf.regression)},
                {"max_lag", c.adf.max_lag ? Json(*c.adf.max_lag) : Json(nullptr)},
                {"autolag", c.adf.autolag}};
    j["horizon"] = c.horizon;
    j["alpha"] = c.alpha;
    j["seed"] = c.seed;
    j["compare_key"] = compare_key_name(c.compare_key);
    return j;
}

void write_file(const std::filesystem::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error("cannot write '" + p.string() + "'");
    out << content;
}

class StageRunner {
public:
    explicit StageRunner(const AnalysisConfig& c) : config_(c) {}

    template <typename F>
    auto run(const std::string& stage, F&& f) -> decltype(f()) {
        try {
            if constexpr (std::is_void_v<decltype(f())>) {
                f();
                completed_.push_back(stage);
            } else {
                auto r = f();
                completed_.push_back(stage);
                return r;
            }
        } catch (const StageError&) {
            throw;
        } catch (const std::exception& e) {
            write_manifest(stage, e.what());
            throw StageError(stage, e.what());
        }
    }

private:
    void write_manifest(const std::string& stage, const std::string& what) const {
        if (config_.out_dir.empty()) return;
        Json j;
        j["schema_version"] = kReportSchemaVersion;
        j["status"] = "failed";
        j["failed_stage"] = stage;
        j["error"] = what;
        j["completed_stages"] = completed_;
        try {
            std::filesystem::create_directories(config_.out_dir);
            write_file(config_.out_dir / "failure.json", j.dump(2) + "\n");
        } catch (...) {
            // the original failure is the one worth reporting
        }
    }

    const AnalysisConfig& config_;
    std::vector<std::string> completed_;
};

FittedModel fit_or_best(const TimeSeries& s, const ModelOrder& o) {
    try {
        return fit(s, o);
    } catch (const NonConvergenceError& e) {
        if (e.best_so_far()) return *e.best_so_far();
        throw;
    }
}

}  // namespace

ReportBundle run_analysis(const AnalysisConfig& config) {
    config.validate();
    StageRunner stages(config);

    ReportBundle bundle;
    AnalysisResult& res = bundle.result;
    res.series = stages.run("ingest", [&] { return ingest(config.input, config.columns); });
    const TimeSeries& s = res.series;

    stages.run("correlation", [&] {
        for (int d = 0; d <= 2; ++d) {
            const TimeSeries x = difference(s, d);
            const auto n = static_cast<int>(x.size());
            TransformCorrelation t;
            t.d = d;
            t.acf = sample_acf(x, std::min(config.correlation_lags, n - 1));
            t.pacf = sample_pacf(x, std::min(config.correlation_lags, (n - 1) / 2));
            res.transforms.push_back(std::move(t));
        }
    });
    stages.run("stationarity", [&] {
        for (auto& t : res.transforms) t.adf = adf_test(difference(s, t.d), config.adf);
    });

    std::vector<FittedModel> fitted;
    stages.run("fit", [&] {
        if (config.auto_grid) {
            res.auto_selection = auto_select(s, *config.auto_grid);
            fitted.push_back(res.auto_selection->best);
        } else {
            for (const auto& o : config.orders) fitted.push_back(fit_or_best(s, o));
        }
    });

    std::vector<DiagnosticsReport> diags;
    stages.run("diagnostics", [&] {
        for (const auto& m : fitted) diags.push_back(diagnose(m, s));
    });
    res.comparison = stages.run("compare", [&] { return compare(diags, config.compare_key); });
    stages.run("forecast", [&] {
        for (std::size_t i = 0; i < fitted.size(); ++i)
            res.models.push_back({diags[i].label, fitted[i], diags[i], forecast(fitted[i], s, config.horizon, config.alpha)});
    });

    stages.run("emit", [&] {
        Json& j = bundle.json;
        j["schema_version"] = kReportSchemaVersion;
        j["tool"] = "armakit";
        j["config"] = config_json(config);
        j["series"] = to_json(s);
        j["series"]["moments"] = to_json(moments(s));
        Json tr = Json::array();
        for (const auto& t : res.transforms)
            tr.push_back({{"d", t.d}, {"acf", to_json(t.acf)}, {"pacf", to_json(t.pacf)}, {"adf", to_json(t.adf)}});
        j["transforms"] = tr;
        j["auto_select"] = res.auto_selection ? to_json(*res.auto_selection) : Json(nullptr);
        Json ms = Json::array();
        for (const auto& m : res.models)
            ms.push_back({{"label", m.label},
                          {"fit", to_json(m.model)},
                          {"diagnostics", to_json(m.diagnostics)},
                          {"forecast", to_json(m.forecast)}});
        j["models"] = ms;
        j["comparison"] = to_json(res.comparison);

        if (config.formats.count(OutputFormat::text)) bundle.text = render_text(res);
        if (config.formats.count(OutputFormat::svg)) {
            bundle.figures["series.svg"] = svg_time_series(s, "Series");
            for (const auto& t : res.transforms) {
                const std::string tag = t.d == 0 ? "levels" : "diff" + std::to_string(t.d);
                bundle.figures["acf_" + tag + ".svg"] = svg_correlation(t.acf, "ACF, " + tag);
                bundle.figures["pacf_" + tag + ".svg"] = svg_correlation(t.pacf, "PACF, " + tag);
            }
            for (const auto& m : res.models) {
                const std::string tag = slug(m.label);
                bundle.figures["density_" + tag + ".svg"] = svg_density(m.diagnostics, "Residual density, " + m.label);
                bundle.figures["qq_" + tag + ".svg"] = svg_qq(m.diagnostics, "Normal Q-Q, " + m.label);
                bundle.figures["forecast_" + tag + ".svg"] = svg_forecast(s, m.forecast, "Forecast, " + m.label);
            }
        }
        if (!config.out_dir.empty()) write_outputs(bundle, config);
    });
    return bundle;
}

void write_outputs(const ReportBundle& bundle, const AnalysisConfig& config) {
    std::filesystem::create_directories(config.out_dir);
    if (config.formats.count(OutputFormat::json)) write_file(config.out_dir / "report.json", bundle.json.dump(2) + "\n");
    if (config.formats.count(OutputFormat::text)) write_file(config.out_dir / "report.txt", bundle.text);
    if (config.formats.count(OutputFormat::svg))
        for (const auto& [name, doc] : bundle.figures) write_file(config.out_dir / name, doc);
}

}  // namespace armakit
