// Command-line front end: one subcommand per analysis step plus `report`,
// which runs the whole pipeline.

#include <CLI11.hpp>

#include <cctype>
#include <functional>
#include <fstream>
#include <iostream>
#include <sstream>

#include "armakit/report.hpp"

namespace ak = armakit;

namespace {

struct Common {
    std::string input;
    std::string year_col = "Year";
    std::string value_col;
    std::vector<std::string> formats;
    std::string out;
    std::uint64_t seed = 0;
};

struct ModelFlags {
    std::vector<std::string> orders;
    std::string constant = "auto";
    int max_p = -1;
    int max_d = -1;
    int max_q = -1;
    int fixed_d = -1;
    std::string criterion = "aic";
};

void add_common(CLI::App* cmd, Common& c, bool multi_format) {
    cmd->add_option("input", c.input, "CSV file with a year column and an anomaly column")->required();
    cmd->add_option("--year-col", c.year_col, "Name of the year column (case-insensitive)");
    cmd->add_option("--value-col", c.value_col, "Name of the value column (default: first non-year column)");
    auto* fmt = cmd->add_option("--format", c.formats, "Output format: text, json or svg")
                    ->check(CLI::IsMember({"text", "json", "svg"}));
    fmt->expected(1)->allow_extra_args(false);
    if (multi_format) fmt->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    cmd->add_option("--out", c.out, "Write outputs into this directory instead of stdout");
    cmd->add_option("--seed", c.seed, "Random seed (recorded in reports)");
}

void add_orders(CLI::App* cmd, ModelFlags& m, bool required) {
    auto* o = cmd->add_option("--order", m.orders, "Model order p,d,q (repeatable)")
                     ->expected(1)
                     ->allow_extra_args(false)
                     ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    if (required) o->required();
    cmd->add_option("--constant", m.constant, "Constant term: auto (only when d = 0), yes or no")
        ->check(CLI::IsMember({"auto", "yes", "no"}));
}

void add_grid(CLI::App* cmd, ModelFlags& m) {
    cmd->add_option("--max-p", m.max_p, "Largest AR order in the grid")->check(CLI::NonNegativeNumber);
    cmd->add_option("--max-d", m.max_d, "Largest differencing order in the grid (<= 2)")->check(CLI::Range(0, 2));
    cmd->add_option("--max-q", m.max_q, "Largest MA order in the grid")->check(CLI::NonNegativeNumber);
    cmd->add_option("--d", m.fixed_d, "Compare only candidates with this d")->check(CLI::Range(0, 2));
    cmd->add_option("--criterion", m.criterion, "Selection criterion")->check(CLI::IsMember({"aic", "bic"}));
    cmd->add_option("--constant", m.constant, "Constant term: auto (only when d = 0), yes or no")
        ->check(CLI::IsMember({"auto", "yes", "no"}));
}

std::optional<bool> constant_policy(const std::string& s) {
    if (s == "yes") return true;
    if (s == "no") return false;
    return std::nullopt;
}

ak::ModelOrder parse_order(const std::string& text, const std::string& constant) {
    std::array<int, 3> v{};
    std::istringstream ss(text);
    std::string part;
    int k = 0;
    while (std::getline(ss, part, ',')) {
        if (k == 3) throw ak::ConfigError("order '" + text + "' must be p,d,q");
        std::size_t used = 0;
        try {
            v[static_cast<std::size_t>(k)] = std::stoi(part, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != part.size()) throw ak::ConfigError("order '" + text + "' must be p,d,q");
        ++k;
    }
    if (k != 3) throw ak::ConfigError("order '" + text + "' must be p,d,q");
    ak::ModelOrder o = ak::make_order(v[0], v[1], v[2]);
    if (auto c = constant_policy(constant)) o.include_constant = *c;
    o.validate();
    return o;
}

std::vector<ak::ModelOrder> parse_orders(const ModelFlags& m) {
    std::vector<ak::ModelOrder> out;
    for (const auto& s : m.orders) out.push_back(parse_order(s, m.constant));
    return out;
}

ak::AutoSelectOptions grid_options(const ModelFlags& m) {
    ak::AutoSelectOptions g;
    g.max_p = m.max_p < 0 ? 2 : m.max_p;
    g.max_d = m.max_d < 0 ? 2 : m.max_d;
    g.max_q = m.max_q < 0 ? 2 : m.max_q;
    if (m.fixed_d >= 0) g.fixed_d = m.fixed_d;
    g.criterion = m.criterion == "bic" ? ak::Criterion::bic : ak::Criterion::aic;
    g.include_constant = constant_policy(m.constant);
    return g;
}

ak::TimeSeries load(const Common& c) {
    return ak::ingest(c.input, ak::ColumnMapping{c.year_col, c.value_col});
}

std::string single_format(const Common& c) { return c.formats.empty() ? "text" : c.formats.front(); }

// Sends one document to stdout or to `<out>/<stem>.<ext>`.
void emit(const Common& c, const std::string& stem, const std::string& ext, const std::string& doc) {
    if (c.out.empty()) {
        std::cout << doc;
        return;
    }
    std::filesystem::create_directories(c.out);
    const auto path = std::filesystem::path(c.out) / (stem + "." + ext);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ak::Error("cannot write '" + path.string() + "'");
    f << doc;
    std::cerr << "wrote " << path.string() << "\n";
}

void emit_view(const Common& c, const std::string& stem, const std::function<std::string()>& text,
               const std::function<ak::Json()>& json, const std::function<std::string()>& svg = {}) {
    const std::string f = single_format(c);
    if (f == "text") emit(c, stem, "txt", text());
    else if (f == "json") emit(c, stem, "json", json().dump(2) + "\n");
    else if (svg) emit(c, stem, "svg", svg());
    else throw ak::ConfigError("svg output is not available for this subcommand");
}

ak::Json envelope(const std::string& command, const Common& c) {
    ak::Json j;
    j["schema_version"] = ak::kReportSchemaVersion;
    j["command"] = command;
    j["input"] = std::filesystem::path(c.input).filename().string();
    j["seed"] = c.seed;
    return j;
}

ak::FittedModel fit_one(const ak::TimeSeries& s, const ak::ModelOrder& o) {
    try {
        return ak::fit(s, o);
    } catch (const ak::NonConvergenceError& e) {
        if (!e.best_so_far()) throw;
        std::cerr << "warning: " << o.label() << " did not converge; reporting the best point found\n";
        return *e.best_so_far();
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ARIMA analysis of annual anomaly series"};
    app.require_subcommand(1);

    Common common;
    ModelFlags model;
    int lags = 20;
    int diff = 0;
    int horizon = 10;
    double alpha = 0.05;
    std::string regression = "c";
    bool no_autolag = false;
    std::string compare_key = "aic";

    auto* ingest_cmd = app.add_subcommand("ingest-check", "Validate a CSV and summarise the series");
    add_common(ingest_cmd, common, false);

    auto* acf_cmd = app.add_subcommand("acf", "Sample autocorrelation function");
    auto* pacf_cmd = app.add_subcommand("pacf", "Sample partial autocorrelation function");
    for (auto* cmd : {acf_cmd, pacf_cmd}) {
        add_common(cmd, common, false);
        cmd->add_option("--lags", lags, "Largest lag")->check(CLI::PositiveNumber);
        cmd->add_option("--diff", diff, "Difference the series this many times first")->check(CLI::Range(0, 2));
    }

    auto* adf_cmd = app.add_subcommand("adf", "Augmented Dickey-Fuller unit-root test");
    add_common(adf_cmd, common, false);
    adf_cmd->add_option("--lags", lags, "Largest augmentation lag (default: Schwert rule)")
        ->check(CLI::NonNegativeNumber);
    adf_cmd->add_option("--regression", regression, "Deterministic terms: n, c or ct")
        ->check(CLI::IsMember({"n", "c", "ct"}));
    adf_cmd->add_flag("--no-autolag", no_autolag, "Use the largest lag instead of choosing by AIC");
    adf_cmd->add_option("--diff", diff, "Difference the series this many times first")->check(CLI::Range(0, 2));

    auto* fit_cmd = app.add_subcommand("fit", "Exact maximum-likelihood ARIMA fits");
    add_common(fit_cmd, common, false);
    add_orders(fit_cmd, model, true);

    auto* auto_cmd = app.add_subcommand("auto", "Grid search over (p, d, q)");
    add_common(auto_cmd, common, false);
    add_grid(auto_cmd, model);

    auto* diag_cmd = app.add_subcommand("diagnose", "Residual diagnostics and model comparison");
    add_common(diag_cmd, common, false);
    add_orders(diag_cmd, model, true);
    diag_cmd->add_option("--compare", compare_key, "Ranking key")->check(CLI::IsMember({"aic", "bic", "maxres"}));

    auto* fc_cmd = app.add_subcommand("forecast", "Point forecasts with prediction intervals");
    add_common(fc_cmd, common, false);
    add_orders(fc_cmd, model, true);
    fc_cmd->add_option("--horizon", horizon, "Number of periods ahead")->check(CLI::Range(1, ak::kMaxForecastHorizon));
    fc_cmd->add_option("--alpha", alpha, "Interval miscoverage (0.05 gives 95% intervals)");

    auto* report_cmd = app.add_subcommand("report", "Full pipeline with JSON, text and SVG outputs");
    add_common(report_cmd, common, true);
    report_cmd->add_option("--order", model.orders, "Model order p,d,q (repeatable)")
                     ->expected(1)
                     ->allow_extra_args(false)
                     ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    add_grid(report_cmd, model);
    report_cmd->add_option("--lags", lags, "Largest ACF/PACF lag")->check(CLI::PositiveNumber);
    report_cmd->add_option("--horizon", horizon, "Forecast horizon")->check(CLI::Range(1, ak::kMaxForecastHorizon));
    report_cmd->add_option("--alpha", alpha, "Interval miscoverage");
    report_cmd->add_option("--compare", compare_key, "Ranking key")->check(CLI::IsMember({"aic", "bic", "maxres"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // --help and --version exit 0; usage errors share the configuration exit code
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    const auto key = compare_key == "bic"      ? ak::CompareKey::bic
                     : compare_key == "maxres" ? ak::CompareKey::max_abs_residual
                                               : ak::CompareKey::aic;
    try {
        if (*report_cmd) {
            ak::AnalysisConfig cfg;
            cfg.input = common.input;
            cfg.columns = {common.year_col, common.value_col};
            const bool grid_given = model.max_p >= 0 || model.max_d >= 0 || model.max_q >= 0 || model.fixed_d >= 0;
            if (!model.orders.empty() && grid_given)
                throw ak::ConfigError("give either --order or grid bounds, not both");
            if (model.orders.empty()) cfg.auto_grid = grid_options(model);
            else cfg.orders = parse_orders(model);
            cfg.correlation_lags = lags;
            cfg.horizon = horizon;
            cfg.alpha = alpha;
            cfg.seed = common.seed;
            cfg.compare_key = key;
            cfg.out_dir = common.out;
            cfg.formats.clear();
            for (const auto& f : common.formats) cfg.formats.insert(ak::parse_output_format(f));
            if (cfg.formats.empty()) cfg.formats.insert(ak::OutputFormat::json);
            if (cfg.out_dir.empty() && (cfg.formats.size() > 1 || cfg.formats.count(ak::OutputFormat::svg)))
                throw ak::ConfigError("--out is required for svg or multiple formats");

            const ak::ReportBundle b = ak::run_analysis(cfg);
            if (cfg.out_dir.empty()) {
                if (cfg.formats.count(ak::OutputFormat::json)) std::cout << b.json.dump(2) << "\n";
                else std::cout << b.text;
            } else {
                std::cerr << "wrote report to " << cfg.out_dir.string() << "\n";
            }
            return 0;
        }

        const ak::TimeSeries s = load(common);

        if (*ingest_cmd) {
            const auto m = ak::moments(s);
            emit_view(
                common, "ingest",
                [&] {
                    std::ostringstream os;
                    os << "ok: " << s.size() << " observations, " << s.start() << "-" << s.time(s.size() - 1) << "\n"
                       << "mean " << ak::format_number(m.mean) << ", variance " << ak::format_number(m.variance)
                       << "\n";
                    return os.str();
                },
                [&] {
                    auto j = envelope("ingest-check", common);
                    j["series"] = ak::to_json(s);
                    j["moments"] = ak::to_json(m);
                    return j;
                },
                [&] { return ak::svg_time_series(s, "Series"); });
        } else if (*acf_cmd || *pacf_cmd) {
            const bool is_acf = acf_cmd->parsed();
            const ak::TimeSeries x = ak::difference(s, diff);
            const auto c = is_acf ? ak::sample_acf(x, lags) : ak::sample_pacf(x, lags);
            const std::string name = is_acf ? "acf" : "pacf";
            emit_view(
                common, name, [&] { return ak::render_correlation_text(c); },
                [&] {
                    auto j = envelope(name, common);
                    j["d"] = diff;
                    j["result"] = ak::to_json(c);
                    return j;
                },
                [&] { return ak::svg_correlation(c, (is_acf ? "ACF" : "PACF") + std::string(", d = ") + std::to_string(diff)); });
        } else if (*adf_cmd) {
            ak::AdfOptions opt;
            if (adf_cmd->count("--lags")) opt.max_lag = lags;
            opt.autolag = !no_autolag;
            opt.regression = regression == "n"    ? ak::AdfRegression::none
                             : regression == "ct" ? ak::AdfRegression::constant_trend
                                                  : ak::AdfRegression::constant;
            const auto r = ak::adf_test(ak::difference(s, diff), opt);
            emit_view(
                common, "adf", [&] { return ak::render_adf_text(r); },
                [&] {
                    auto j = envelope("adf", common);
                    j["d"] = diff;
                    j["result"] = ak::to_json(r);
                    return j;
                });
        } else if (*fit_cmd) {
            std::vector<ak::FittedModel> fits;
            for (const auto& o : parse_orders(model)) fits.push_back(fit_one(s, o));
            emit_view(
                common, "fit",
                [&] {
                    std::string t;
                    for (const auto& f : fits) t += ak::render_fit_text(f) + "\n";
                    return t;
                },
                [&] {
                    auto j = envelope("fit", common);
                    j["models"] = ak::Json::array();
                    for (const auto& f : fits) j["models"].push_back(ak::to_json(f));
                    return j;
                });
        } else if (*auto_cmd) {
            const auto r = ak::auto_select(s, grid_options(model));
            emit_view(
                common, "auto", [&] { return ak::render_auto_text(r) + "\n" + ak::render_fit_text(r.best); },
                [&] {
                    auto j = envelope("auto", common);
                    j["result"] = ak::to_json(r);
                    j["best"] = ak::to_json(r.best);
                    return j;
                });
        } else if (*diag_cmd) {
            std::vector<ak::DiagnosticsReport> reps;
            for (const auto& o : parse_orders(model)) reps.push_back(ak::diagnose(fit_one(s, o), s));
            const auto table = ak::compare(reps, key);
            const std::string f = single_format(common);
            if (f == "svg") {
                if (common.out.empty()) throw ak::ConfigError("--out is required for svg diagnostics");
                for (const auto& r : reps) {
                    std::string tag;
                    for (char ch : r.label)
                        if (std::isalnum(static_cast<unsigned char>(ch))) tag += static_cast<char>(std::tolower(ch));
                    emit(common, "density_" + tag, "svg", ak::svg_density(r, "Residual density, " + r.label));
                    emit(common, "qq_" + tag, "svg", ak::svg_qq(r, "Normal Q-Q, " + r.label));
                }
            } else {
                emit_view(
                    common, "diagnose",
                    [&] {
                        std::string t;
                        for (const auto& r : reps) t += ak::render_diagnostics_text(r) + "\n";
                        return t + ak::render_comparison_text(table);
                    },
                    [&] {
                        auto j = envelope("diagnose", common);
                        j["diagnostics"] = ak::Json::array();
                        for (const auto& r : reps) j["diagnostics"].push_back(ak::to_json(r));
                        j["comparison"] = ak::to_json(table);
                        return j;
                    });
            }
        } else if (*fc_cmd) {
            if (model.orders.size() != 1) throw ak::ConfigError("forecast takes exactly one --order");
            const auto m = fit_one(s, parse_orders(model).front());
            const auto f = ak::forecast(m, s, horizon, alpha);
            emit_view(
                common, "forecast", [&] { return ak::render_fit_text(m) + "\n" + ak::render_forecast_text(f); },
                [&] {
                    auto j = envelope("forecast", common);
                    j["model"] = ak::to_json(m);
                    j["forecast"] = ak::to_json(f);
                    return j;
                },
                [&] { return ak::svg_forecast(s, f, "Forecast, " + m.order.label()); });
        }
    } catch (const ak::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ak::IngestionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
