#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "armakit/correlation.hpp"
#include "armakit/diagnostics.hpp"
#include "armakit/estimation.hpp"
#include "armakit/forecast.hpp"
#include "armakit/stationarity.hpp"

namespace armakit {

inline constexpr const char* kReportSchemaVersion = "1.0";

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------- ingestion

/// Column selection for CSV input. Names match case-insensitively; an empty
/// value column selects the first column that is not the year column.
struct ColumnMapping {
    std::string year_column = "Year";
    std::string value_column;
};

/// Reads a header-row CSV. Lines before the header (titles, dashes, blank
/// lines) and lines starting with '#' are skipped. Rows with a missing or
/// non-numeric value, duplicate or decreasing years, or gaps fail with the
/// offending line number.
[[nodiscard]] TimeSeries ingest(const std::filesystem::path& path, const ColumnMapping& columns = {});
[[nodiscard]] TimeSeries ingest(std::istream& in, const ColumnMapping& columns = {});

// ------------------------------------------------------------- pipeline

enum class OutputFormat { text, json, svg };

[[nodiscard]] OutputFormat parse_output_format(const std::string& s);
[[nodiscard]] std::string to_string(OutputFormat f);

struct AnalysisConfig {
    std::filesystem::path input;
    ColumnMapping columns;
    /// Explicit orders; mutually exclusive with `auto_grid`.
    std::vector<ModelOrder> orders;
    std::optional<AutoSelectOptions> auto_grid;
    int correlation_lags = 20;
    AdfOptions adf;
    int horizon = 10;
    double alpha = 0.05;
    std::set<OutputFormat> formats{OutputFormat::json};
    std::uint64_t seed = 0;
    std::filesystem::path out_dir;
    CompareKey compare_key = CompareKey::aic;

    /// Throws ConfigError before any computation.
    void validate() const;
};

struct TransformCorrelation {
    int d = 0;
    CorrelationSequence acf;
    CorrelationSequence pacf;
    AdfResult adf;
};

struct ModelAnalysis {
    std::string label;
    FittedModel model;
    DiagnosticsReport diagnostics;
    ForecastResult forecast;
};

struct AnalysisResult {
    TimeSeries series;
    std::vector<TransformCorrelation> transforms;  // d = 0, 1, 2
    std::optional<AutoSelectResult> auto_selection;
    std::vector<ModelAnalysis> models;
    ComparisonTable comparison;
};

/// Report bundle: canonical JSON plus optional views.
struct ReportBundle {
    AnalysisResult result;
    Json json;
    std::string text;
    /// File name -> SVG document.
    std::map<std::string, std::string> figures;
};

/// A pipeline stage failed; `stage()` names it.
class StageError : public Error {
public:
    StageError(std::string stage, const std::string& what)
        : Error("stage '" + stage + "' failed: " + what), stage_(std::move(stage)) {}
    [[nodiscard]] const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

/// ingest -> ACF/PACF and ADF (levels, first and second differences) ->
/// fits (explicit or auto) -> diagnostics -> comparison -> forecasts.
/// When `out_dir` is set, outputs are written there; on failure a
/// `failure.json` manifest with the completed stages is written and a
/// StageError is thrown.
[[nodiscard]] ReportBundle run_analysis(const AnalysisConfig& config);

/// Writes report.json / report.txt / *.svg for the requested formats.
void write_outputs(const ReportBundle& bundle, const AnalysisConfig& config);

// ------------------------------------------------------------ serialisers

[[nodiscard]] Json to_json(const TimeSeries& s);
[[nodiscard]] Json to_json(const MomentSummary& m);
[[nodiscard]] Json to_json(const CorrelationSequence& c);
[[nodiscard]] Json to_json(const AdfResult& r);
[[nodiscard]] Json to_json(const ModelOrder& o);
[[nodiscard]] Json to_json(const ArmaParameters& p);
[[nodiscard]] Json to_json(const FittedModel& m);
[[nodiscard]] Json to_json(const DiagnosticsReport& d);
[[nodiscard]] Json to_json(const ForecastResult& f);
[[nodiscard]] Json to_json(const AutoSelectResult& a);
[[nodiscard]] Json to_json(const ComparisonTable& t);

// ------------------------------------------------------------- text views

/// Formats with 6 significant digits.
[[nodiscard]] std::string format_number(double v);
[[nodiscard]] std::string render_text(const AnalysisResult& r);
[[nodiscard]] std::string render_correlation_text(const CorrelationSequence& c);
[[nodiscard]] std::string render_adf_text(const AdfResult& r);
[[nodiscard]] std::string render_fit_text(const FittedModel& m);
[[nodiscard]] std::string render_diagnostics_text(const DiagnosticsReport& d);
[[nodiscard]] std::string render_forecast_text(const ForecastResult& f);
[[nodiscard]] std::string render_auto_text(const AutoSelectResult& a);
[[nodiscard]] std::string render_comparison_text(const ComparisonTable& t);

// ------------------------------------------------------------ SVG figures

[[nodiscard]] std::string svg_time_series(const TimeSeries& s, const std::string& title);
[[nodiscard]] std::string svg_correlation(const CorrelationSequence& c, const std::string& title);
[[nodiscard]] std::string svg_density(const DiagnosticsReport& d, const std::string& title);
[[nodiscard]] std::string svg_qq(const DiagnosticsReport& d, const std::string& title);
[[nodiscard]] std::string svg_forecast(const TimeSeries& s, const ForecastResult& f, const std::string& title);

}  // namespace armakit
