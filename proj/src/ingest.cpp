#include "armakit/report.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace armakit {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\"");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\"");
    return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* first = s.data();
    if (*first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size() && std::isfinite(out);
}

bool parse_year(const std::string& s, std::int64_t& out) {
    if (s.empty()) return false;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

TimeSeries ingest(const std::filesystem::path& path, const ColumnMapping& columns) {
    std::ifstream in(path);
    if (!in) throw IngestionError("cannot open '" + path.string() + "'", 0);
    return ingest(in, columns);
}

TimeSeries ingest(std::istream& in, const ColumnMapping& columns) {
    const std::string year_key = lower(columns.year_column);
    const std::string value_key = lower(columns.value_column);

    std::string line;
    int line_no = 0;
    int year_idx = -1;
    int value_idx = -1;
    std::vector<std::int64_t> years;
    std::vector<double> values;

    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto cells = split(t);

        if (year_idx < 0) {
            for (std::size_t i = 0; i < cells.size(); ++i)
                if (lower(cells[i]) == year_key) year_idx = static_cast<int>(i);
            if (year_idx < 0) continue;  // preamble
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (static_cast<int>(i) == year_idx) continue;
                if (value_key.empty() ? !cells[i].empty() : lower(cells[i]) == value_key) {
                    value_idx = static_cast<int>(i);
                    break;
                }
            }
            if (value_idx < 0)
                throw IngestionError(value_key.empty() ? "header has no value column"
                                                       : "header has no column '" + columns.value_column + "'",
                                     line_no);
            continue;
        }

        const auto need = static_cast<std::size_t>(std::max(year_idx, value_idx));
        std::int64_t year = 0;
        if (cells.size() <= static_cast<std::size_t>(year_idx) || !parse_year(cells[year_idx], year))
            throw IngestionError("row " + std::to_string(line_no) + ": unparseable year", line_no);
        double v = 0.0;
        if (cells.size() <= need || !parse_double(cells[value_idx], v))
            throw IngestionError("row " + std::to_string(line_no) + " (year " + std::to_string(year) +
                                     "): missing or non-numeric anomaly",
                                 line_no);
        if (!years.empty()) {
            if (year == years.back())
                throw IngestionError("row " + std::to_string(line_no) + ": duplicate year " + std::to_string(year),
                                     line_no);
            if (year < years.back())
                throw IngestionError("row " + std::to_string(line_no) + ": year " + std::to_string(year) +
                                         " is out of order",
                                     line_no);
            if (year != years.back() + 1)
                throw IngestionError("row " + std::to_string(line_no) + ": gap between " +
                                         std::to_string(years.back()) + " and " + std::to_string(year),
                                     line_no);
        }
        years.push_back(year);
        values.push_back(v);
    }
    if (year_idx < 0) throw IngestionError("no header row with column '" + columns.year_column + "'", line_no);
    if (years.empty()) throw IngestionError("no data rows", line_no);
    return TimeSeries::from_pairs(years, values);
}

}  // namespace armakit
