#include "armakit/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace armakit {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 64.0;
constexpr double kRight = 20.0;
constexpr double kTop = 36.0;
constexpr double kBottom = 44.0;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

// Tick positions at 1, 2 or 5 times a power of ten.
std::vector<double> nice_ticks(double lo, double hi, int target = 6) {
    const double span = hi - lo;
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (raw <= m * mag) {
            step = m * mag;
            break;
        }
    std::vector<double> ticks;
    for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step)
        ticks.push_back(std::abs(t) < 1e-12 * span ? 0.0 : t);
    return ticks;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

// A single plot panel mapping data coordinates into the canvas.
class Plot {
public:
    Plot(const std::string& title, double x0, double x1, double y0, double y1) {
        if (!(x1 > x0)) x1 = x0 + 1.0;
        if (!(y1 > y0)) {
            y0 -= 0.5;
            y1 += 0.5;
        }
        const double px = 0.02 * (x1 - x0);
        const double py = 0.05 * (y1 - y0);
        x0_ = x0 - px;
        x1_ = x1 + px;
        y0_ = y0 - py;
        y1_ = y1 + py;
        os_ << R"(<svg xmlns="http://www.w3.org/2000/svg" width=")" << kWidth << R"(" height=")" << kHeight
            << R"(" viewBox="0 0 )" << kWidth << " " << kHeight << R"(" font-family="sans-serif" font-size="11">)"
            << "\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
            << "<text x=\"" << num(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
            << escape(title) << "</text>\n";
        axes();
    }

    double sx(double x) const { return kLeft + (x - x0_) / (x1_ - x0_) * (kWidth - kLeft - kRight); }
    double sy(double y) const { return kHeight - kBottom - (y - y0_) / (y1_ - y0_) * (kHeight - kTop - kBottom); }

    void polyline(const std::vector<double>& xs, const std::vector<double>& ys, const std::string& colour,
                  double width = 1.5, const std::string& dash = {}) {
        os_ << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"" << num(width) << "\"";
        if (!dash.empty()) os_ << " stroke-dasharray=\"" << dash << "\"";
        os_ << " points=\"";
        for (std::size_t i = 0; i < xs.size(); ++i) os_ << (i ? " " : "") << num(sx(xs[i])) << "," << num(sy(ys[i]));
        os_ << "\"/>\n";
    }

    void band(const std::vector<double>& xs, const std::vector<double>& lo, const std::vector<double>& hi,
              const std::string& colour) {
        os_ << "<polygon fill=\"" << colour << "\" fill-opacity=\"0.3\" stroke=\"none\" points=\"";
        for (std::size_t i = 0; i < xs.size(); ++i) os_ << num(sx(xs[i])) << "," << num(sy(hi[i])) << " ";
        for (std::size_t i = xs.size(); i-- > 0;) os_ << num(sx(xs[i])) << "," << num(sy(lo[i])) << " ";
        os_ << "\"/>\n";
    }

    void segment(double xa, double ya, double xb, double yb, const std::string& colour, double width = 1.0,
                 const std::string& dash = {}) {
        os_ << "<line x1=\"" << num(sx(xa)) << "\" y1=\"" << num(sy(ya)) << "\" x2=\"" << num(sx(xb)) << "\" y2=\""
            << num(sy(yb)) << "\" stroke=\"" << colour << "\" stroke-width=\"" << num(width) << "\"";
        if (!dash.empty()) os_ << " stroke-dasharray=\"" << dash << "\"";
        os_ << "/>\n";
    }

    void dot(double x, double y, const std::string& colour) {
        os_ << "<circle cx=\"" << num(sx(x)) << "\" cy=\"" << num(sy(y)) << "\" r=\"2.2\" fill=\"" << colour << "\"/>\n";
    }

    double x_min() const { return x0_; }
    double x_max() const { return x1_; }

    std::string finish() {
        os_ << "</svg>\n";
        return os_.str();
    }

private:
    void axes() {
        const double left = kLeft;
        const double bottom = kHeight - kBottom;
        os_ << "<g stroke=\"#444\" stroke-width=\"1\">"
            << "<line x1=\"" << num(left) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(left) << "\" y2=\""
            << num(bottom) << "\"/>"
            << "<line x1=\"" << num(left) << "\" y1=\"" << num(bottom) << "\" x2=\"" << num(kWidth - kRight)
            << "\" y2=\"" << num(bottom) << "\"/></g>\n";
        for (double t : nice_ticks(x0_, x1_))
            os_ << "<text x=\"" << num(sx(t)) << "\" y=\"" << num(bottom + 16) << "\" text-anchor=\"middle\">"
                << tick_label(t) << "</text>\n";
        for (double t : nice_ticks(y0_, y1_))
            os_ << "<text x=\"" << num(left - 6) << "\" y=\"" << num(sy(t) + 4) << "\" text-anchor=\"end\">"
                << tick_label(t) << "</text>\n"
                << "<line x1=\"" << num(left) << "\" y1=\"" << num(sy(t)) << "\" x2=\"" << num(kWidth - kRight)
                << "\" y2=\"" << num(sy(t)) << "\" stroke=\"#ddd\" stroke-width=\"0.5\"/>\n";
    }

    double x0_, x1_, y0_, y1_;
    std::ostringstream os_;
};

std::vector<double> as_vector(const Eigen::Ref<const Eigen::VectorXd>& v) { return {v.data(), v.data() + v.size()}; }

std::vector<double> time_axis(std::int64_t start, Eigen::Index n) {
    std::vector<double> t(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) t[static_cast<std::size_t>(i)] = static_cast<double>(start + i);
    return t;
}

}  // namespace

std::string svg_time_series(const TimeSeries& s, const std::string& title) {
    if (s.empty()) throw InsufficientDataError("cannot plot an empty series");
    const auto t = time_axis(s.start(), s.size());
    Plot plot(title, t.front(), t.back(), s.values().minCoeff(), s.values().maxCoeff());
    plot.polyline(t, as_vector(s.values()), "#1f5fa8");
    return plot.finish();
}

std::string svg_correlation(const CorrelationSequence& c, const std::string& title) {
    const double lo = std::min({c.values.minCoeff(), -c.threshold, 0.0});
    const double hi = std::max({c.values.maxCoeff(), c.threshold, 0.0});
    Plot plot(title, c.first_lag(), c.max_lag(), lo, hi);
    plot.segment(plot.x_min(), 0.0, plot.x_max(), 0.0, "#444");
    plot.segment(plot.x_min(), c.threshold, plot.x_max(), c.threshold, "#c0392b", 1.0, "4 3");
    plot.segment(plot.x_min(), -c.threshold, plot.x_max(), -c.threshold, "#c0392b", 1.0, "4 3");
    for (Eigen::Index i = 0; i < c.values.size(); ++i) {
        plot.segment(c.lag(i), 0.0, c.lag(i), c.values(i), "#1f5fa8", 2.0);
        plot.dot(c.lag(i), c.values(i), "#1f5fa8");
    }
    return plot.finish();
}

std::string svg_density(const DiagnosticsReport& d, const std::string& title) {
    const auto& k = d.kde_curve;
    const double sd = std::sqrt((d.residuals.array() - d.residuals.mean()).square().mean());
    std::vector<double> normal(static_cast<std::size_t>(k.rows()));
    for (Eigen::Index i = 0; i < k.rows(); ++i) {
        const double z = (k(i, 0) - d.residuals.mean()) / sd;
        normal[static_cast<std::size_t>(i)] = std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * std::numbers::pi));
    }
    const double top = std::max(k.col(1).maxCoeff(), *std::max_element(normal.begin(), normal.end()));
    Plot plot(title, k(0, 0), k(k.rows() - 1, 0), 0.0, top);
    const auto xs = as_vector(k.col(0));
    plot.polyline(xs, normal, "#888", 1.0, "5 3");
    plot.polyline(xs, as_vector(k.col(1)), "#1f5fa8", 2.0);
    return plot.finish();
}

std::string svg_qq(const DiagnosticsReport& d, const std::string& title) {
    const auto& q = d.qq_points;
    const double lo = std::min(q.col(0).minCoeff(), q.col(1).minCoeff());
    const double hi = std::max(q.col(0).maxCoeff(), q.col(1).maxCoeff());
    Plot plot(title, lo, hi, lo, hi);
    plot.segment(lo, lo, hi, hi, "#c0392b", 1.0, "4 3");
    for (Eigen::Index i = 0; i < q.rows(); ++i) plot.dot(q(i, 0), q(i, 1), "#1f5fa8");
    return plot.finish();
}

std::string svg_forecast(const TimeSeries& s, const ForecastResult& f, const std::string& title) {
    const auto hist = time_axis(s.start(), s.size());
    const auto fut = time_axis(f.start, f.horizon);
    const double lo = std::min(s.values().minCoeff(), f.lower.minCoeff());
    const double hi = std::max(s.values().maxCoeff(), f.upper.maxCoeff());
    Plot plot(title, hist.front(), fut.back(), lo, hi);
    plot.band(fut, as_vector(f.lower), as_vector(f.upper), "#1f5fa8");
    plot.polyline(hist, as_vector(s.values()), "#222");
    std::vector<double> px{hist.back()}, py{s.values()(s.size() - 1)};
    px.insert(px.end(), fut.begin(), fut.end());
    for (int h = 0; h < f.horizon; ++h) py.push_back(f.point(h));
    plot.polyline(px, py, "#1f5fa8", 2.0);
    return plot.finish();
}

}  // namespace armakit
