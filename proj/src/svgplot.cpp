#include "mbcs/svgplot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "mbcs/io.hpp"

namespace mbcs {

namespace {

// Pixel coordinates rounded to centipixels and printed via integer
// math, so output bytes never depend on locale or printf quirks.
std::string px(double v) {
    const long long c = std::llround(v * 100.0);
    std::string out = std::to_string(c / 100);
    const long long frac = std::llabs(c % 100);
    if (frac == 0) return out;
    out += '.';
    if (frac < 10) out += '0';
    out += std::to_string(frac);
    while (out.back() == '0') out.pop_back();
    return out;
}

const char* series_color(FeatureDistribution::Kind kind) {
    switch (kind) {
        case FeatureDistribution::Kind::gaussian: return "#1f77b4";
        case FeatureDistribution::Kind::student_t: return "#d62728";
        case FeatureDistribution::Kind::uniform: return "#2ca02c";
        case FeatureDistribution::Kind::laplace: return "#9467bd";
        case FeatureDistribution::Kind::rademacher: return "#8c564b";
    }
    return "#333333";
}

struct Point {
    double x = 0.0;
    double median = 0.0;
    double q25 = 0.0;
    double q75 = 0.0;
};

struct Series {
    std::string label;
    FeatureDistribution::Kind distribution;
    EstimatorTag estimator;
    std::vector<Point> points;
};

struct AxisScale {
    bool log = false;
    double lo = 0.0;  // transformed range
    double hi = 1.0;
    double px_lo = 0.0;
    double px_hi = 1.0;

    double transform(double v) const { return log ? std::log10(v) : v; }
    double to_px(double v) const {
        const double t = transform(v);
        if (hi == lo) return 0.5 * (px_lo + px_hi);
        return px_lo + (t - lo) / (hi - lo) * (px_hi - px_lo);
    }
};

std::vector<double> log_ticks(double lo, double hi) {
    std::vector<double> ticks;
    const int k_lo = static_cast<int>(std::ceil(lo - 1e-9));
    const int k_hi = static_cast<int>(std::floor(hi + 1e-9));
    for (int k = k_lo; k <= k_hi; ++k) ticks.push_back(std::pow(10.0, k));
    if (ticks.size() < 3) {
        for (int k = k_lo - 1; k <= k_hi; ++k) {
            for (const double m : {2.0, 5.0}) {
                const double v = m * std::pow(10.0, k);
                const double t = std::log10(v);
                if (t >= lo - 1e-9 && t <= hi + 1e-9) ticks.push_back(v);
            }
        }
        std::sort(ticks.begin(), ticks.end());
    }
    return ticks;
}

std::vector<double> linear_ticks(double lo, double hi) {
    const double span = hi - lo;
    if (span <= 0.0) return {lo};
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (const double m : {1.0, 2.0, 5.0, 10.0}) {
        if (mag * m >= raw) {
            step = mag * m;
            break;
        }
    }
    std::vector<double> ticks;
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * span; v += step)
        ticks.push_back(std::abs(v) < step * 1e-9 ? 0.0 : v);
    return ticks;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (const char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

PanelSpec panel_spec(const std::string& name) {
    PanelSpec spec;
    spec.name = name;
    if (name == "figure1-left") {
        spec.filter_corrupt = 40;
        spec.title = "Prediction error vs sample count, 40 corrupted labels";
        spec.x_label = "n (log scale)";
        spec.y_label = "prediction error (log scale)";
    } else if (name == "figure1-right") {
        spec.x_field = "n_corrupt";
        spec.x_log = false;
        spec.title = "Prediction error vs number of corrupted labels";
        spec.x_label = "corrupted labels";
        spec.y_label = "prediction error (log scale)";
    } else if (name == "figure2-left") {
        spec.filter_corrupt = 0;
        spec.title = "Prediction error vs sample count, noiseless labels";
        spec.x_label = "n (log scale)";
        spec.y_label = "prediction error (log scale)";
    } else if (name == "figure2-right") {
        spec.y_metric = "margin";
        spec.filter_corrupt = 0;
        spec.title = "Max l1-margin vs sample count, noiseless labels";
        spec.x_label = "n (log scale)";
        spec.y_label = "l1 margin (log scale)";
    } else if (name == "smoke") {
        spec.title = "Smoke plan: prediction error vs sample count";
        spec.x_label = "n (log scale)";
        spec.y_label = "prediction error (log scale)";
    } else {
        throw std::invalid_argument(
            "unknown panel '" + name +
            "'; available: figure1-left, figure1-right, figure2-left, figure2-right, smoke");
    }
    return spec;
}

std::string render_plot(const ResultTable& table, const PanelSpec& panel) {
    if (panel.x_field != "n" && panel.x_field != "n_corrupt")
        throw std::invalid_argument("panel: x_field must be n or n_corrupt");
    if (panel.y_metric != "prediction_error" && panel.y_metric != "margin")
        throw std::invalid_argument("panel: y_metric must be prediction_error or margin");

    ResultTable filtered;
    std::set<std::size_t> corrupt_seen;
    for (const ResultRow& r : table.rows) {
        corrupt_seen.insert(r.n_corrupt);
        if (r.status != "ok") continue;
        if (panel.filter_corrupt && r.n_corrupt != *panel.filter_corrupt) continue;
        filtered.rows.push_back(r);
    }
    if (filtered.rows.empty()) {
        std::string have = "none";
        if (!corrupt_seen.empty()) {
            have.clear();
            for (const std::size_t c : corrupt_seen) {
                if (!have.empty()) have += ", ";
                have += std::to_string(c);
            }
        }
        throw std::invalid_argument("panel '" + panel.name +
                                    "': no usable rows; corruption counts present: " + have);
    }

    // One series per (distribution, estimator), plus the corruption
    // count when the panel neither filters nor plots it.
    const bool split_by_corrupt = !panel.filter_corrupt && panel.x_field == "n" &&
                                  corrupt_seen.size() > 1;
    std::map<std::string, Series> series;
    for (const CellSummary& cell : summarize(filtered)) {
        const Stats& st = panel.y_metric == "margin" ? cell.margin : cell.prediction_error;
        if (std::isnan(st.median)) continue;
        Point pt;
        pt.x = panel.x_field == "n" ? static_cast<double>(cell.n)
                                    : static_cast<double>(cell.n_corrupt);
        pt.median = st.median;
        pt.q25 = st.q25;
        pt.q75 = st.q75;
        std::string label = std::string(distribution_name(cell.distribution)) + " " +
                            estimator_name(cell.estimator);
        if (split_by_corrupt) label += " |O|=" + std::to_string(cell.n_corrupt);
        Series& s = series[label];
        s.label = label;
        s.distribution = cell.distribution;
        s.estimator = cell.estimator;
        s.points.push_back(pt);
    }

    // Drop what a log axis cannot place.
    double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
    double y_lo = std::numeric_limits<double>::infinity(), y_hi = -y_lo;
    for (auto it = series.begin(); it != series.end();) {
        auto& pts = it->second.points;
        std::sort(pts.begin(), pts.end(),
                  [](const Point& a, const Point& b) { return a.x < b.x; });
        pts.erase(std::remove_if(pts.begin(), pts.end(),
                                 [&](const Point& pt) {
                                     if (std::isnan(pt.median)) return true;
                                     if (panel.x_log && !(pt.x > 0.0)) return true;
                                     if (panel.y_log && !(pt.median > 0.0)) return true;
                                     return false;
                                 }),
                  pts.end());
        if (pts.empty()) {
            it = series.erase(it);
            continue;
        }
        for (const Point& pt : pts) {
            x_lo = std::min(x_lo, pt.x);
            x_hi = std::max(x_hi, pt.x);
            const double band_lo = panel.y_log && !(pt.q25 > 0.0) ? pt.median : pt.q25;
            const double band_hi = std::isnan(pt.q75) ? pt.median : pt.q75;
            y_lo = std::min({y_lo, pt.median, band_lo});
            y_hi = std::max({y_hi, pt.median, band_hi});
        }
        ++it;
    }
    if (series.empty())
        throw std::invalid_argument("panel '" + panel.name +
                                    "': every point was NaN or outside the log domain");

    constexpr double kWidth = 860, kHeight = 560;
    constexpr double kLeft = 78, kRight = 640, kTop = 48, kBottom = 505;

    AxisScale xs, ys;
    xs.log = panel.x_log;
    xs.lo = xs.transform(x_lo);
    xs.hi = xs.transform(x_hi);
    ys.log = panel.y_log;
    ys.lo = ys.transform(y_lo);
    ys.hi = ys.transform(y_hi);
    const double x_pad = xs.hi > xs.lo ? 0.05 * (xs.hi - xs.lo) : 0.5;
    const double y_pad = ys.hi > ys.lo ? 0.08 * (ys.hi - ys.lo) : 0.5;
    xs.lo -= x_pad;
    xs.hi += x_pad;
    ys.lo -= y_pad;
    ys.hi += y_pad;
    xs.px_lo = kLeft;
    xs.px_hi = kRight;
    ys.px_lo = kBottom;  // SVG y grows downward
    ys.px_hi = kTop;

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(kWidth) + "\" height=\"" +
           px(kHeight) + "\" viewBox=\"0 0 " + px(kWidth) + " " + px(kHeight) + "\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"" + px(kWidth) + "\" height=\"" + px(kHeight) +
           "\" fill=\"#ffffff\"/>\n";
    svg += "<text x=\"" + px((kLeft + kRight) / 2) + "\" y=\"26\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"16\" fill=\"#111111\">" +
           xml_escape(panel.title) + "</text>\n";

    const std::vector<double> xticks =
        panel.x_log ? log_ticks(xs.lo, xs.hi) : linear_ticks(xs.lo, xs.hi);
    const std::vector<double> yticks =
        panel.y_log ? log_ticks(ys.lo, ys.hi) : linear_ticks(ys.lo, ys.hi);

    for (const double v : xticks) {
        const double x = xs.to_px(v);
        svg += "<line x1=\"" + px(x) + "\" y1=\"" + px(kTop) + "\" x2=\"" + px(x) + "\" y2=\"" +
               px(kBottom) + "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + px(x) + "\" y=\"" + px(kBottom + 20) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
               "fill=\"#333333\">" +
               format_double(v) + "</text>\n";
    }
    for (const double v : yticks) {
        const double y = ys.to_px(v);
        svg += "<line x1=\"" + px(kLeft) + "\" y1=\"" + px(y) + "\" x2=\"" + px(kRight) +
               "\" y2=\"" + px(y) + "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + px(kLeft - 8) + "\" y=\"" + px(y + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" "
               "fill=\"#333333\">" +
               format_double(v) + "</text>\n";
    }
    svg += "<line x1=\"" + px(kLeft) + "\" y1=\"" + px(kBottom) + "\" x2=\"" + px(kRight) +
           "\" y2=\"" + px(kBottom) + "\" stroke=\"#111111\" stroke-width=\"1.5\"/>\n";
    svg += "<line x1=\"" + px(kLeft) + "\" y1=\"" + px(kTop) + "\" x2=\"" + px(kLeft) +
           "\" y2=\"" + px(kBottom) + "\" stroke=\"#111111\" stroke-width=\"1.5\"/>\n";
    svg += "<text x=\"" + px((kLeft + kRight) / 2) + "\" y=\"" + px(kHeight - 14) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "fill=\"#111111\">" +
           xml_escape(panel.x_label) + "</text>\n";
    svg += "<text x=\"20\" y=\"" + px((kTop + kBottom) / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "fill=\"#111111\" transform=\"rotate(-90 20 " +
           px((kTop + kBottom) / 2) + ")\">" + xml_escape(panel.y_label) + "</text>\n";

    // Bands first so every line stays visible.
    for (const auto& [label, s] : series) {
        if (s.points.size() < 2) continue;
        std::string poly;
        for (const Point& pt : s.points) {
            const double q = panel.y_log && !(pt.q75 > 0.0) ? pt.median : pt.q75;
            poly += px(xs.to_px(pt.x)) + "," + px(ys.to_px(q)) + " ";
        }
        for (auto it = s.points.rbegin(); it != s.points.rend(); ++it) {
            const double q = panel.y_log && !(it->q25 > 0.0) ? it->median : it->q25;
            poly += px(xs.to_px(it->x)) + "," + px(ys.to_px(q)) + " ";
        }
        poly.pop_back();
        svg += "<polygon points=\"" + poly + "\" fill=\"" + series_color(s.distribution) +
               "\" fill-opacity=\"0.12\" stroke=\"none\"/>\n";
    }

    for (const auto& [label, s] : series) {
        const char* color = series_color(s.distribution);
        const bool dashed = s.estimator == EstimatorTag::adaboost;
        std::string pts;
        for (const Point& pt : s.points)
            pts += px(xs.to_px(pt.x)) + "," + px(ys.to_px(pt.median)) + " ";
        pts.pop_back();
        svg += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + color +
               "\" stroke-width=\"1.8\"" +
               (dashed ? std::string(" stroke-dasharray=\"7 3 1.5 3\"") : std::string()) +
               "/>\n";
        for (const Point& pt : s.points)
            svg += "<circle cx=\"" + px(xs.to_px(pt.x)) + "\" cy=\"" +
                   px(ys.to_px(pt.median)) + "\" r=\"2.5\" fill=\"" + color + "\"/>\n";
    }

    double ly = kTop + 10;
    svg += "<text x=\"" + px(kRight + 18) + "\" y=\"" + px(ly) +
           "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#111111\">median, "
           "IQR band</text>\n";
    ly += 20;
    for (const auto& [label, s] : series) {
        const char* color = series_color(s.distribution);
        const bool dashed = s.estimator == EstimatorTag::adaboost;
        svg += "<line x1=\"" + px(kRight + 18) + "\" y1=\"" + px(ly - 4) + "\" x2=\"" +
               px(kRight + 52) + "\" y2=\"" + px(ly - 4) + "\" stroke=\"" + color +
               "\" stroke-width=\"1.8\"" +
               (dashed ? std::string(" stroke-dasharray=\"7 3 1.5 3\"") : std::string()) +
               "/>\n";
        svg += "<text x=\"" + px(kRight + 58) + "\" y=\"" + px(ly) +
               "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#333333\">" +
               xml_escape(label) + "</text>\n";
        ly += 18;
    }

    svg += "</svg>\n";
    return svg;
}

}  // namespace mbcs
