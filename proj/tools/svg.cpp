#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace easme::cli {

namespace {

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    // Widens empty or degenerate ranges so every mapping is well defined.
    Range padded() const {
        Range r = *this;
        if (!(r.lo <= r.hi)) return {0.0, 1.0};
        if (r.hi - r.lo < 1e-12) {
            const double pad = std::max(0.5, std::abs(r.lo) * 0.05);
            r.lo -= pad;
            r.hi += pad;
        }
        return r;
    }
    double map(double v, double a, double b) const { return a + (v - lo) / (hi - lo) * (b - a); }
};

struct Box {
    double left, top, width, height;
    double right() const { return left + width; }
    double bottom() const { return top + height; }
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

void text(std::ostringstream& s, double x, double y, const std::string& body, const char* anchor = "middle",
          int size = 11) {
    // body is always generated from numbers and fixed words, nothing to escape
    s << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-size=\"" << size << "\" text-anchor=\"" << anchor
      << "\">" << body << "</text>\n";
}

void frame(std::ostringstream& s, const Box& b, const Range& xr, const Range& yr) {
    s << "<rect x=\"" << num(b.left) << "\" y=\"" << num(b.top) << "\" width=\"" << num(b.width) << "\" height=\""
      << num(b.height) << "\" fill=\"none\" stroke=\"#444\"/>\n";
    text(s, b.left, b.bottom() + 14, label(xr.lo), "start", 10);
    text(s, b.right(), b.bottom() + 14, label(xr.hi), "end", 10);
    text(s, b.left - 4, b.bottom(), label(yr.lo), "end", 10);
    text(s, b.left - 4, b.top + 10, label(yr.hi), "end", 10);
}

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

} // namespace

std::string render_pareto_svg(const nlohmann::json& front, const HistoryTable& history, std::size_t x,
                              std::size_t y) {
    const double width = 1000, height = 480;
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // scatter
    const Box sb{70, 40, 380, 360};
    Range xr, yr;
    std::vector<std::pair<double, double>> points;
    for (const auto& e : front) {
        const double px = e["objectives"][x].is_number() ? e["objectives"][x].get<double>() : NAN;
        const double py = e["objectives"][y].is_number() ? e["objectives"][y].get<double>() : NAN;
        points.emplace_back(px, py);
        xr.add(px);
        yr.add(py);
    }
    xr = xr.padded();
    yr = yr.padded();
    text(s, sb.left + sb.width / 2, 24, "Pareto front (" + std::to_string(points.size()) + " points)", "middle", 14);
    frame(s, sb, xr, yr);
    text(s, sb.left + sb.width / 2, sb.bottom() + 34, "objective " + std::to_string(x));
    s << "<text x=\"20\" y=\"" << num(sb.top + sb.height / 2) << "\" font-size=\"11\" text-anchor=\"middle\" "
      << "transform=\"rotate(-90 20 " << num(sb.top + sb.height / 2) << ")\">objective " << y << "</text>\n";
    for (const auto& [px, py] : points) {
        if (!std::isfinite(px) || !std::isfinite(py)) continue;
        s << "<circle cx=\"" << num(xr.map(px, sb.left, sb.right())) << "\" cy=\""
          << num(yr.map(py, sb.bottom(), sb.top)) << "\" r=\"3\" fill=\"#1f77b4\" fill-opacity=\"0.7\"/>\n";
    }

    // best value per generation, one small chart per objective
    std::size_t gen_col = 0;
    std::vector<std::size_t> best_cols;
    for (std::size_t k = 0;; ++k) {
        const auto it = std::find(history.header.begin(), history.header.end(), "best_" + std::to_string(k));
        if (it == history.header.end()) break;
        best_cols.push_back(static_cast<std::size_t>(it - history.header.begin()));
    }
    Range gr;
    for (const auto& row : history.rows) gr.add(row[gen_col]);
    gr = gr.padded();

    text(s, 760, 24, "Best objective by generation", "middle", 14);
    const double top = 40, total = 360, gap = 14;
    const std::size_t m = std::max<std::size_t>(best_cols.size(), 1);
    const double panel = (total - gap * static_cast<double>(m - 1)) / static_cast<double>(m);
    for (std::size_t k = 0; k < best_cols.size(); ++k) {
        const Box b{560, top + static_cast<double>(k) * (panel + gap), 400, panel};
        Range vr;
        for (const auto& row : history.rows) vr.add(row[best_cols[k]]);
        vr = vr.padded();
        frame(s, b, gr, vr);
        text(s, b.right() - 4, b.top + 12, "best_" + std::to_string(k), "end", 10);

        std::string path;
        bool pen_down = false;
        for (const auto& row : history.rows) {
            const double v = row[best_cols[k]];
            if (!std::isfinite(v)) {
                pen_down = false;
                continue;
            }
            path += pen_down ? " L" : " M";
            path += num(gr.map(row[gen_col], b.left, b.right())) + ' ' + num(vr.map(v, b.bottom(), b.top));
            pen_down = true;
        }
        if (!path.empty())
            s << "<path d=\"" << path.substr(1) << "\" fill=\"none\" stroke=\"" << kPalette[k % 7]
              << "\" stroke-width=\"1.5\"/>\n";
    }
    text(s, 760, top + total + 34, "generation");
    s << "</svg>\n";
    return s.str();
}

} // namespace easme::cli
