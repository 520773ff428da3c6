#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "walkocc/studies.hpp"

namespace walkocc {

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 480;
constexpr int kMarginLeft = 72;
constexpr int kMarginRight = 150; // room for the legend
constexpr int kMarginTop = 24;
constexpr int kMarginBottom = 48;

const char* kPalette[] = {"#4878cf", "#ee854a", "#6acc64",
                          "#d65f5f", "#956cb4", "#8c613c"};

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string fmt_count(std::int64_t n) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(n));
    return buf;
}

} // namespace

void emit_plot(const std::string& rows_csv_path, const std::string& out_svg_path) {
    const std::vector<StudyRow> rows = read_rows_csv(rows_csv_path);

    // per (kind, n) sup of abs_error
    std::map<std::string, std::map<std::int64_t, double>> series;
    std::set<std::int64_t> all_n;
    for (const auto& r : rows) {
        if (r.n < 1) continue; // identities rows carry no n
        auto& cell = series[to_string(r.kind)][r.n];
        cell = std::max(cell, r.abs_error);
        all_n.insert(r.n);
    }
    if (all_n.size() < 2)
        throw ParseError(rows_csv_path + ": need rows at >= 2 distinct n values to plot");

    double min_err = 0.0, max_err = 0.0;
    bool first = true;
    for (const auto& [kind, pts] : series) {
        for (const auto& [n, e] : pts) {
            if (e <= 0.0) continue;
            if (first || e < min_err) min_err = e;
            if (first || e > max_err) max_err = e;
            first = false;
        }
    }
    if (first) { min_err = 1e-16; max_err = 1.0; }
    // zero errors are floored one decade below the smallest positive value
    const double floor_err = min_err / 10.0;

    const double x_lo = std::log10(static_cast<double>(*all_n.begin()));
    const double x_hi = std::log10(static_cast<double>(*all_n.rbegin()));
    double y_lo = std::floor(std::log10(floor_err));
    double y_hi = std::ceil(std::log10(max_err * 1.0000001));
    if (y_hi <= y_lo) y_hi = y_lo + 1.0;

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    const auto sx = [&](double logn) {
        if (x_hi == x_lo) return kMarginLeft + 0.5 * plot_w;
        return kMarginLeft + (logn - x_lo) / (x_hi - x_lo) * plot_w;
    };
    const auto sy = [&](double loge) {
        return kMarginTop + (y_hi - loge) / (y_hi - y_lo) * plot_h;
    };

    std::ofstream out(out_svg_path, std::ios::binary);
    if (!out) throw ParseError("cannot open output SVG: " + out_svg_path);

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight
        << "\">\n";
    out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" fill=\"white\"/>\n";
    out << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\""
        << fmt(plot_w) << "\" height=\"" << fmt(plot_h)
        << "\" fill=\"none\" stroke=\"#333333\"/>\n";

    // x ticks: one per distinct n
    for (std::int64_t n : all_n) {
        const double px = sx(std::log10(static_cast<double>(n)));
        out << "<line x1=\"" << fmt(px) << "\" y1=\"" << fmt(kMarginTop + plot_h)
            << "\" x2=\"" << fmt(px) << "\" y2=\"" << fmt(kMarginTop + plot_h + 5)
            << "\" stroke=\"#333333\"/>\n";
        out << "<text x=\"" << fmt(px) << "\" y=\"" << fmt(kMarginTop + plot_h + 20)
            << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">"
            << fmt_count(n) << "</text>\n";
    }
    out << "<text x=\"" << fmt(kMarginLeft + plot_w / 2) << "\" y=\""
        << fmt(kHeight - 10)
        << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">"
        << "n</text>\n";

    // y ticks: integer decades
    for (double d = y_lo; d <= y_hi + 1e-9; d += 1.0) {
        const double py = sy(d);
        out << "<line x1=\"" << fmt(kMarginLeft - 5) << "\" y1=\"" << fmt(py)
            << "\" x2=\"" << fmt(kMarginLeft) << "\" y2=\"" << fmt(py)
            << "\" stroke=\"#333333\"/>\n";
        out << "<text x=\"" << fmt(kMarginLeft - 8) << "\" y=\"" << fmt(py + 4)
            << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">"
            << "1e" << fmt_count(static_cast<std::int64_t>(d)) << "</text>\n";
    }
    out << "<text x=\"14\" y=\"" << fmt(kMarginTop + plot_h / 2)
        << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
        << "transform=\"rotate(-90 14 " << fmt(kMarginTop + plot_h / 2) << ")\">"
        << "sup error</text>\n";

    // one polyline per kind plus vertex dots and a legend entry
    std::size_t color_idx = 0;
    int legend_y = kMarginTop + 14;
    for (const auto& [kind, pts] : series) {
        const char* color = kPalette[color_idx % (sizeof kPalette / sizeof *kPalette)];
        ++color_idx;
        out << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.5\" points=\"";
        bool first_pt = true;
        for (const auto& [n, e] : pts) {
            const double px = sx(std::log10(static_cast<double>(n)));
            const double py = sy(std::log10(std::max(e, floor_err)));
            if (!first_pt) out << " ";
            out << fmt(px) << "," << fmt(py);
            first_pt = false;
        }
        out << "\"/>\n";
        for (const auto& [n, e] : pts) {
            const double px = sx(std::log10(static_cast<double>(n)));
            const double py = sy(std::log10(std::max(e, floor_err)));
            out << "<circle cx=\"" << fmt(px) << "\" cy=\"" << fmt(py)
                << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        }
        out << "<rect x=\"" << kWidth - kMarginRight + 12 << "\" y=\"" << legend_y - 9
            << "\" width=\"12\" height=\"12\" fill=\"" << color << "\"/>\n";
        out << "<text x=\"" << kWidth - kMarginRight + 30 << "\" y=\"" << legend_y + 2
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << kind << "</text>\n";
        legend_y += 18;
    }
    out << "</svg>\n";
}

} // namespace walkocc
