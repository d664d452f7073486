#include "sacsm/plot.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sacsm {

namespace {

constexpr int kWidth = 720;
constexpr int kHeight = 480;
constexpr int kMarginLeft = 60;
constexpr int kMarginRight = 150;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 50;

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                          "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace

std::string render_plot_svg(const std::vector<LabeledSeries>& series,
                            const std::string& title) {
    if (series.empty()) throw std::runtime_error("no series to plot");
    int max_x = 1;
    for (const auto& ls : series) {
        for (const auto& p : ls.series.points) {
            if (p.value < 0.0 || p.value > 1.0) {
                throw std::runtime_error("series value outside [0,1]: " + ls.label);
            }
            max_x = std::max(max_x, p.docs_read);
        }
    }

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto x_of = [&](double x) { return kMarginLeft + (x - 1.0) / std::max(1.0, max_x - 1.0) * plot_w; };
    auto y_of = [&](double y) { return kMarginTop + (1.0 - y) * plot_h; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    svg << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
    svg << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";

    // axes
    svg << "<line x1=\"" << kMarginLeft << "\" y1=\"" << y_of(0.0) << "\" x2=\""
        << kMarginLeft + plot_w << "\" y2=\"" << y_of(0.0) << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << kMarginLeft << "\" y1=\"" << y_of(0.0) << "\" x2=\""
        << kMarginLeft << "\" y2=\"" << y_of(1.0) << "\" stroke=\"black\"/>\n";
    for (int tick = 0; tick <= 4; ++tick) {
        const double y = tick / 4.0;
        svg << "<text x=\"" << kMarginLeft - 8 << "\" y=\"" << y_of(y) + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt(y) << "</text>\n";
        svg << "<line x1=\"" << kMarginLeft - 4 << "\" y1=\"" << y_of(y) << "\" x2=\""
            << kMarginLeft << "\" y2=\"" << y_of(y) << "\" stroke=\"black\"/>\n";
    }
    svg << "<text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << "documents read</text>\n";
    svg << "<text x=\"" << kMarginLeft << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"start\" font-family=\"sans-serif\" font-size=\"11\">1</text>\n";
    svg << "<text x=\"" << kMarginLeft + plot_w << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << max_x
        << "</text>\n";

    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* color = kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))];
        std::ostringstream pts;
        for (const auto& p : series[i].series.points) {
            pts << fmt(x_of(p.docs_read)) << ',' << fmt(y_of(p.value)) << ' ';
        }
        if (!series[i].series.points.empty()) {
            svg << "<polyline fill=\"none\" stroke=\"" << color
                << "\" stroke-width=\"2\" points=\"" << pts.str() << "\"/>\n";
        }
        const int ly = kMarginTop + 16 + static_cast<int>(i) * 20;
        svg << "<line x1=\"" << kWidth - kMarginRight + 10 << "\" y1=\"" << ly << "\" x2=\""
            << kWidth - kMarginRight + 34 << "\" y2=\"" << ly << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << kWidth - kMarginRight + 40 << "\" y=\"" << ly + 4
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << series[i].label
            << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void emit_plot(const std::vector<LabeledSeries>& series, const std::string& title,
               const std::string& path) {
    const std::string svg = render_plot_svg(series, title);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write plot: " + path);
    out << svg;
}

}  // namespace sacsm
