#pragma once

#include <string>
#include <vector>

#include "sacsm/metrics.hpp"

namespace sacsm {

struct LabeledSeries {
    std::string label;
    MetricSeries series;
};

// Static SVG line chart: x = documents read, y = fraction in [0,1], one
// polyline plus legend entry per labeled series. Throws on empty input or
// values outside [0,1].
std::string render_plot_svg(const std::vector<LabeledSeries>& series,
                            const std::string& title);

void emit_plot(const std::vector<LabeledSeries>& series, const std::string& title,
               const std::string& path);

}  // namespace sacsm
