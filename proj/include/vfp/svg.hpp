#pragma once

#include <string>
#include <vector>

namespace vfp {

struct PlotSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotOptions {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_y = false;  // base-10 log axis; non-positive points are dropped
};

// Renders a fixed-size line chart (axes, ticks, legend).  The output is a
// pure function of the inputs: coordinates are formatted with fixed
// precision, no timestamps or random ids.  Throws ValidationError when
// nothing drawable remains (empty input, or log axis with no positive data).
std::string render_line_chart(const std::vector<PlotSeries>& series, const PlotOptions& options);

}  // namespace vfp
