#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace auxinwave {

// One plotted data set.  x and y must have equal length; non-finite points
// split the polyline.  An empty color picks from a fixed palette.
struct Series {
    std::vector<double> x;
    std::vector<double> y;
    std::string label;
    std::string color;
    double stroke_width = 1.5;
    bool points = false;  // draw circle markers
    bool line = true;     // draw the polyline
    bool dashed = false;
};

struct PlotSpec {
    std::string title;
    std::string xlabel;
    std::string ylabel;
    bool logx = false;
    bool logy = false;
    int width = 720;
    int height = 480;
    std::vector<Series> series;
};

// Static, deterministic SVG line/scatter plot (axes, ticks, legend).
void write_svg_plot(const std::filesystem::path& path, const PlotSpec& spec);

}  // namespace auxinwave
