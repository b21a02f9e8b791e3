#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nurecon::svg {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::string color;
};

struct PlotSpec {
    std::string title;
    std::string x_label = "x";
    std::string y_label;
    bool log_y = false;           // plots log10(y), clamped at y_floor
    double y_floor = 1e-17;
    std::vector<std::string> comments;  // written as one XML comment block
};

/// Plain line plot, one <polyline> per series. Non-finite points are skipped.
void write_line_plot(std::ostream& out, const PlotSpec& spec, const std::vector<Series>& series);

/// Escapes &, <, >, " for text and attribute content.
std::string escape(const std::string& s);

}  // namespace nurecon::svg
