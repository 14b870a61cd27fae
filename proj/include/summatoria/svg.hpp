#pragma once

#include <optional>
#include <string>
#include <vector>

#include "summatoria/common.hpp"

namespace summatoria::svg {

// A single log-x curve with an optional horizontal reference line. Rendering
// is dependency-free and byte-deterministic for fixed input.
struct PlotSpec {
    std::string title;
    std::string y_label;
    std::vector<double> xs;  // ascending, > 0 (plotted on a log axis)
    std::vector<double> ys;
    std::optional<double> reference;
};

std::string render(const PlotSpec& plot);

}  // namespace summatoria::svg
