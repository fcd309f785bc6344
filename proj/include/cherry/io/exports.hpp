#pragma once

#include <string>
#include <vector>

#include "cherry/diagram.hpp"
#include "cherry/intervals.hpp"

namespace cherry {

// Diagram JSON: {family, Q, theta_range, plateaus:[{p,q,lo,hi,tags,...}],
// loops, residual:{intervals, measure}, connections, boxcounts}.
std::string diagram_json(const BifDiagram& d);

std::string cover_json(const IntervalCover& cover,
                       const std::vector<BoxCountEntry>& boxcounts = {});

// CSV of the sampled rotation staircase: theta,rho,width per line.
std::string staircase_csv(const std::vector<StaircaseSample>& samples);

// Staircase over Cantor-bar rendering of the diagram.
std::string diagram_svg(const BifDiagram& d, const std::vector<StaircaseSample>& samples);

// Bar rendering of an interval cover.
std::string cover_svg(const IntervalCover& cover);

void write_file(const std::string& path, const std::string& content);

}  // namespace cherry
