#pragma once

#include <string>
#include <utility>
#include <vector>

namespace mlosc {

// fixed 800x600 log-log plot: data polyline plus an optional envelope
// polyline; no external plotting dependency
std::string svg_loglog(const std::vector<std::pair<double, double>>& data,
                       const std::vector<std::pair<double, double>>& envelope,
                       const std::string& title);

}  // namespace mlosc
