#pragma once

#include <string_view>
#include <vector>

namespace aoiq {

// Inclusive value grids for sweeps. Accepted forms:
//   "0.5"                  single value
//   "start:stop:count"     linear spacing, count >= 1
//   "log:start:stop:count" geometric spacing, start/stop > 0
struct GridSpec {
    std::vector<double> values;

    static GridSpec parse(std::string_view text);
    static GridSpec single(double v) { return {{v}}; }
    std::size_t size() const { return values.size(); }
};

}  // namespace aoiq
