#pragma once

#include <vector>

#include "ves/errors.hpp"

namespace ves {

enum class Spacing { linear, log };

struct GridSpec {
    double k_min = 0.0;
    double k_max = 0.0;
    int points = 0;
    Spacing spacing = Spacing::log;
};

// Throws GridError unless k_min < k_max, both positive for log spacing
// (k_min >= 0 allowed for linear), points >= 2, everything finite.
void validate_grid(const GridSpec& g);

// Materializes the grid. First element is exactly k_min, last exactly k_max.
std::vector<double> make_grid(const GridSpec& g);

const char* to_string(Spacing s);
Spacing spacing_from_string(const std::string& s);

}  // namespace ves
