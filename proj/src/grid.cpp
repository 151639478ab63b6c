#include "ves/grid.hpp"

#include <cmath>

namespace ves {

void validate_grid(const GridSpec& g) {
    if (!std::isfinite(g.k_min) || !std::isfinite(g.k_max))
        throw GridError("grid bounds must be finite");
    if (g.points < 2) throw GridError("grid needs at least 2 points");
    if (!(g.k_min < g.k_max)) throw GridError("grid requires k_min < k_max");
    if (g.spacing == Spacing::log) {
        if (!(g.k_min > 0.0))
            throw GridError("log spacing requires k_min > 0");
    } else if (g.k_min < 0.0) {
        throw GridError("grid requires k_min >= 0");
    }
}

std::vector<double> make_grid(const GridSpec& g) {
    validate_grid(g);
    std::vector<double> ks(static_cast<size_t>(g.points));
    const int n = g.points - 1;
    if (g.spacing == Spacing::log) {
        const double a = std::log(g.k_min);
        const double b = std::log(g.k_max);
        for (int i = 1; i < n; ++i)
            ks[i] = std::exp(a + (b - a) * (static_cast<double>(i) / n));
    } else {
        for (int i = 1; i < n; ++i)
            ks[i] = g.k_min +
                    (g.k_max - g.k_min) * (static_cast<double>(i) / n);
    }
    ks.front() = g.k_min;
    ks.back() = g.k_max;
    return ks;
}

const char* to_string(Spacing s) {
    return s == Spacing::log ? "log" : "linear";
}

Spacing spacing_from_string(const std::string& s) {
    if (s == "log") return Spacing::log;
    if (s == "linear") return Spacing::linear;
    throw Error("unknown spacing '" + s + "' (expected log or linear)");
}

}  // namespace ves
