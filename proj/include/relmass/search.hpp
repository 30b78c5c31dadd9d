#pragma once

#include <functional>
#include <optional>
#include <span>

namespace relmass::search {

struct Extremum {
    double x;
    double value;
};

// Golden-section search for a maximum of f on [lo, hi] to width tol.
// Returns the best point seen, including the endpoints.
Extremum golden_maximize(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-8);
Extremum golden_minimize(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-8);

struct DecreasingPair {
    std::size_t first;   // index of the earlier, larger value
    std::size_t second;  // index of the later, smaller value
    double drop;         // values[first] - values[second]
};

// Maximizes values[i] - values[j] over i < j. Empty for fewer than two values.
std::optional<DecreasingPair> largest_drop(std::span<const double> values);

struct RefinedPair {
    Extremum high;
    Extremum low;
};

// Refines a grid-level decreasing pair: the earlier point to a local maximum
// of f and the later one to a local minimum, each within its neighbouring
// grid cells, keeping high.x < low.x.
RefinedPair refine_drop(const std::function<double(double)>& f, std::span<const double> grid,
                        const DecreasingPair& pair, double tol = 1e-8);

}  // namespace relmass::search
