#include "relmass/search.hpp"

#include <algorithm>
#include <cmath>

namespace relmass::search {

namespace {

Extremum golden(const std::function<double(double)>& f, double lo, double hi, double tol, double sign) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    auto g = [&](double x) { return sign * f(x); };

    Extremum best{lo, g(lo)};
    auto consider = [&](double x, double v) {
        if (v > best.value) best = {x, v};
    };
    consider(hi, g(hi));

    double a = lo, b = hi;
    double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
    double fc = g(c), fd = g(d);
    consider(c, fc);
    consider(d, fd);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = g(c);
            consider(c, fc);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = g(d);
            consider(d, fd);
        }
    }
    return {best.x, sign * best.value};
}

}  // namespace

Extremum golden_maximize(const std::function<double(double)>& f, double lo, double hi, double tol) {
    return golden(f, lo, hi, tol, 1.0);
}

Extremum golden_minimize(const std::function<double(double)>& f, double lo, double hi, double tol) {
    return golden(f, lo, hi, tol, -1.0);
}

std::optional<DecreasingPair> largest_drop(std::span<const double> values) {
    if (values.size() < 2) return std::nullopt;
    std::size_t argmax = 0;
    DecreasingPair best{0, 1, values[0] - values[1]};
    for (std::size_t j = 1; j < values.size(); ++j) {
        const double drop = values[argmax] - values[j];
        if (drop > best.drop) best = {argmax, j, drop};
        if (values[j] > values[argmax]) argmax = j;
    }
    return best;
}

RefinedPair refine_drop(const std::function<double(double)>& f, std::span<const double> grid,
                        const DecreasingPair& pair, double tol) {
    const std::size_t i = pair.first, j = pair.second, last = grid.size() - 1;

    const double hi_lo = grid[i == 0 ? 0 : i - 1];
    const double hi_hi = grid[std::min(i + 1, j)];
    const double lo_lo = grid[std::max(j - 1, i)];
    const double lo_hi = grid[std::min(j + 1, last)];

    Extremum high{grid[i], f(grid[i])};
    Extremum low{grid[j], f(grid[j])};
    const Extremum high_ref = golden_maximize(f, hi_lo, hi_hi, tol);
    const Extremum low_ref = golden_minimize(f, lo_lo, lo_hi, tol);
    if (high_ref.value > high.value && high_ref.x < low.x) high = high_ref;
    if (low_ref.value < low.value && low_ref.x > high.x) low = low_ref;
    return {high, low};
}

}  // namespace relmass::search
