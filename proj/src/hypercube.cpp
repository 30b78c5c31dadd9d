#include "relmass/hypercube.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "relmass/error.hpp"
#include "relmass/heat_kernel.hpp"
#include "relmass/quadrature.hpp"
#include "relmass/search.hpp"

namespace relmass::hypercube {

namespace {

void require_dim(unsigned d) {
    if (d < 1) throw DomainError("hypercube: d must be positive");
}

void require_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("hypercube: t must be finite and nonnegative");
}

// Neumaier's variant of compensated summation.
class CompensatedSum {
  public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace

double return_prob(unsigned d, double t) {
    require_dim(d);
    require_time(t);
    return std::pow(0.5 * (1.0 + std::exp(-2.0 * t / d)), static_cast<double>(d));
}

double h_d(unsigned d, double t, double s) {
    require_dim(d);
    require_time(t);
    if (!(s >= 0.0 && s <= t)) throw DomainError("h_d: s must lie in [0, t]");
    const double dd = d;
    return (1.0 + std::exp(-2.0 * s / dd)) * (1.0 + std::exp(-2.0 * (t - s) / dd)) /
           (2.0 * (1.0 + std::exp(-2.0 * t / dd)));
}

double c_d_quadrature(unsigned d, double t, double tol) {
    require_dim(d);
    require_time(t);
    if (!(tol >= 1e-14 && tol <= 1e-4)) throw DomainError("c_d_quadrature: tol must lie in [1e-14, 1e-4]");
    if (t == 0.0) return 0.0;
    const double dd = d;
    auto integrand = [&](double s) { return std::pow(h_d(d, t, std::min(s, t)), dd); };
    QuadratureOptions opts;
    opts.abs_tol = tol;
    const double value = integrate_adaptive_simpson(integrand, 0.0, t, opts).value;
    return std::clamp(value, 0.0, t);
}

double c_d_closed(unsigned d, double t) {
    require_dim(d);
    require_time(t);
    if (d > kClosedFormMaxDim) throw SizeError("c_d_closed: d above 40; use c_d_quadrature");
    if (t == 0.0) return 0.0;

    const double dd = d;
    std::vector<double> binom(d + 1);
    binom[0] = 1.0;
    for (unsigned k = 1; k <= d; ++k) binom[k] = binom[k - 1] * (dd - k + 1) / k;

    CompensatedSum sum;
    for (unsigned j = 0; j <= d; ++j) {
        const double decay_j = std::exp(-2.0 * j * t / dd);
        for (unsigned k = 0; k <= d; ++k) {
            double integral;
            if (j == k) {
                integral = t * decay_j;
            } else {
                // d / (2(k-j)) * (e^{-2jt/d} - e^{-2kt/d}), written so the
                // difference is formed by expm1 without cancellation.
                const double gap = static_cast<double>(static_cast<int>(k) - static_cast<int>(j));
                const double lead = gap > 0 ? decay_j : std::exp(-2.0 * k * t / dd);
                integral = dd / (2.0 * std::abs(gap)) * lead * -std::expm1(-2.0 * std::abs(gap) * t / dd);
            }
            sum.add(binom[j] * binom[k] * integral);
        }
    }
    const double log_prefactor = -dd * std::log(2.0 * (1.0 + std::exp(-2.0 * t / dd)));
    return std::exp(log_prefactor) * sum.value();
}

double c_d(unsigned d, double t) {
    return d <= kClosedFormMaxDim ? c_d_closed(d, t) : c_d_quadrature(d, t, 1e-11);
}

double lemma_constant() {
    const double a = 1.0 - std::exp(-1.0);
    return a * a / (1.0 + std::exp(-2.0));
}

LemmaReport lemma_bounds_check(unsigned d) {
    require_dim(d);
    LemmaReport r{};
    r.d = d;
    const double sd = std::sqrt(static_cast<double>(d));
    r.c_at_sqrt_d = c_d(d, sd);
    r.lower_bound = sd / std::numbers::e;
    r.c_at_d = c_d(d, static_cast<double>(d));
    r.upper_bound = 6.0;
    r.upper_bound_sharp = 2.0 / lemma_constant();
    r.lower_holds = r.c_at_sqrt_d >= r.lower_bound;
    r.upper_holds = r.c_at_d <= r.upper_bound;
    r.upper_sharp_holds = r.c_at_d <= r.upper_bound_sharp;
    return r;
}

std::optional<Witness> find_witness(unsigned d, std::span<const double> grid, double margin) {
    require_dim(d);
    if (!(margin > 0.0)) throw DomainError("find_witness: margin must be positive");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        require_time(grid[i]);
        if (i > 0 && !(grid[i] > grid[i - 1])) throw ValidationError("find_witness: grid must be strictly ascending");
    }
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) values[i] = c_d(d, grid[i]);

    const auto pair = search::largest_drop(values);
    if (!pair || !(pair->drop > margin)) return std::nullopt;

    auto curve = [d](double t) { return c_d(d, t); };
    const auto refined = search::refine_drop(curve, grid, *pair);
    return Witness{refined.high.x, refined.low.x, refined.high.value, refined.low.value};
}

std::vector<double> default_grid() { return stepped_grid(0.0, 30.0, 0.05); }

}  // namespace relmass::hypercube
