#pragma once

#include <optional>
#include <span>
#include <vector>

namespace relmass::hypercube {

// Pr[X_t = 0] for the walk on Q_d started at the origin:
// ((1 + e^{-2t/d}) / 2)^d.
double return_prob(unsigned d, double t);

// Integrand base of the conditioned origin time: (h_d(t, s))^d equals
// p(s) p(t - s) / p(t). Requires 0 <= s <= t.
double h_d(unsigned d, double t, double s);

// C_d(t) = int_0^t h_d(t, s)^d ds by adaptive Simpson. tol in [1e-14, 1e-4].
double c_d_quadrature(unsigned d, double t, double tol = 1e-10);

// Same quantity by term-wise integration of the binomial expansion.
// 1 <= d <= 40.
double c_d_closed(unsigned d, double t);

inline constexpr unsigned kClosedFormMaxDim = 40;

// Closed form where available, quadrature above kClosedFormMaxDim.
double c_d(unsigned d, double t);

// (1 - e^{-1})^2 / (1 + e^{-2}); h_d(d, s) <= 1 - c s / d on [0, d/2].
double lemma_constant();

struct LemmaReport {
    unsigned d;
    double c_at_sqrt_d;       // C_d(sqrt d)
    double lower_bound;       // e^{-1} sqrt d
    double c_at_d;            // C_d(d)
    double upper_bound;       // 6
    double upper_bound_sharp; // 2 / c
    bool lower_holds;
    bool upper_holds;
    bool upper_sharp_holds;
};

LemmaReport lemma_bounds_check(unsigned d);

struct Witness {
    double t1;
    double t2;
    double c_t1;
    double c_t2;
    double margin() const { return c_t1 - c_t2; }
};

// Best pair t1 < t2 on the grid maximizing C_d(t1) - C_d(t2), then refined
// by golden-section search around each point. Empty if the best grid gap
// does not exceed margin.
std::optional<Witness> find_witness(unsigned d, std::span<const double> grid, double margin = 1e-3);

// Default figure grid: [0, 30] in steps of 0.05.
std::vector<double> default_grid();

}  // namespace relmass::hypercube
