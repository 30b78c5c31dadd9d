#include "relmass/lamplighter.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "relmass/csv.hpp"
#include "relmass/error.hpp"
#include "relmass/hypercube.hpp"

namespace relmass::lamplighter {

void validate(const LamplighterParams& params) {
    if (params.d < 1) throw ValidationError("lamplighter: d must be positive");
    if (!(params.epsilon > 0.0 && params.epsilon <= 1.0))
        throw ValidationError("lamplighter: epsilon must lie in (0, 1]");
}

namespace {

void require_explicit(unsigned d) {
    if (d < 1) throw ValidationError("lamplighter: d must be positive");
    if (d > kMaxExplicitDim)
        throw SizeError("lamplighter: explicit graph limited to d <= 3 (d = 4 already has 2^20 vertices); "
                        "use the structured simulator");
}

}  // namespace

Vertex index_of(unsigned d, const LamplighterCoords& coords) {
    require_explicit(d);
    const std::uint32_t cube = 1u << d;
    if (coords.pos >= cube) throw ValidationError("lamplighter: walker position out of range");
    std::uint32_t mask = 0;
    for (auto x : coords.lit) {
        if (x >= cube) throw ValidationError("lamplighter: lamp out of range");
        mask |= 1u << x;
    }
    return coords.pos + cube * mask;
}

LamplighterCoords coords_of(unsigned d, Vertex index) {
    require_explicit(d);
    const std::uint32_t cube = 1u << d;
    LamplighterCoords c;
    c.pos = index % cube;
    const std::uint32_t mask = index / cube;
    for (std::uint32_t x = 0; x < cube; ++x)
        if (mask & (1u << x)) c.lit.push_back(x);
    return c;
}

WeightedGraph build_lamplighter(const LamplighterParams& params) {
    validate(params);
    require_explicit(params.d);
    const unsigned d = params.d;
    const std::uint32_t cube = 1u << d;
    const std::uint32_t configs = 1u << cube;
    const std::uint32_t n = cube * configs;
    const double step = 1.0 / d;

    std::vector<Edge> edges;
    for (std::uint32_t mask = 0; mask < configs; ++mask)
        for (std::uint32_t x = 0; x < cube; ++x) {
            const Vertex a = x + cube * mask;
            for (unsigned i = 0; i < d; ++i) {
                const std::uint32_t y = x ^ (1u << i);
                if (x < y) edges.push_back({a, y + cube * mask, step});
            }
            const std::uint32_t toggled = mask ^ (1u << x);
            if (mask < toggled) edges.push_back({a, x + cube * toggled, params.epsilon});
        }
    return WeightedGraph::from_edges(n, edges,
                                     "lamplighter d=" + std::to_string(d) + " epsilon=" + csv::format(params.epsilon));
}

DesignatedVertices uv_vertices(unsigned d) {
    return {index_of(d, {0, {}}), index_of(d, {0, {0}})};
}

ExplicitLamplighter::ExplicitLamplighter(const LamplighterParams& params)
    : params_(params), graph_(build_lamplighter(params)), spectrum_(spectral_decompose(graph_)) {}

ClaimReport ExplicitLamplighter::verify_claim(double t) const {
    if (!(t > 0.0)) throw DomainError("verify_claim: t must be positive");
    const auto [u, v] = uv();
    const double eps = params_.epsilon;
    ClaimReport r{};
    r.d = params_.d;
    r.epsilon = eps;
    r.t = t;
    r.puu = transition_prob(spectrum_, u, u, t);
    r.puv = transition_prob(spectrum_, u, v, t);
    r.walker_return = hypercube::return_prob(params_.d, t);
    r.c_d = hypercube::c_d_closed(params_.d, t);
    const double no_toggle = std::exp(-eps * t);
    r.residual_uu = r.puu - no_toggle * r.walker_return;
    r.residual_uv = r.puv - eps * no_toggle * r.c_d * r.walker_return;
    r.bound = eps * eps * t * t;
    r.uu_holds = r.residual_uu >= -kClaimLowerSlack && r.residual_uu <= r.bound;
    r.uv_holds = r.residual_uv >= -kClaimLowerSlack && r.residual_uv <= r.bound;
    return r;
}

double ExplicitLamplighter::walker_marginal(std::uint32_t x, double t) const {
    const std::uint32_t cube = 1u << params_.d;
    if (x >= cube) throw ValidationError("walker_marginal: position out of range");
    const Vertex u = uv().u;
    double s = 0.0;
    for (Vertex w = x; w < graph_.vertex_count(); w += cube) s += transition_prob(spectrum_, u, w, t);
    return s;
}

ClaimReport verify_claim(unsigned d, double epsilon, double t) {
    return ExplicitLamplighter({d, epsilon}).verify_claim(t);
}

RelativeMassComparison relative_mass_vs_eps_c(const ExplicitLamplighter& model, std::span<const double> grid) {
    if (grid.empty()) throw ValidationError("relative_mass_vs_eps_c: empty grid");
    const auto [u, v] = model.uv();
    const double eps = model.params().epsilon;

    RelativeMassComparison cmp{};
    cmp.exact = sample_curve(model.spectrum(), u, v, grid);
    cmp.first_order = cmp.exact;
    cmp.first_order.quantity = "epsilon_c_d";
    double min_c = INFINITY;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double c = hypercube::c_d_closed(model.params().d, grid[i]);
        cmp.first_order.values[i] = eps * c;
        cmp.max_gap = std::max(cmp.max_gap, std::abs(cmp.exact.values[i] - cmp.first_order.values[i]));
        if (grid[i] > 0.0) min_c = std::min(min_c, c);
    }
    const double tmax = grid.back();
    cmp.epsilon_too_large = eps * eps * tmax * tmax >= eps * min_c;
    return cmp;
}

}  // namespace relmass::lamplighter
