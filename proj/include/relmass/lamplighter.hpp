#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "relmass/graph.hpp"
#include "relmass/heat_kernel.hpp"

namespace relmass::lamplighter {

// Walker position on Q_d plus the set of lit lamps, stored sorted.
struct LamplighterCoords {
    std::uint32_t pos = 0;
    std::vector<std::uint32_t> lit;

    bool operator==(const LamplighterCoords&) const = default;
};

struct LamplighterParams {
    unsigned d;
    double epsilon;  // toggle rate; walker steps along each of the d cube edges at rate 1/d
};

void validate(const LamplighterParams& params);

inline constexpr unsigned kMaxExplicitDim = 3;

// Explicit-graph index: pos + 2^d * (lamp bitmask). Requires d <= 3.
Vertex index_of(unsigned d, const LamplighterCoords& coords);
LamplighterCoords coords_of(unsigned d, Vertex index);

// 2^d * 2^{2^d} vertices; step edges weight 1/d, toggle edges weight epsilon.
// Throws SizeError for d > 3.
WeightedGraph build_lamplighter(const LamplighterParams& params);

struct DesignatedVertices {
    Vertex u;  // walker at the origin, all lamps off
    Vertex v;  // walker at the origin, only the origin lamp on
};

DesignatedVertices uv_vertices(unsigned d);

struct ClaimReport {
    unsigned d;
    double epsilon;
    double t;
    double puu;
    double puv;
    double walker_return;  // Pr[Z_t = 0]
    double c_d;            // C_d(t)
    double residual_uu;    // p_uu - e^{-eps t} Pr[Z_t = 0]
    double residual_uv;    // p_uv - eps e^{-eps t} C_d(t) Pr[Z_t = 0]
    double bound;          // eps^2 t^2
    bool uu_holds;
    bool uv_holds;
};

// Lower bounds are checked with -1e-12 slack.
inline constexpr double kClaimLowerSlack = 1e-12;

// Explicit lamplighter graph with its spectral decomposition, for repeated
// exact evaluation.
class ExplicitLamplighter {
  public:
    explicit ExplicitLamplighter(const LamplighterParams& params);

    const LamplighterParams& params() const noexcept { return params_; }
    const WeightedGraph& graph() const noexcept { return graph_; }
    const SpectralDecomposition& spectrum() const noexcept { return spectrum_; }
    DesignatedVertices uv() const { return uv_vertices(params_.d); }

    ClaimReport verify_claim(double t) const;

    // sum over lamp configurations of p_{u, (x, lamps)}(t)
    double walker_marginal(std::uint32_t x, double t) const;

  private:
    LamplighterParams params_;
    WeightedGraph graph_;
    SpectralDecomposition spectrum_;
};

ClaimReport verify_claim(unsigned d, double epsilon, double t);

struct RelativeMassComparison {
    CurveSamples exact;       // r_{u,v}(t)
    CurveSamples first_order; // epsilon * C_d(t)
    double max_gap;           // max |exact - first_order|
    // eps^2 (max t)^2 >= eps * min C_d over the grid: the O(eps^2) term may
    // dominate.
    bool epsilon_too_large;
};

RelativeMassComparison relative_mass_vs_eps_c(const ExplicitLamplighter& model, std::span<const double> grid);

}  // namespace relmass::lamplighter
