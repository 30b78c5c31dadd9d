#pragma once

#include <optional>
#include <span>
#include <vector>

#include "relmass/graph.hpp"
#include "relmass/heat_kernel.hpp"

namespace relmass::lab {

// Spectral hypotheses for r_{u,v}(t) > 1 on a regular graph: lambda_2 simple
// and positive, and f_2(v) > f_2(u) > 0 once f_2 is signed so f_2(u) > 0.
struct PropositionReport {
    double lambda2 = 0.0;
    double lambda3 = 0.0;
    bool gap_ok = false;      // lambda3 - lambda2 > 1e-8
    bool simple = false;      // gap_ok and lambda2 > 1e-8
    double f2_u = 0.0;
    double f2_v = 0.0;
    std::vector<double> f2;   // unit eigenvector, sign-normalized
    bool hypotheses_hold = false;
    std::optional<double> witness_time;  // some t with r_{u,v}(t) > 1
};

inline constexpr double kSpectralGapTol = 1e-8;

// Throws ValidationError if the graph is not regular.
PropositionReport proposition_check(const WeightedGraph& graph, Vertex u, Vertex v);
PropositionReport proposition_check(const WeightedGraph& graph, const SpectralDecomposition& dec, Vertex u,
                                    Vertex v);

struct ExceedsOne {
    double crossing;    // first time r rises past 1 + 1e-9, bisected to 1e-8
    double peak_time;   // refined maximizer of r near the best grid point
    double peak_value;
};

std::optional<ExceedsOne> find_r_exceeds_one(const SpectralDecomposition& dec, Vertex u, Vertex v,
                                             std::span<const double> grid);

struct MonotonicityWitness {
    double t1, t2;
    double r1, r2;
    double margin() const { return r1 - r2; }
};

std::optional<MonotonicityWitness> monotonicity_scan(const SpectralDecomposition& dec, Vertex u, Vertex v,
                                                     std::span<const double> grid, double margin);

// 2000 points evenly spaced on (0, 200].
std::vector<double> default_scan_grid();

// Norm of the orthogonal projection of vector / |vector| onto the span of the
// eigenvectors whose eigenvalues lie within tol of eigenvalue(index).
double eigenspace_projection_norm(const SpectralDecomposition& dec, std::size_t index, std::span<const double> vector,
                                  double tol = 1e-8);

struct BlowupRow {
    std::size_t clique_size;
    std::size_t degree;
    std::size_t vertex_count;
    bool regular;
    double sup_r_dev;  // sup_t |r^H_{x,y}(deg t) - r^G_{u,v}(t)|
    double sup_p_dev;  // sup_t |N p^H_{x,y}(deg t) - p^G_{u,v}(t)|
};

// G = Cayley(group, gens) with the integer weights as edge weights; H is its
// clique blowup for each N, with x = (u, 0), y = (v, 0).
std::vector<BlowupRow> blowup_convergence(const GroupTable& group, const WeightedGeneratorSet& gens, Element u,
                                          Element v, std::span<const std::size_t> clique_sizes,
                                          std::span<const double> grid);

}  // namespace relmass::lab
