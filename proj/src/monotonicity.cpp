#include "relmass/monotonicity.hpp"

#include <algorithm>
#include <cmath>

#include "relmass/error.hpp"
#include "relmass/search.hpp"

namespace relmass::lab {

namespace {
constexpr double kExceedTol = 1e-9;
}

PropositionReport proposition_check(const WeightedGraph& graph, Vertex u, Vertex v) {
    return proposition_check(graph, spectral_decompose(graph), u, v);
}

PropositionReport proposition_check(const WeightedGraph& graph, const SpectralDecomposition& dec, Vertex u,
                                    Vertex v) {
    if (!graph.is_regular()) throw ValidationError("proposition_check: graph is not regular");
    if (dec.size() != graph.vertex_count()) throw ValidationError("proposition_check: decomposition mismatch");
    if (u >= dec.size() || v >= dec.size()) throw ValidationError("proposition_check: vertex out of range");
    if (dec.size() < 3) throw ValidationError("proposition_check: need at least three vertices");

    PropositionReport r;
    r.lambda2 = dec.eigenvalue(1);
    r.lambda3 = dec.eigenvalue(2);
    r.gap_ok = r.lambda3 - r.lambda2 > kSpectralGapTol;
    r.simple = r.gap_ok && r.lambda2 > kSpectralGapTol;
    r.f2 = dec.eigenvector(1);
    if (r.f2[u] < 0.0)
        for (double& x : r.f2) x = -x;
    r.f2_u = r.f2[u];
    r.f2_v = r.f2[v];
    // f2(u) == 0 leaves the sign undetermined; report the hypotheses unmet.
    const bool sign_defined = std::abs(r.f2_u) > 1e-12;
    r.hypotheses_hold = r.simple && sign_defined && r.f2_v > r.f2_u && r.f2_u > 0.0;
    if (r.hypotheses_hold) {
        const auto grid = linear_grid(50.0 / r.lambda2 / 2000.0, 50.0 / r.lambda2, 2000);
        if (auto hit = find_r_exceeds_one(dec, u, v, grid)) r.witness_time = hit->peak_time;
    }
    return r;
}

std::optional<ExceedsOne> find_r_exceeds_one(const SpectralDecomposition& dec, Vertex u, Vertex v,
                                             std::span<const double> grid) {
    if (u == v) return std::nullopt;
    auto r = [&](double t) { return relative_mass(dec, u, v, t); };

    std::optional<std::size_t> first;
    std::size_t best = 0;
    double best_value = -INFINITY;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0) || (i > 0 && !(grid[i] > grid[i - 1])))
            throw ValidationError("find_r_exceeds_one: grid must be positive and ascending");
        const double value = r(grid[i]);
        if (value > 1.0 + kExceedTol && !first) first = i;
        if (value > best_value) {
            best_value = value;
            best = i;
        }
    }
    if (!first) return std::nullopt;

    ExceedsOne out{};
    double lo = *first == 0 ? 0.0 : grid[*first - 1];
    double hi = grid[*first];
    while (hi - lo > 1e-8) {
        const double mid = 0.5 * (lo + hi);
        if (r(mid) > 1.0 + kExceedTol)
            hi = mid;
        else
            lo = mid;
    }
    out.crossing = hi;

    const double plo = grid[best == 0 ? 0 : best - 1];
    const double phi = grid[std::min(best + 1, grid.size() - 1)];
    auto peak = search::golden_maximize(r, plo, phi);
    if (peak.value < best_value) peak = {grid[best], best_value};
    out.peak_time = peak.x;
    out.peak_value = peak.value;
    return out;
}

std::optional<MonotonicityWitness> monotonicity_scan(const SpectralDecomposition& dec, Vertex u, Vertex v,
                                                     std::span<const double> grid, double margin) {
    if (!(margin > 0.0)) throw DomainError("monotonicity_scan: margin must be positive");
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] >= 0.0) || (i > 0 && !(grid[i] > grid[i - 1])))
            throw ValidationError("monotonicity_scan: grid must be nonnegative and ascending");
        values[i] = relative_mass(dec, u, v, grid[i]);
    }
    const auto pair = search::largest_drop(values);
    if (!pair || !(pair->drop > margin)) return std::nullopt;
    auto curve = [&](double t) { return relative_mass(dec, u, v, t); };
    const auto refined = search::refine_drop(curve, grid, *pair);
    return MonotonicityWitness{refined.high.x, refined.low.x, refined.high.value, refined.low.value};
}

std::vector<double> default_scan_grid() { return linear_grid(0.1, 200.0, 2000); }

double eigenspace_projection_norm(const SpectralDecomposition& dec, std::size_t index, std::span<const double> vector,
                                  double tol) {
    if (vector.size() != dec.size()) throw ValidationError("eigenspace_projection_norm: length mismatch");
    double norm2 = 0.0;
    for (double x : vector) norm2 += x * x;
    if (!(norm2 > 0.0)) throw ValidationError("eigenspace_projection_norm: zero vector");
    const double target = dec.eigenvalue(index);
    double proj2 = 0.0;
    for (std::size_t i = 0; i < dec.size(); ++i) {
        if (std::abs(dec.eigenvalue(i) - target) > tol) continue;
        double dot = 0.0;
        for (std::size_t w = 0; w < dec.size(); ++w) dot += dec.eigenvector(static_cast<Vertex>(w), i) * vector[w];
        proj2 += dot * dot;
    }
    return std::sqrt(proj2 / norm2);
}

std::vector<BlowupRow> blowup_convergence(const GroupTable& group, const WeightedGeneratorSet& gens, Element u,
                                          Element v, std::span<const std::size_t> clique_sizes,
                                          std::span<const double> grid) {
    if (u >= group.order() || v >= group.order()) throw ValidationError("blowup_convergence: element out of range");
    const WeightedGraph base = build_cayley(group, gens);
    const SpectralDecomposition base_dec = spectral_decompose(base);

    std::vector<std::size_t> sizes(clique_sizes.begin(), clique_sizes.end());
    std::sort(sizes.begin(), sizes.end());

    std::vector<BlowupRow> rows;
    for (std::size_t cs : sizes) {
        const WeightedGraph h = clique_blowup({cs, group, gens});
        const SpectralDecomposition hdec = spectral_decompose(h);
        const std::size_t deg = blowup_degree(gens, cs);
        const auto x = static_cast<Vertex>(u * cs), y = static_cast<Vertex>(v * cs);

        BlowupRow row{cs, deg, h.vertex_count(), h.is_regular() && h.degree(0) == deg, 0.0, 0.0};
        for (double t : grid) {
            const double th = static_cast<double>(deg) * t;
            row.sup_r_dev = std::max(row.sup_r_dev, std::abs(relative_mass(hdec, x, y, th) - relative_mass(base_dec, u, v, t)));
            row.sup_p_dev = std::max(row.sup_p_dev, std::abs(static_cast<double>(cs) * transition_prob(hdec, x, y, th) -
                                                             transition_prob(base_dec, u, v, t)));
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace relmass::lab
