#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "relmass/graph.hpp"
#include "relmass/lamplighter.hpp"
#include "relmass/rng.hpp"

namespace relmass::mc {

// One sample path on [0, horizon]. states[0] is the start and states[k + 1]
// the state entered at jump_times[k].
struct Trajectory {
    double horizon = 0.0;
    std::vector<double> jump_times;
    std::vector<Vertex> states;

    Vertex final_state() const { return states.back(); }
};

// Holding time at u ~ Exp(weighted degree of u); the next vertex is chosen
// with probability proportional to edge weight.
Trajectory simulate_ctrw(const WeightedGraph& graph, Vertex start, double horizon, Rng& rng);

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t n = 0;              // simulated paths
    std::uint64_t n_conditioned = 0;  // paths satisfying the conditioning event
    std::uint64_t seed = 0;
    unsigned chunks = 0;
};

struct McConfig {
    std::uint64_t samples = 100000;
    std::uint64_t seed = 1;
    unsigned chunks = 64;
    unsigned threads = 0;  // 0: hardware concurrency
};

void validate(const McConfig& config);

// Sample of a conditioned scalar: `accepted` false drops the path from the
// conditioned mean but still counts toward n.
struct Observation {
    bool accepted;
    double value;
};

using PathSampler = std::function<Observation(Rng&)>;

// Runs config.samples paths split across config.chunks chunks. Chunk k draws
// from Rng(derive_seed(seed, k)); per-chunk sums are reduced in chunk order,
// so the result is bit-identical for fixed (seed, chunks, samples) whatever
// the thread count. Throws EstimationError when no path is accepted.
McEstimate run_chunked(const McConfig& config, const PathSampler& sampler);

// C_d(t): mean origin local time over walks on Q_d with Z_t = 0.
McEstimate estimate_c_d(unsigned d, double t, const McConfig& config);

// Pr[X_t = target] for the walk on an explicit graph started at start.
McEstimate estimate_endpoint_prob(const WeightedGraph& graph, Vertex start, Vertex target, double t,
                                  const McConfig& config);

// Endpoint counts over all vertices.
std::vector<std::uint64_t> endpoint_histogram(const WeightedGraph& graph, Vertex start, double t,
                                              const McConfig& config);

struct ToggleEvent {
    double time;
    std::uint32_t pos;
};

struct LamplighterRun {
    std::vector<double> jump_times;       // walker moves
    std::vector<std::uint32_t> positions; // positions[0] = origin, then one per jump
    std::vector<ToggleEvent> toggles;
    lamplighter::LamplighterCoords final_state;
};

// Lamplighter over Q_d without an explicit graph: the walker jumps at rate 1
// to a uniform neighbour, toggles arrive at rate epsilon independently and
// flip the lamp under the walker. d <= 30, epsilon >= 0.
LamplighterRun simulate_lamplighter_structured(unsigned d, double epsilon, double horizon, Rng& rng);

// Pr[X_t = target] for the lamplighter started at the origin with lamps off.
McEstimate estimate_lamplighter_prob(unsigned d, double epsilon, double t,
                                     const lamplighter::LamplighterCoords& target, const McConfig& config);

struct TheoremReport {
    unsigned d;
    double epsilon;
    double t1, t2;
    McEstimate c_t1, c_t2;
    double quad_t1, quad_t2;  // C_d by quadrature
    double r_t1, r_t2;        // epsilon * C_d estimates
    double gap;               // r_t1 - r_t2
    double gap_std_error;
    double sigmas;            // gap / gap_std_error
    bool supported;           // sigmas >= required_sigmas
    bool t1_agrees;           // |C - quadrature| <= 3 se
    bool t2_agrees;
    bool low_yield;           // Pr[Z_t = 0] * samples < 100 at either time

    std::string verdict() const;
};

inline constexpr double kRequiredSigmas = 5.0;

// Estimates C_d at t1 and t2 (streams 0 and 1 of config.seed) and compares
// the first-order relative masses epsilon * C_d(t1) > epsilon * C_d(t2).
TheoremReport theorem_demo(unsigned d, double epsilon, double t1, double t2, const McConfig& config);

}  // namespace relmass::mc
