#include "relmass/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "relmass/csv.hpp"
#include "relmass/error.hpp"
#include "relmass/hypercube.hpp"

namespace relmass::mc {

void validate(const McConfig& config) {
    if (config.samples < 1) throw ValidationError("mc: samples must be positive");
    if (config.chunks < 1) throw ValidationError("mc: chunks must be positive");
    if (config.chunks > config.samples) throw ValidationError("mc: more chunks than samples");
}

Trajectory simulate_ctrw(const WeightedGraph& graph, Vertex start, double horizon, Rng& rng) {
    if (!(horizon >= 0.0)) throw DomainError("simulate_ctrw: horizon must be nonnegative");
    if (start >= graph.vertex_count()) throw ValidationError("simulate_ctrw: start out of range");
    Trajectory tr;
    tr.horizon = horizon;
    tr.states.push_back(start);
    Vertex u = start;
    double now = 0.0;
    for (;;) {
        const double rate = graph.weighted_degree(u);
        if (rate <= 0.0) break;
        now += rng.exponential(rate);
        if (now >= horizon) break;
        const auto nb = graph.neighbors(u);
        double pick = rng.uniform() * rate;
        std::size_t k = 0;
        while (k + 1 < nb.size() && pick >= nb[k].weight) pick -= nb[k++].weight;
        u = nb[k].to;
        tr.jump_times.push_back(now);
        tr.states.push_back(u);
    }
    return tr;
}

// ---------------------------------------------------------------------------

namespace {

// Welford accumulator with Chan's pairwise merge.
struct Moments {
    std::uint64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        const double delta = x - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (x - mean);
    }

    void merge(const Moments& o) {
        if (o.n == 0) return;
        if (n == 0) {
            *this = o;
            return;
        }
        const double na = static_cast<double>(n), nb = static_cast<double>(o.n);
        const double delta = o.mean - mean;
        const double total = na + nb;
        mean += delta * nb / total;
        m2 += o.m2 + delta * delta * na * nb / total;
        n += o.n;
    }
};

struct ChunkResult {
    std::uint64_t paths = 0;
    Moments accepted;
};

std::uint64_t chunk_samples(const McConfig& c, unsigned k) {
    const std::uint64_t base = c.samples / c.chunks;
    return base + (k < c.samples % c.chunks ? 1 : 0);
}

template <class Body>
void for_each_chunk(const McConfig& config, Body&& body) {
    unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, config.chunks);
    std::atomic<unsigned> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (unsigned k; (k = next.fetch_add(1)) < config.chunks;) {
            try {
                body(k);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    std::vector<std::jthread> pool;
    for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace

McEstimate run_chunked(const McConfig& config, const PathSampler& sampler) {
    validate(config);
    std::vector<ChunkResult> results(config.chunks);
    for_each_chunk(config, [&](unsigned k) {
        Rng rng(derive_seed(config.seed, k));
        ChunkResult& r = results[k];
        const std::uint64_t count = chunk_samples(config, k);
        for (std::uint64_t i = 0; i < count; ++i) {
            const Observation obs = sampler(rng);
            ++r.paths;
            if (obs.accepted) r.accepted.add(obs.value);
        }
    });

    Moments total;
    std::uint64_t paths = 0;
    for (const auto& r : results) {
        total.merge(r.accepted);
        paths += r.paths;
    }
    if (total.n == 0) throw EstimationError("mc: no path satisfied the conditioning event");

    McEstimate est;
    est.mean = total.mean;
    est.std_error = total.n > 1 ? std::sqrt(total.m2 / static_cast<double>(total.n - 1) / static_cast<double>(total.n))
                                : INFINITY;
    est.n = paths;
    est.n_conditioned = total.n;
    est.seed = config.seed;
    est.chunks = config.chunks;
    return est;
}

McEstimate estimate_c_d(unsigned d, double t, const McConfig& config) {
    if (d < 1 || d > 63) throw DomainError("estimate_c_d: d must lie in [1, 63]");
    if (!(t >= 0.0)) throw DomainError("estimate_c_d: t must be nonnegative");
    return run_chunked(config, [d, t](Rng& rng) {
        std::uint64_t pos = 0;
        double now = 0.0;
        double local_time = 0.0;
        for (;;) {
            const double hold = rng.exponential(1.0);
            if (now + hold >= t) {
                if (pos == 0) local_time += t - now;
                break;
            }
            if (pos == 0) local_time += hold;
            now += hold;
            pos ^= std::uint64_t{1} << rng.below(d);
        }
        return Observation{pos == 0, local_time};
    });
}

McEstimate estimate_endpoint_prob(const WeightedGraph& graph, Vertex start, Vertex target, double t,
                                  const McConfig& config) {
    if (target >= graph.vertex_count()) throw ValidationError("estimate_endpoint_prob: target out of range");
    return run_chunked(config, [&](Rng& rng) {
        return Observation{true, simulate_ctrw(graph, start, t, rng).final_state() == target ? 1.0 : 0.0};
    });
}

std::vector<std::uint64_t> endpoint_histogram(const WeightedGraph& graph, Vertex start, double t,
                                              const McConfig& config) {
    validate(config);
    std::vector<std::vector<std::uint64_t>> partial(config.chunks, std::vector<std::uint64_t>(graph.vertex_count()));
    for_each_chunk(config, [&](unsigned k) {
        Rng rng(derive_seed(config.seed, k));
        for (std::uint64_t i = 0, m = chunk_samples(config, k); i < m; ++i)
            ++partial[k][simulate_ctrw(graph, start, t, rng).final_state()];
    });
    std::vector<std::uint64_t> counts(graph.vertex_count());
    for (const auto& p : partial)
        for (std::size_t v = 0; v < counts.size(); ++v) counts[v] += p[v];
    return counts;
}

// ---------------------------------------------------------------------------

namespace {

void toggle_lamp(std::vector<std::uint32_t>& lit, std::uint32_t x) {
    auto it = std::lower_bound(lit.begin(), lit.end(), x);
    if (it != lit.end() && *it == x)
        lit.erase(it);
    else
        lit.insert(it, x);
}

void require_structured(unsigned d, double epsilon) {
    if (d < 1 || d > 30) throw DomainError("lamplighter simulator: d must lie in [1, 30]");
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw DomainError("lamplighter simulator: bad epsilon");
}

}  // namespace

LamplighterRun simulate_lamplighter_structured(unsigned d, double epsilon, double horizon, Rng& rng) {
    require_structured(d, epsilon);
    if (!(horizon >= 0.0)) throw DomainError("lamplighter simulator: horizon must be nonnegative");
    LamplighterRun run;
    run.positions.push_back(0);
    std::uint32_t pos = 0;
    const double rate = 1.0 + epsilon;
    const double toggle_share = epsilon / rate;
    double now = 0.0;
    for (;;) {
        now += rng.exponential(rate);
        if (now >= horizon) break;
        if (rng.uniform() < toggle_share) {
            run.toggles.push_back({now, pos});
            toggle_lamp(run.final_state.lit, pos);
        } else {
            pos ^= 1u << rng.below(d);
            run.jump_times.push_back(now);
            run.positions.push_back(pos);
        }
    }
    run.final_state.pos = pos;
    return run;
}

McEstimate estimate_lamplighter_prob(unsigned d, double epsilon, double t,
                                     const lamplighter::LamplighterCoords& target, const McConfig& config) {
    require_structured(d, epsilon);
    if (!(t >= 0.0)) throw DomainError("estimate_lamplighter_prob: t must be nonnegative");
    auto want = target;
    std::sort(want.lit.begin(), want.lit.end());
    return run_chunked(config, [&](Rng& rng) {
        // Same dynamics as simulate_lamplighter_structured without recording
        // the path.
        std::uint32_t pos = 0;
        std::vector<std::uint32_t> lit;
        const double rate = 1.0 + epsilon;
        const double toggle_share = epsilon / rate;
        double now = 0.0;
        for (;;) {
            now += rng.exponential(rate);
            if (now >= t) break;
            if (rng.uniform() < toggle_share)
                toggle_lamp(lit, pos);
            else
                pos ^= 1u << rng.below(d);
        }
        return Observation{true, (pos == want.pos && lit == want.lit) ? 1.0 : 0.0};
    });
}

// ---------------------------------------------------------------------------

std::string TheoremReport::verdict() const {
    std::ostringstream os;
    os.precision(3);
    os << "r(t1) > r(t2) " << (supported ? "supported" : "not supported") << " at " << std::fixed << sigmas
       << " sigma";
    return os.str();
}

TheoremReport theorem_demo(unsigned d, double epsilon, double t1, double t2, const McConfig& config) {
    if (!(t1 > 0.0 && t1 < t2)) throw DomainError("theorem_demo: need 0 < t1 < t2");
    if (!(epsilon > 0.0)) throw DomainError("theorem_demo: epsilon must be positive");
    TheoremReport r{};
    r.d = d;
    r.epsilon = epsilon;
    r.t1 = t1;
    r.t2 = t2;

    McConfig c1 = config, c2 = config;
    c1.seed = derive_seed(config.seed, 0);
    c2.seed = derive_seed(config.seed, 1);
    r.c_t1 = estimate_c_d(d, t1, c1);
    r.c_t2 = estimate_c_d(d, t2, c2);
    r.quad_t1 = hypercube::c_d_quadrature(d, t1, 1e-11);
    r.quad_t2 = hypercube::c_d_quadrature(d, t2, 1e-11);

    r.r_t1 = epsilon * r.c_t1.mean;
    r.r_t2 = epsilon * r.c_t2.mean;
    r.gap = r.r_t1 - r.r_t2;
    r.gap_std_error = epsilon * std::hypot(r.c_t1.std_error, r.c_t2.std_error);
    r.sigmas = r.gap / r.gap_std_error;
    r.supported = r.sigmas >= kRequiredSigmas;
    r.t1_agrees = std::abs(r.c_t1.mean - r.quad_t1) <= 3.0 * r.c_t1.std_error;
    r.t2_agrees = std::abs(r.c_t2.mean - r.quad_t2) <= 3.0 * r.c_t2.std_error;
    const double samples = static_cast<double>(config.samples);
    r.low_yield = hypercube::return_prob(d, t1) * samples < 100.0 || hypercube::return_prob(d, t2) * samples < 100.0;
    return r;
}

}  // namespace relmass::mc
