#include <bit>
#include <cmath>
#include <deque>

#include "doctest.h"
#include "relmass/error.hpp"
#include "relmass/hypercube.hpp"
#include "relmass/lamplighter.hpp"

using namespace relmass;
using namespace relmass::lamplighter;

namespace {

std::size_t bfs_distance(const WeightedGraph& g, Vertex from, Vertex to) {
    std::vector<std::size_t> dist(g.vertex_count(), SIZE_MAX);
    std::deque<Vertex> queue{from};
    dist[from] = 0;
    while (!queue.empty()) {
        Vertex x = queue.front();
        queue.pop_front();
        for (const auto& nb : g.neighbors(x))
            if (dist[nb.to] == SIZE_MAX) {
                dist[nb.to] = dist[x] + 1;
                queue.push_back(nb.to);
            }
    }
    return dist[to];
}

const ExplicitLamplighter& model_d2(double eps) {
    static const ExplicitLamplighter m2({2, 1e-2});
    static const ExplicitLamplighter m3({2, 1e-3});
    static const ExplicitLamplighter m4({2, 1e-4});
    if (eps == 1e-2) return m2;
    if (eps == 1e-3) return m3;
    return m4;
}

}  // namespace

TEST_CASE("lamplighter construction") {
    SUBCASE("d = 2") {
        auto g = build_lamplighter({2, 0.01});
        CHECK(g.vertex_count() == 64);
        for (Vertex x = 0; x < 64; ++x) {
            CHECK(g.degree(x) == 3);
            CHECK(g.weighted_degree(x) == doctest::Approx(1.01).epsilon(1e-15));
        }
        CHECK(g.is_connected());
    }
    SUBCASE("d = 3 audit") {
        const double eps = 0.001;
        auto g = build_lamplighter({3, eps});
        CHECK(g.vertex_count() == 2048);
        const auto lap = g.laplacian();
        for (Vertex x = 0; x < 2048; ++x) {
            CHECK(lap(x, x) == doctest::Approx(1.0 + eps).epsilon(1e-14));
            int toggles = 0;
            for (const auto& nb : g.neighbors(x)) {
                const auto a = coords_of(3, x), b = coords_of(3, nb.to);
                if (nb.weight == eps) {
                    ++toggles;
                    // Same walker position, lamp sets differ exactly at pos.
                    CHECK(a.pos == b.pos);
                    const Vertex mask_a = x / 8, mask_b = nb.to / 8;
                    CHECK((mask_a ^ mask_b) == (1u << a.pos));
                } else {
                    CHECK(nb.weight == 1.0 / 3.0);
                    CHECK(a.lit == b.lit);
                    CHECK(std::popcount(a.pos ^ b.pos) == 1);
                }
            }
            CHECK(toggles == 1);
        }
    }
    CHECK_THROWS_AS(build_lamplighter({4, 0.01}), SizeError);
    CHECK_THROWS_AS(build_lamplighter({2, 0.0}), ValidationError);
    CHECK_THROWS_AS(build_lamplighter({2, 1.5}), ValidationError);
}

TEST_CASE("coordinates and designated vertices") {
    const auto [u, v] = uv_vertices(2);
    CHECK(u == 0);
    CHECK(v == 4);
    CHECK(coords_of(2, u).pos == 0);
    CHECK(coords_of(2, v).pos == 0);
    CHECK(coords_of(2, v).lit == std::vector<std::uint32_t>{0});
    CHECK(bfs_distance(build_lamplighter({2, 0.1}), u, v) == 1);

    for (Vertex x = 0; x < 2048; x += 37) CHECK(index_of(3, coords_of(3, x)) == x);
    CHECK_THROWS_AS(index_of(2, {4, {}}), ValidationError);
    CHECK_THROWS_AS(uv_vertices(4), SizeError);
}

TEST_CASE("walker marginal is the hypercube kernel") {
    const auto& m = model_d2(1e-3);
    for (double t : {0.3, 1.0, 5.0})
        for (std::uint32_t x = 0; x < 4; ++x) {
            const double e = std::exp(-2.0 * t / 2.0);
            const int dist = std::popcount(x);
            const double expected = std::pow((1 + e) / 2, 2 - dist) * std::pow((1 - e) / 2, dist);
            CHECK(std::abs(m.walker_marginal(x, t) - expected) <= 1e-10);
        }
}

TEST_CASE("claim residuals on the explicit d = 2 graph") {
    for (double eps : {1e-2, 1e-3}) {
        const auto& m = model_d2(eps);
        for (double t : {0.5, 1.0, 2.0, 4.0}) {
            const auto r = m.verify_claim(t);
            CAPTURE(eps);
            CAPTURE(t);
            CHECK(r.uu_holds);
            CHECK(r.uv_holds);
            CHECK(r.residual_uu >= -1e-12);
            CHECK(r.residual_uv >= -1e-12);
            CHECK(r.residual_uu <= eps * eps * t * t);
            CHECK(r.residual_uv <= eps * eps * t * t);
            CHECK(r.walker_return == doctest::Approx(hypercube::return_prob(2, t)));
        }
    }
    SUBCASE("d = 2, eps = 0.01, t = 1") {
        const auto r = model_d2(1e-2).verify_claim(1.0);
        CHECK((r.residual_uu >= -1e-12 && r.residual_uu <= 1e-4));
        CHECK((r.residual_uv >= -1e-12 && r.residual_uv <= 1e-4));
    }
    SUBCASE("small t") {
        const auto r = model_d2(1e-2).verify_claim(1e-6);
        CHECK(r.puu == doctest::Approx(1.0).epsilon(1e-5));
        CHECK(r.puv < 1e-7);
        CHECK(std::abs(r.residual_uu) <= 1e-12);
        CHECK(std::abs(r.residual_uv) <= 1e-12);
    }
    CHECK_THROWS_AS(model_d2(1e-2).verify_claim(0.0), DomainError);
}

TEST_CASE("relative mass against epsilon * C_d") {
    const auto grid = linear_grid(0.5, 4.0, 15);

    SUBCASE("gap is within O(eps^2) and in fact scales as eps^3") {
        double scaled[3];
        int i = 0;
        for (double eps : {1e-2, 1e-3, 1e-4}) {
            const auto cmp = relative_mass_vs_eps_c(model_d2(eps), grid);
            CHECK_FALSE(cmp.epsilon_too_large);
            CHECK(cmp.max_gap <= eps * eps);
            scaled[i++] = cmp.max_gap / (eps * eps * eps);
        }
        // The even-toggle corrections to p_uu and p_uv enter r only at third
        // order, so gap / eps^3 is stable across two decades of eps.
        CHECK(scaled[0] < 10.0);
        CHECK(std::abs(scaled[1] / scaled[2] - 1.0) < 0.05);
        CHECK(std::abs(scaled[0] / scaled[1] - 1.0) < 0.2);
    }
    SUBCASE("r is positive and linear in epsilon to first order") {
        const auto a = relative_mass_vs_eps_c(model_d2(1e-3), grid);
        const auto b = relative_mass_vs_eps_c(model_d2(1e-4), grid);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            CHECK(a.exact.values[k] > 0.0);
            const double ratio = b.exact.values[k] / a.exact.values[k];
            CHECK((ratio >= 0.1 - 10 * 1e-3 && ratio <= 0.1 + 10 * 1e-3));
        }
        const ExplicitLamplighter half({2, 5e-4});
        const auto c = relative_mass_vs_eps_c(half, grid);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const double ratio = c.exact.values[k] / a.exact.values[k];
            CHECK((ratio >= 0.5 - 10 * 1e-3 && ratio <= 0.5 + 10 * 1e-3));
        }
    }
    SUBCASE("large epsilon is flagged") {
        const ExplicitLamplighter big({2, 1.0});
        auto long_grid = linear_grid(0.5, 30.0, 10);
        CHECK(relative_mass_vs_eps_c(big, long_grid).epsilon_too_large);
    }
}
