#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "doctest.h"
#include "relmass/error.hpp"
#include "relmass/graph.hpp"

using namespace relmass;

namespace {

double max_row_sum(const WeightedGraph& g) {
    const DenseMatrix lap = g.laplacian();
    double worst = 0.0;
    for (std::size_t u = 0; u < lap.size(); ++u) {
        double s = 0.0;
        for (double x : lap.row(u)) s += x;
        worst = std::max(worst, std::abs(s));
    }
    return worst;
}

bool weights_symmetric(const WeightedGraph& g) {
    for (Vertex u = 0; u < g.vertex_count(); ++u)
        for (const auto& nb : g.neighbors(u))
            if (g.weight(nb.to, u) != nb.weight || !(nb.weight > 0.0)) return false;
    return true;
}

void check_core_invariants(const WeightedGraph& g) {
    CHECK(weights_symmetric(g));
    CHECK(max_row_sum(g) <= 1e-14);
    CHECK(g.is_connected());
}

}  // namespace

TEST_CASE("hypercube structure") {
    SUBCASE("d = 1 is a single unit edge") {
        auto g = build_hypercube(1);
        CHECK(g.vertex_count() == 2);
        CHECK(g.edge_count() == 1);
        CHECK(g.weight(0, 1) == 1.0);
    }
    SUBCASE("d = 3") {
        auto g = build_hypercube(3);
        CHECK(g.vertex_count() == 8);
        CHECK(g.edge_count() == 12);
        const auto lap = g.laplacian();
        for (Vertex u = 0; u < 8; ++u) {
            CHECK(g.degree(u) == 3);
            CHECK(lap(u, u) == doctest::Approx(1.0).epsilon(1e-15));
            for (const auto& nb : g.neighbors(u)) CHECK(nb.weight == 1.0 / 3.0);
        }
        check_core_invariants(g);
    }
    SUBCASE("d = 5 adjacency is Hamming distance one") {
        auto g = build_hypercube(5);
        CHECK(g.weight(0, 7) == 0.0);
        CHECK(g.weight(0, 4) == doctest::Approx(0.2));
        check_core_invariants(g);
    }
    CHECK_THROWS_AS(build_hypercube(0), SizeError);
    CHECK_THROWS_AS(build_hypercube(21), SizeError);
}

TEST_CASE("pyramid cube") {
    auto g = build_pyramid_cube();
    CHECK(g.vertex_count() == 10);
    CHECK(g.edge_count() == 20);
    CHECK(g.is_regular());
    const auto lap = g.laplacian();
    for (Vertex u = 0; u < 10; ++u) {
        CHECK(g.degree(u) == 4);
        CHECK(lap(u, u) == 1.0);
    }
    using namespace pyramid_cube;
    CHECK(g.weight(apex_top, top_face) == 0.25);
    CHECK(g.weight(apex_top, bottom_face) == 0.0);
    CHECK(g.weight(apex_bottom, bottom_face + 3) == 0.25);
    CHECK(g.label(apex_top) == "apex_top");
    check_core_invariants(g);
}

TEST_CASE("group tables") {
    auto z6 = GroupTable::cyclic(6);
    CHECK(z6.identity() == 0);
    for (Element g = 0; g < 6; ++g) CHECK(z6.mul(g, z6.inv(g)) == z6.identity());

    auto prod = GroupTable::direct_product(GroupTable::cyclic(2), GroupTable::cyclic(4));
    CHECK(prod.order() == 8);
    for (Element g = 0; g < 8; ++g) CHECK(prod.mul(g, prod.inv(g)) == prod.identity());

    // Row repeats an element.
    CHECK_THROWS_AS(GroupTable(2, {0, 0, 1, 0}), ValidationError);
    // Latin square without identity.
    CHECK_THROWS_AS(GroupTable(3, {0, 2, 1, 2, 1, 0, 1, 0, 2}), ValidationError);
}

TEST_CASE("cayley graphs") {
    SUBCASE("Z_6 with +-1 is the 6-cycle") {
        auto g = build_cayley(GroupTable::cyclic(6), {{1, 1.0}, {5, 1.0}});
        CHECK(g.edge_count() == 6);
        for (Vertex u = 0; u < 6; ++u) {
            CHECK(g.degree(u) == 2);
            CHECK(g.weight(u, (u + 1) % 6) == 1.0);
        }
        check_core_invariants(g);
    }
    SUBCASE("Z_2^d with unit generators is the hypercube, identically indexed") {
        for (unsigned d : {1u, 2u, 4u, 6u}) {
            WeightedGeneratorSet gens;
            for (unsigned i = 0; i < d; ++i) gens.push_back({1u << i, 1.0 / d});
            auto cay = build_cayley(GroupTable::elementary_abelian2(d), gens);
            auto cube = build_hypercube(d);
            auto a = cay.edges(), b = cube.edges();
            REQUIRE(a.size() == b.size());
            for (std::size_t i = 0; i < a.size(); ++i) {
                CHECK(a[i].u == b[i].u);
                CHECK(a[i].v == b[i].v);
                CHECK(a[i].weight == b[i].weight);
            }
        }
    }
    SUBCASE("asymmetric generators are rejected") {
        CHECK_THROWS_AS(build_cayley(GroupTable::cyclic(4), {{1, 1.0}}), ValidationError);
        CHECK_THROWS_AS(build_cayley(GroupTable::cyclic(4), {{1, 1.0}, {3, 2.0}}), ValidationError);
        CHECK_THROWS_AS(build_cayley(GroupTable::cyclic(4), {{0, 1.0}}), ValidationError);
    }
    SUBCASE("non-generating sets are disconnected") {
        CHECK_THROWS_AS(build_cayley(GroupTable::cyclic(6), {{2, 1.0}, {4, 1.0}}), ConnectivityError);
    }
}

TEST_CASE("cayley graphs are vertex-transitive under left multiplication") {
    struct Case {
        GroupTable group;
        WeightedGeneratorSet gens;
    };
    std::vector<Case> cases;
    cases.push_back({GroupTable::cyclic(12), {{1, 0.5}, {11, 0.5}, {3, 0.25}, {9, 0.25}, {6, 0.125}}});
    auto prod = GroupTable::direct_product(GroupTable::cyclic(2), GroupTable::cyclic(4));
    // (1,0), (0,1), (0,3)
    cases.push_back({prod, {{4, 2.0}, {1, 1.0}, {3, 1.0}}});

    for (const auto& c : cases) {
        auto g = build_cayley(c.group, c.gens);
        check_core_invariants(g);
        for (Element h = 0; h < c.group.order(); ++h)
            for (const auto& e : g.edges())
                CHECK(g.weight(c.group.mul(h, e.u), c.group.mul(h, e.v)) == e.weight);
    }
}

TEST_CASE("clique blowup") {
    const auto z6 = GroupTable::cyclic(6);
    const WeightedGeneratorSet gens{{1, 2.0}, {5, 2.0}, {2, 1.0}, {4, 1.0}};

    SUBCASE("Z_6, N = 16: size, degree, simplicity, projection counts") {
        const std::size_t cs = 16;
        auto h = clique_blowup({cs, z6, gens});
        CHECK(h.vertex_count() == 6 * cs);
        CHECK(blowup_degree(gens, cs) == 21);
        CHECK(h.is_regular());
        CHECK(h.degree(0) == 21);
        for (const auto& e : h.edges()) CHECK(e.weight == 1.0 / 21.0);
        check_core_invariants(h);

        // H-edges from (u, i) projecting to the G-edge (u, u*g) number w(g);
        // the rest stay inside the clique.
        for (Vertex x = 0; x < h.vertex_count(); ++x) {
            std::map<std::size_t, int> by_target;
            for (const auto& nb : h.neighbors(x)) ++by_target[nb.to / cs];
            const std::size_t u = x / cs;
            CHECK(by_target[u] == static_cast<int>(cs - 1));
            for (const auto& g : gens) CHECK(by_target[z6.mul(u, g.element)] == static_cast<int>(g.weight));
        }
    }
    SUBCASE("involutions with odd weight use the antipodal offset") {
        const auto z4 = GroupTable::cyclic(4);
        const WeightedGeneratorSet inv_gens{{1, 1.0}, {3, 1.0}, {2, 3.0}};
        CHECK(blowup_min_clique_size(inv_gens) == 8);
        auto h = clique_blowup({8, z4, inv_gens});
        CHECK(h.is_regular());
        CHECK(h.degree(0) == 7 + 1 + 1 + 3);
        for (Vertex x = 0; x < h.vertex_count(); ++x) {
            int across = 0;
            for (const auto& nb : h.neighbors(x)) across += (nb.to / 8 == (x / 8 + 2) % 4);
            CHECK(across == 3);
        }
        CHECK_THROWS_AS(clique_blowup({9, z4, inv_gens}), ValidationError);
    }
    SUBCASE("guard and weight validation") {
        CHECK_THROWS_AS(clique_blowup({2, z6, gens}), ValidationError);
        CHECK_THROWS_AS(clique_blowup({5, z6, gens}), ValidationError);
        CHECK_NOTHROW(clique_blowup({6, z6, gens}));
        CHECK_THROWS_AS(clique_blowup({16, z6, {{1, 1.5}, {5, 1.5}}}), ValidationError);
    }
}

TEST_CASE("edge list text format round-trips") {
    for (const auto& g : {build_pyramid_cube(), build_hypercube(4),
                          build_cayley(GroupTable::cyclic(7), {{1, 1.0 / 3.0}, {6, 1.0 / 3.0}})}) {
        std::stringstream ss;
        write_edge_list(ss, g);
        CHECK(ss.str().rfind("# n ", 0) == 0);
        auto back = read_edge_list(ss);
        CHECK(back.vertex_count() == g.vertex_count());
        CHECK(back.provenance() == g.provenance());
        auto a = g.edges(), b = back.edges();
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].u == b[i].u);
            CHECK(a[i].v == b[i].v);
            CHECK(a[i].weight == b[i].weight);
        }
    }
    std::stringstream bad("0 1 0.5\n");
    CHECK_THROWS_AS(read_edge_list(bad), ValidationError);
}

TEST_CASE("graph construction rejects malformed edges") {
    std::vector<Edge> loop{{0, 0, 1.0}};
    CHECK_THROWS_AS(WeightedGraph::from_edges(2, loop), ValidationError);
    std::vector<Edge> dup{{0, 1, 1.0}, {1, 0, 1.0}};
    CHECK_THROWS_AS(WeightedGraph::from_edges(2, dup), ValidationError);
    std::vector<Edge> neg{{0, 1, -1.0}};
    CHECK_THROWS_AS(WeightedGraph::from_edges(2, neg), ValidationError);
    std::vector<Edge> oob{{0, 2, 1.0}};
    CHECK_THROWS_AS(WeightedGraph::from_edges(2, oob), ValidationError);
}
