#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "relmass/dense.hpp"

namespace relmass {

using Vertex = std::uint32_t;

struct Edge {
    Vertex u;
    Vertex v;
    double weight;
};

struct Neighbor {
    Vertex to;
    double weight;
};

// Undirected graph with strictly positive symmetric edge weights and no
// self-loops. Immutable once constructed; build through from_edges().
class WeightedGraph {
  public:
    WeightedGraph() = default;

    // Throws ValidationError on self-loops, nonpositive/non-finite weights,
    // out-of-range endpoints or duplicate edges.
    static WeightedGraph from_edges(std::size_t n, std::span<const Edge> edges,
                                    std::string provenance = {},
                                    std::vector<std::string> labels = {});

    std::size_t vertex_count() const noexcept { return adj_.size(); }
    std::size_t edge_count() const noexcept { return edge_count_; }

    std::span<const Neighbor> neighbors(Vertex u) const { return adj_.at(u); }
    std::size_t degree(Vertex u) const { return adj_.at(u).size(); }
    double weighted_degree(Vertex u) const;

    // 0 when u and v are not adjacent.
    double weight(Vertex u, Vertex v) const;

    // Each undirected edge once, u < v, sorted.
    std::vector<Edge> edges() const;

    const std::string& provenance() const noexcept { return provenance_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::string& label(Vertex u) const;

    bool is_connected() const;
    bool is_regular() const;

    // L[u][v] = -w(u,v), L[u][u] = sum_v w(u,v). Rows sum to zero.
    DenseMatrix laplacian() const;

  private:
    std::vector<std::vector<Neighbor>> adj_;
    std::size_t edge_count_ = 0;
    std::string provenance_;
    std::vector<std::string> labels_;
};

// Edge-list text format: '#' header lines (n, provenance), then `u v w` per edge.
void write_edge_list(std::ostream& out, const WeightedGraph& g);
WeightedGraph read_edge_list(std::istream& in);

// ---------------------------------------------------------------------------
// Finite groups and Cayley graphs
// ---------------------------------------------------------------------------

using Element = std::uint32_t;

class GroupTable {
  public:
    // Validates that mul is a Latin square with a two-sided identity and
    // derives the inverse map. Throws ValidationError otherwise.
    GroupTable(std::size_t order, std::vector<Element> mul);

    static GroupTable cyclic(std::size_t n);
    // Z_2^d with elements indexed by their bit pattern (group law = xor).
    static GroupTable elementary_abelian2(unsigned d);
    // G x K with element (g, k) at index g * K.order() + k.
    static GroupTable direct_product(const GroupTable& g, const GroupTable& k);

    std::size_t order() const noexcept { return order_; }
    Element identity() const noexcept { return identity_; }
    Element mul(Element a, Element b) const noexcept { return mul_[a * order_ + b]; }
    Element inv(Element a) const noexcept { return inv_[a]; }

  private:
    std::size_t order_;
    std::vector<Element> mul_;
    std::vector<Element> inv_;
    Element identity_ = 0;
};

struct WeightedGenerator {
    Element element;
    double weight;
};

using WeightedGeneratorSet = std::vector<WeightedGenerator>;

// Throws ValidationError unless the set excludes the identity, has no
// repeated elements, positive weights, and w(g) == w(g^-1) for every g.
void validate_generators(const GroupTable& group, const WeightedGeneratorSet& gens);

// Edge (x, x*g) with weight w(g). Throws ConnectivityError if gens do not
// generate the group.
WeightedGraph build_cayley(const GroupTable& group, const WeightedGeneratorSet& gens);

// Vertices {0,1}^d indexed by bit value; edges between Hamming neighbours,
// weight 1/d. 1 <= d <= 20.
WeightedGraph build_hypercube(unsigned d);

namespace pyramid_cube {
inline constexpr Vertex apex_top = 0;
inline constexpr Vertex top_face = 1;     // t1..t4 = 1..4
inline constexpr Vertex bottom_face = 5;  // b1..b4 = 5..8
inline constexpr Vertex apex_bottom = 9;
}  // namespace pyramid_cube

// Cube with a square pyramid on the top and bottom faces: 10 vertices,
// 4-regular, weight 1/4. Order: apex_top, t1..t4, b1..b4, apex_bottom.
WeightedGraph build_pyramid_cube();

WeightedGraph build_cycle(std::size_t n);
WeightedGraph build_complete(std::size_t n);

// ---------------------------------------------------------------------------
// Clique blowup of an integer-weighted Cayley graph
// ---------------------------------------------------------------------------

struct BlowupParams {
    std::size_t clique_size;  // N
    GroupTable group;
    WeightedGeneratorSet gens;  // integral weights
};

// N - 1 + sum_g w(g); throws ValidationError on non-integral weights.
std::size_t blowup_degree(const WeightedGeneratorSet& gens, std::size_t clique_size);

// Smallest N accepted by clique_blowup: 2 * max_g w(g) + 2.
std::size_t blowup_min_clique_size(const WeightedGeneratorSet& gens);

// Replaces every group element u by the clique {(u, i) : i in Z_N} and every
// G-edge (u, u*g) by w(g) perfect matchings (u, i) -- (u*g, i + j). Vertex
// (u, i) has index u * N + i. The result is simple and deg(H)-regular with
// all weights 1/deg(H).
WeightedGraph clique_blowup(const BlowupParams& params);

}  // namespace relmass
