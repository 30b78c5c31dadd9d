#include "relmass/graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "relmass/error.hpp"

namespace relmass {

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
    const std::size_t n = a.size();
    if (b.size() != n) throw ValidationError("multiply: dimension mismatch");
    DenseMatrix c(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto ci = c.row(i);
        for (std::size_t k = 0; k < n; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            auto bk = b.row(k);
            for (std::size_t j = 0; j < n; ++j) ci[j] += aik * bk[j];
        }
    }
    return c;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.size() != b.size()) throw ValidationError("max_abs_diff: dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

// ---------------------------------------------------------------------------

WeightedGraph WeightedGraph::from_edges(std::size_t n, std::span<const Edge> edges,
                                        std::string provenance, std::vector<std::string> labels) {
    if (n > std::numeric_limits<Vertex>::max()) throw SizeError("graph: too many vertices");
    if (!labels.empty() && labels.size() != n)
        throw ValidationError("graph: label count does not match vertex count");

    WeightedGraph g;
    g.adj_.resize(n);
    for (const Edge& e : edges) {
        if (e.u >= n || e.v >= n) throw ValidationError("graph: edge endpoint out of range");
        if (e.u == e.v) throw ValidationError("graph: self-loop at vertex " + std::to_string(e.u));
        if (!(e.weight > 0.0) || !std::isfinite(e.weight))
            throw ValidationError("graph: edge weight must be positive and finite");
        g.adj_[e.u].push_back({e.v, e.weight});
        g.adj_[e.v].push_back({e.u, e.weight});
    }
    for (std::size_t u = 0; u < n; ++u) {
        auto& nb = g.adj_[u];
        std::sort(nb.begin(), nb.end(), [](const Neighbor& a, const Neighbor& b) { return a.to < b.to; });
        auto dup = std::adjacent_find(nb.begin(), nb.end(),
                                      [](const Neighbor& a, const Neighbor& b) { return a.to == b.to; });
        if (dup != nb.end())
            throw ValidationError("graph: duplicate edge " + std::to_string(u) + "-" + std::to_string(dup->to));
    }
    g.edge_count_ = edges.size();
    g.provenance_ = std::move(provenance);
    g.labels_ = std::move(labels);
    return g;
}

double WeightedGraph::weighted_degree(Vertex u) const {
    double s = 0.0;
    for (const auto& nb : adj_.at(u)) s += nb.weight;
    return s;
}

double WeightedGraph::weight(Vertex u, Vertex v) const {
    const auto& nb = adj_.at(u);
    auto it = std::lower_bound(nb.begin(), nb.end(), v, [](const Neighbor& a, Vertex x) { return a.to < x; });
    return (it != nb.end() && it->to == v) ? it->weight : 0.0;
}

std::vector<Edge> WeightedGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < adj_.size(); ++u)
        for (const auto& nb : adj_[u])
            if (u < nb.to) out.push_back({u, nb.to, nb.weight});
    return out;
}

const std::string& WeightedGraph::label(Vertex u) const {
    static const std::string empty;
    return labels_.empty() ? empty : labels_.at(u);
}

bool WeightedGraph::is_connected() const {
    const std::size_t n = adj_.size();
    if (n == 0) return true;
    std::vector<char> seen(n, 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        Vertex u = stack.back();
        stack.pop_back();
        for (const auto& nb : adj_[u]) {
            if (!seen[nb.to]) {
                seen[nb.to] = 1;
                ++count;
                stack.push_back(nb.to);
            }
        }
    }
    return count == n;
}

bool WeightedGraph::is_regular() const {
    for (const auto& nb : adj_)
        if (nb.size() != adj_.front().size()) return false;
    return true;
}

DenseMatrix WeightedGraph::laplacian() const {
    const std::size_t n = adj_.size();
    DenseMatrix lap(n);
    for (std::size_t u = 0; u < n; ++u) {
        // Diagonal summed from the same terms as the off-diagonals so each row
        // cancels to zero up to a single rounding per term.
        double diag = 0.0;
        for (const auto& nb : adj_[u]) {
            lap(u, nb.to) = -nb.weight;
            diag += nb.weight;
        }
        lap(u, u) = diag;
    }
    return lap;
}

void write_edge_list(std::ostream& out, const WeightedGraph& g) {
    out << "# n " << g.vertex_count() << '\n';
    if (!g.provenance().empty()) out << "# provenance " << g.provenance() << '\n';
    std::ostringstream line;
    line.precision(17);
    for (const Edge& e : g.edges()) {
        line.str({});
        line << e.u << ' ' << e.v << ' ' << e.weight << '\n';
        out << line.str();
    }
}

WeightedGraph read_edge_list(std::istream& in) {
    std::string line;
    std::size_t n = 0;
    bool have_n = false;
    std::string provenance;
    std::vector<Edge> edges;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.front() == '#') {
            std::istringstream hs(line.substr(1));
            std::string key;
            hs >> key;
            if (key == "n") {
                hs >> n;
                have_n = true;
            } else if (key == "provenance") {
                std::getline(hs >> std::ws, provenance);
            }
            continue;
        }
        std::istringstream ls(line);
        unsigned long u = 0, v = 0;
        double w = 0.0;
        if (!(ls >> u >> v >> w)) throw ValidationError("edge list: malformed line '" + line + "'");
        edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), w});
    }
    if (!have_n) throw ValidationError("edge list: missing '# n' header");
    return WeightedGraph::from_edges(n, edges, provenance);
}

// ---------------------------------------------------------------------------

GroupTable::GroupTable(std::size_t order, std::vector<Element> table)
    : order_(order), mul_(std::move(table)), inv_(order) {
    if (order == 0) throw ValidationError("group: empty");
    if (mul_.size() != order * order) throw ValidationError("group: table size mismatch");

    std::vector<char> seen(order);
    for (std::size_t a = 0; a < order; ++a) {
        std::fill(seen.begin(), seen.end(), 0);
        for (std::size_t b = 0; b < order; ++b) {
            Element x = mul_[a * order + b];
            if (x >= order || seen[x]) throw ValidationError("group: table is not a Latin square");
            seen[x] = 1;
        }
    }
    for (std::size_t b = 0; b < order; ++b) {
        std::fill(seen.begin(), seen.end(), 0);
        for (std::size_t a = 0; a < order; ++a) {
            Element x = mul_[a * order + b];
            if (seen[x]) throw ValidationError("group: table is not a Latin square");
            seen[x] = 1;
        }
    }

    bool found = false;
    for (Element e = 0; e < order && !found; ++e) {
        bool ok = true;
        for (Element a = 0; a < order && ok; ++a) ok = mul(e, a) == a && mul(a, e) == a;
        if (ok) {
            identity_ = e;
            found = true;
        }
    }
    if (!found) throw ValidationError("group: no identity element");

    for (Element a = 0; a < order; ++a) {
        for (Element b = 0; b < order; ++b) {
            if (mul(a, b) == identity_) {
                if (mul(b, a) != identity_) throw ValidationError("group: inverse is not two-sided");
                inv_[a] = b;
                break;
            }
        }
    }
}

GroupTable GroupTable::cyclic(std::size_t n) {
    std::vector<Element> mul(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) mul[a * n + b] = static_cast<Element>((a + b) % n);
    return GroupTable(n, std::move(mul));
}

GroupTable GroupTable::elementary_abelian2(unsigned d) {
    if (d > 12) throw SizeError("Z_2^d table: d too large");
    const std::size_t n = std::size_t{1} << d;
    std::vector<Element> mul(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) mul[a * n + b] = static_cast<Element>(a ^ b);
    return GroupTable(n, std::move(mul));
}

GroupTable GroupTable::direct_product(const GroupTable& g, const GroupTable& k) {
    const std::size_t ng = g.order(), nk = k.order(), n = ng * nk;
    std::vector<Element> mul(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            const auto ga = static_cast<Element>(a / nk), ka = static_cast<Element>(a % nk);
            const auto gb = static_cast<Element>(b / nk), kb = static_cast<Element>(b % nk);
            mul[a * n + b] = static_cast<Element>(g.mul(ga, gb) * nk + k.mul(ka, kb));
        }
    return GroupTable(n, std::move(mul));
}

void validate_generators(const GroupTable& group, const WeightedGeneratorSet& gens) {
    std::vector<double> w(group.order(), 0.0);
    for (const auto& g : gens) {
        if (g.element >= group.order()) throw ValidationError("generators: element out of range");
        if (g.element == group.identity()) throw ValidationError("generators: identity is not allowed");
        if (!(g.weight > 0.0) || !std::isfinite(g.weight))
            throw ValidationError("generators: weights must be positive and finite");
        if (w[g.element] != 0.0) throw ValidationError("generators: repeated element");
        w[g.element] = g.weight;
    }
    for (const auto& g : gens) {
        if (w[group.inv(g.element)] != g.weight)
            throw ValidationError("generators: set is not closed under inverses with matching weights (element " +
                                  std::to_string(g.element) + ")");
    }
}

namespace {

bool generates_group(const GroupTable& group, const WeightedGeneratorSet& gens) {
    std::vector<char> seen(group.order(), 0);
    std::vector<Element> stack{group.identity()};
    seen[group.identity()] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        Element x = stack.back();
        stack.pop_back();
        for (const auto& g : gens) {
            Element y = group.mul(x, g.element);
            if (!seen[y]) {
                seen[y] = 1;
                ++count;
                stack.push_back(y);
            }
        }
    }
    return count == group.order();
}

}  // namespace

WeightedGraph build_cayley(const GroupTable& group, const WeightedGeneratorSet& gens) {
    validate_generators(group, gens);
    if (!generates_group(group, gens)) throw ConnectivityError("cayley: generators do not generate the group");

    // Each undirected edge {x, xg} is reached from x via g and from xg via
    // g^-1; keep it once, from its smaller endpoint.
    std::vector<Edge> edges;
    for (Element x = 0; x < group.order(); ++x)
        for (const auto& g : gens) {
            Element y = group.mul(x, g.element);
            if (x < y) edges.push_back({x, y, g.weight});
        }
    return WeightedGraph::from_edges(group.order(), edges, "cayley order=" + std::to_string(group.order()));
}

WeightedGraph build_hypercube(unsigned d) {
    if (d < 1 || d > 20) throw SizeError("hypercube: d must be in [1, 20]");
    const std::size_t n = std::size_t{1} << d;
    const double w = 1.0 / d;
    std::vector<Edge> edges;
    edges.reserve(n * d / 2);
    for (std::size_t x = 0; x < n; ++x)
        for (unsigned i = 0; i < d; ++i) {
            std::size_t y = x ^ (std::size_t{1} << i);
            if (x < y) edges.push_back({static_cast<Vertex>(x), static_cast<Vertex>(y), w});
        }
    return WeightedGraph::from_edges(n, edges, "hypercube d=" + std::to_string(d));
}

WeightedGraph build_pyramid_cube() {
    using namespace pyramid_cube;
    std::vector<Edge> edges;
    const double w = 0.25;
    for (Vertex i = 0; i < 4; ++i) {
        const Vertex t = top_face + i, tn = top_face + (i + 1) % 4;
        const Vertex b = bottom_face + i, bn = bottom_face + (i + 1) % 4;
        edges.push_back({apex_top, t, w});
        edges.push_back({t, tn, w});
        edges.push_back({t, b, w});
        edges.push_back({b, bn, w});
        edges.push_back({b, apex_bottom, w});
    }
    std::vector<std::string> labels{"apex_top", "t1", "t2", "t3", "t4", "b1", "b2", "b3", "b4", "apex_bottom"};
    return WeightedGraph::from_edges(10, edges, "pyramid-cube", std::move(labels));
}

WeightedGraph build_cycle(std::size_t n) {
    if (n < 3) throw SizeError("cycle: n must be at least 3");
    auto g = build_cayley(GroupTable::cyclic(n), {{1, 0.5}, {static_cast<Element>(n - 1), 0.5}});
    return WeightedGraph::from_edges(n, g.edges(), "cycle n=" + std::to_string(n));
}

WeightedGraph build_complete(std::size_t n) {
    if (n < 2) throw SizeError("complete graph: n must be at least 2");
    const double w = 1.0 / static_cast<double>(n - 1);
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v, w});
    return WeightedGraph::from_edges(n, edges, "complete n=" + std::to_string(n));
}

// ---------------------------------------------------------------------------

namespace {

std::size_t integral_weight(double w) {
    if (!(w >= 1.0) || w != std::floor(w) || w > 1e6)
        throw ValidationError("blowup: generator weights must be positive integers");
    return static_cast<std::size_t>(w);
}

}  // namespace

std::size_t blowup_degree(const WeightedGeneratorSet& gens, std::size_t clique_size) {
    std::size_t deg = clique_size - 1;
    for (const auto& g : gens) deg += integral_weight(g.weight);
    return deg;
}

std::size_t blowup_min_clique_size(const WeightedGeneratorSet& gens) {
    std::size_t wmax = 0;
    for (const auto& g : gens) wmax = std::max(wmax, integral_weight(g.weight));
    return 2 * wmax + 2;
}

WeightedGraph clique_blowup(const BlowupParams& params) {
    const GroupTable& group = params.group;
    const std::size_t cs = params.clique_size;
    validate_generators(group, params.gens);
    if (!generates_group(group, params.gens)) throw ConnectivityError("blowup: generators do not generate the group");
    if (cs < blowup_min_clique_size(params.gens))
        throw ValidationError("blowup: clique size N=" + std::to_string(cs) + " below simplicity guard " +
                              std::to_string(blowup_min_clique_size(params.gens)));
    const std::size_t n = group.order() * cs;
    if (n > std::numeric_limits<Vertex>::max()) throw SizeError("blowup: too many vertices");

    const std::size_t deg = blowup_degree(params.gens, cs);
    const double w = 1.0 / static_cast<double>(deg);
    auto index = [cs](std::size_t u, std::size_t i) { return static_cast<Vertex>(u * cs + i % cs); };

    std::vector<Edge> edges;
    for (std::size_t u = 0; u < group.order(); ++u)
        for (std::size_t i = 0; i < cs; ++i)
            for (std::size_t k = i + 1; k < cs; ++k) edges.push_back({index(u, i), index(u, k), w});

    for (const auto& g : params.gens) {
        const Element inv = group.inv(g.element);
        const std::size_t mult = integral_weight(g.weight);
        if (inv != g.element) {
            // The pair {g, g^-1} is handled once, from its smaller element:
            // offsets +1..+w for g, which appear as -1..-w seen from g^-1.
            if (inv < g.element) continue;
            for (std::size_t u = 0; u < group.order(); ++u) {
                const std::size_t ug = group.mul(static_cast<Element>(u), g.element);
                for (std::size_t i = 0; i < cs; ++i)
                    for (std::size_t j = 1; j <= mult; ++j) edges.push_back({index(u, i), index(ug, i + j), w});
            }
            continue;
        }
        // Involution: a symmetric offset set of size w, {+-1..+-w/2} plus N/2
        // when w is odd.
        std::vector<std::size_t> offsets;
        for (std::size_t j = 1; j <= mult / 2; ++j) {
            offsets.push_back(j);
            offsets.push_back(cs - j);
        }
        if (mult % 2 == 1) {
            if (cs % 2 != 0)
                throw ValidationError("blowup: an involution with odd weight needs an even clique size");
            offsets.push_back(cs / 2);
        }
        for (std::size_t u = 0; u < group.order(); ++u) {
            const std::size_t ug = group.mul(static_cast<Element>(u), g.element);
            if (ug < u) continue;
            for (std::size_t i = 0; i < cs; ++i)
                for (std::size_t o : offsets) edges.push_back({index(u, i), index(ug, i + o), w});
        }
    }
    return WeightedGraph::from_edges(n, edges,
                                     "clique-blowup order=" + std::to_string(group.order()) +
                                         " N=" + std::to_string(cs) + " deg=" + std::to_string(deg));
}

}  // namespace relmass
