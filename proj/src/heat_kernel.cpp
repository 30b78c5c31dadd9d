#include "relmass/heat_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "relmass/csv.hpp"
#include "relmass/error.hpp"

namespace relmass {

namespace {
constexpr double kClampSlack = 1e-12;
constexpr std::size_t kMaxDenseVertices = 4096;
}  // namespace

SpectralDecomposition::SpectralDecomposition(SymmetricEigen eig, std::string graph_id)
    : values_(std::move(eig.values)), vectors_(std::move(eig.vectors)), graph_id_(std::move(graph_id)) {}

std::vector<double> SpectralDecomposition::eigenvector(std::size_t i) const {
    std::vector<double> f(size());
    for (std::size_t w = 0; w < size(); ++w) f[w] = vectors_(w, i);
    return f;
}

double SpectralDecomposition::heat_entry(Vertex u, Vertex v, double t) const {
    auto fu = vectors_.row(u);
    auto fv = vectors_.row(v);
    double s = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) s += std::exp(-t * values_[i]) * fu[i] * fv[i];
    return s;
}

DenseMatrix SpectralDecomposition::heat_matrix(double t) const {
    const std::size_t n = size();
    std::vector<double> decay(n);
    for (std::size_t i = 0; i < n; ++i) decay[i] = std::exp(-t * values_[i]);
    DenseMatrix h(n);
    for (std::size_t u = 0; u < n; ++u) {
        auto fu = vectors_.row(u);
        for (std::size_t v = u; v < n; ++v) {
            auto fv = vectors_.row(v);
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += decay[i] * fu[i] * fv[i];
            h(u, v) = s;
            h(v, u) = s;
        }
    }
    return h;
}

double SpectralDecomposition::reconstruction_residual(const DenseMatrix& laplacian) const {
    const std::size_t n = size();
    double worst = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
        auto fu = vectors_.row(u);
        for (std::size_t v = 0; v < n; ++v) {
            auto fv = vectors_.row(v);
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += values_[i] * fu[i] * fv[i];
            worst = std::max(worst, std::abs(laplacian(u, v) - s));
        }
    }
    return worst;
}

double SpectralDecomposition::orthonormality_residual() const {
    const std::size_t n = size();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double s = 0.0;
            for (std::size_t w = 0; w < n; ++w) s += vectors_(w, i) * vectors_(w, j);
            worst = std::max(worst, std::abs(s - (i == j ? 1.0 : 0.0)));
        }
    return worst;
}

SpectralDecomposition spectral_decompose(const WeightedGraph& graph) {
    if (graph.vertex_count() == 0) throw ValidationError("spectral_decompose: empty graph");
    if (graph.vertex_count() > kMaxDenseVertices)
        throw SizeError("spectral_decompose: dense decomposition is capped at 4096 vertices");
    if (!graph.is_connected()) throw ConnectivityError("spectral_decompose: graph is disconnected");

    SpectralDecomposition dec(eigen_symmetric(graph.laplacian()), graph.provenance());
    if (std::abs(dec.eigenvalue(0)) > 1e-10)
        throw NumericalError("spectral_decompose: smallest Laplacian eigenvalue is not zero");
    return dec;
}

double transition_prob(const SpectralDecomposition& dec, Vertex u, Vertex v, double t) {
    if (!(t >= 0.0)) throw DomainError("transition_prob: t must be nonnegative");
    if (u >= dec.size() || v >= dec.size()) throw ValidationError("transition_prob: vertex out of range");
    if (t == 0.0) return u == v ? 1.0 : 0.0;
    // Symmetric in (u, v): multiplication order inside each term is fixed.
    const double p = u <= v ? dec.heat_entry(u, v, t) : dec.heat_entry(v, u, t);
    if (p < 0.0) {
        if (p < -kClampSlack) throw NumericalError("transition_prob: negative probability " + csv::format(p));
        return 0.0;
    }
    if (p > 1.0) {
        if (p > 1.0 + kClampSlack) throw NumericalError("transition_prob: probability above one " + csv::format(p));
        return 1.0;
    }
    return p;
}

double relative_mass(const SpectralDecomposition& dec, Vertex u, Vertex v, double t) {
    if (!(t >= 0.0)) throw DomainError("relative_mass: t must be nonnegative");
    if (t == 0.0) return u == v ? 1.0 : 0.0;
    if (u == v) return 1.0;
    const double puu = transition_prob(dec, u, u, t);
    if (!(puu > 0.0)) throw NumericalError("relative_mass: p_uu(t) underflowed to zero");
    return transition_prob(dec, u, v, t) / puu;
}

void validate_curve(const CurveSamples& curve) {
    if (curve.grid.size() != curve.values.size()) throw ValidationError("curve: grid/value length mismatch");
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
        if (!std::isfinite(curve.grid[i]) || !std::isfinite(curve.values[i]))
            throw ValidationError("curve: non-finite entry");
        if (i > 0 && !(curve.grid[i] > curve.grid[i - 1]))
            throw ValidationError("curve: grid must be strictly ascending");
    }
}

void write_curve_csv(std::ostream& out, const CurveSamples& curve) {
    validate_curve(curve);
    out << "t,value\n";
    for (std::size_t i = 0; i < curve.grid.size(); ++i)
        out << csv::format(curve.grid[i]) << ',' << csv::format(curve.values[i]) << '\n';
}

CurveSamples sample_curve(const SpectralDecomposition& dec, Vertex u, Vertex v, std::span<const double> grid,
                          CurveQuantity quantity) {
    if (grid.empty()) throw ValidationError("sample_curve: empty grid");
    CurveSamples curve;
    curve.grid.assign(grid.begin(), grid.end());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] >= 0.0)) throw ValidationError("sample_curve: grid must be nonnegative");
        if (i > 0 && !(grid[i] > grid[i - 1])) throw ValidationError("sample_curve: grid must be strictly ascending");
    }
    curve.values.reserve(grid.size());
    for (double t : grid)
        curve.values.push_back(quantity == CurveQuantity::relative_mass ? relative_mass(dec, u, v, t)
                                                                         : transition_prob(dec, u, v, t));
    curve.quantity = quantity == CurveQuantity::relative_mass ? "relative_mass" : "transition_prob";
    curve.graph_id = dec.graph_id();
    curve.parameters = "u=" + std::to_string(u) + " v=" + std::to_string(v);
    return curve;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t count) {
    if (count == 0) return {};
    if (count == 1) return {lo};
    std::vector<double> g(count);
    for (std::size_t i = 0; i < count; ++i)
        g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    g.back() = hi;
    return g;
}

std::vector<double> stepped_grid(double lo, double hi, double step) {
    if (!(step > 0.0)) throw ValidationError("grid: step must be positive");
    if (hi < lo) return {};
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 0.5)) + 1;
    std::vector<double> g(count);
    for (std::size_t i = 0; i < count; ++i) g[i] = lo + step * static_cast<double>(i);
    return g;
}

}  // namespace relmass
