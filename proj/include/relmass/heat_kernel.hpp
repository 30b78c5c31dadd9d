#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "relmass/eigen.hpp"
#include "relmass/graph.hpp"

namespace relmass {

// Spectral form of a connected graph's Laplacian: H_t = sum_i e^{-t lambda_i} f_i f_i^T.
class SpectralDecomposition {
  public:
    SpectralDecomposition(SymmetricEigen eig, std::string graph_id);

    std::size_t size() const noexcept { return values_.size(); }
    const std::vector<double>& eigenvalues() const noexcept { return values_; }
    double eigenvalue(std::size_t i) const { return values_.at(i); }
    // Component w of eigenvector i.
    double eigenvector(Vertex w, std::size_t i) const { return vectors_(w, i); }
    std::vector<double> eigenvector(std::size_t i) const;
    const std::string& graph_id() const noexcept { return graph_id_; }

    // Entry (u, v) of H_t without clamping.
    double heat_entry(Vertex u, Vertex v, double t) const;
    DenseMatrix heat_matrix(double t) const;

    // max |L - sum_i lambda_i f_i f_i^T|
    double reconstruction_residual(const DenseMatrix& laplacian) const;
    // max |f_i . f_j - delta_ij|
    double orthonormality_residual() const;

  private:
    std::vector<double> values_;
    DenseMatrix vectors_;
    std::string graph_id_;
};

// Throws ConnectivityError for disconnected graphs and SizeError above 4096
// vertices.
SpectralDecomposition spectral_decompose(const WeightedGraph& graph);

// p_{u,v}(t). Values within 1e-12 outside [0, 1] are clamped; larger
// excursions throw NumericalError. DomainError for t < 0.
double transition_prob(const SpectralDecomposition& dec, Vertex u, Vertex v, double t);

// p_{u,v}(t) / p_{u,u}(t); at t = 0 returns 1 for u == v and 0 otherwise.
double relative_mass(const SpectralDecomposition& dec, Vertex u, Vertex v, double t);

struct CurveSamples {
    std::vector<double> grid;
    std::vector<double> values;
    std::string quantity;
    std::string graph_id;
    std::string parameters;
};

// Throws ValidationError unless grid is strictly ascending and finite, and
// values has matching length and finite entries.
void validate_curve(const CurveSamples& curve);

// Header `t,value` and one row per grid point, 17 significant digits.
void write_curve_csv(std::ostream& out, const CurveSamples& curve);

enum class CurveQuantity { relative_mass, transition_prob };

CurveSamples sample_curve(const SpectralDecomposition& dec, Vertex u, Vertex v, std::span<const double> grid,
                          CurveQuantity quantity = CurveQuantity::relative_mass);

// `count` points evenly spaced over [lo, hi], both ends included.
std::vector<double> linear_grid(double lo, double hi, std::size_t count);

// lo, lo + step, ... up to hi (inclusive within half a step).
std::vector<double> stepped_grid(double lo, double hi, double step);

}  // namespace relmass
