#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace relmass {

// Row-major square matrix of doubles.
class DenseMatrix {
  public:
    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

    std::size_t size() const noexcept { return n_; }

    double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * n_ + c]; }
    double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * n_ + c]; }

    std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * n_, n_}; }
    std::span<const double> row(std::size_t r) const noexcept { return {data_.data() + r * n_, n_}; }

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

  private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);

// max_ij |a_ij - b_ij|
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);

}  // namespace relmass
