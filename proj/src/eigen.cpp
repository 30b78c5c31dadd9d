#include "relmass/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "relmass/error.hpp"

namespace relmass {

namespace {

// Work matrix stored transposed: cell(c, r) holds element (r, c) of the
// classical column-oriented algorithm, so every inner loop over a row index
// walks contiguous memory.
class Transposed {
  public:
    explicit Transposed(DenseMatrix& m) : m_(m) {}
    double& operator()(std::size_t r, std::size_t c) noexcept { return m_(c, r); }
    double* column(std::size_t c) noexcept { return m_.row(c).data(); }

  private:
    DenseMatrix& m_;
};

void tridiagonalize(Transposed v, std::size_t n, std::vector<double>& d, std::vector<double>& e) {
    for (std::size_t j = 0; j < n; ++j) d[j] = v(n - 1, j);

    for (std::size_t i = n - 1; i > 0; --i) {
        double scale = 0.0;
        double h = 0.0;
        for (std::size_t k = 0; k < i; ++k) scale += std::abs(d[k]);
        if (scale == 0.0) {
            e[i] = d[i - 1];
            for (std::size_t j = 0; j < i; ++j) {
                d[j] = v(i - 1, j);
                v(i, j) = 0.0;
                v(j, i) = 0.0;
            }
        } else {
            for (std::size_t k = 0; k < i; ++k) {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            double f = d[i - 1];
            double g = std::sqrt(h);
            if (f > 0) g = -g;
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            std::fill(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(i), 0.0);

            for (std::size_t j = 0; j < i; ++j) {
                f = d[j];
                v(j, i) = f;
                const double* col = v.column(j);
                g = e[j] + col[j] * f;
                for (std::size_t k = j + 1; k < i; ++k) {
                    g += col[k] * d[k];
                    e[k] += col[k] * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for (std::size_t j = 0; j < i; ++j) {
                e[j] /= h;
                f += e[j] * d[j];
            }
            const double hh = f / (h + h);
            for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
            for (std::size_t j = 0; j < i; ++j) {
                f = d[j];
                g = e[j];
                double* col = v.column(j);
                for (std::size_t k = j; k < i; ++k) col[k] -= (f * e[k] + g * d[k]);
                d[j] = v(i - 1, j);
                v(i, j) = 0.0;
            }
        }
        d[i] = h;
    }

    // Accumulate the transformations.
    for (std::size_t i = 0; i + 1 < n; ++i) {
        v(n - 1, i) = v(i, i);
        v(i, i) = 1.0;
        const double h = d[i + 1];
        double* next = v.column(i + 1);
        if (h != 0.0) {
            for (std::size_t k = 0; k <= i; ++k) d[k] = next[k] / h;
            for (std::size_t j = 0; j <= i; ++j) {
                double* col = v.column(j);
                double g = 0.0;
                for (std::size_t k = 0; k <= i; ++k) g += next[k] * col[k];
                for (std::size_t k = 0; k <= i; ++k) col[k] -= g * d[k];
            }
        }
        for (std::size_t k = 0; k <= i; ++k) next[k] = 0.0;
    }
    for (std::size_t j = 0; j < n; ++j) {
        d[j] = v(n - 1, j);
        v(n - 1, j) = 0.0;
    }
    v(n - 1, n - 1) = 1.0;
    e[0] = 0.0;
}

void ql_implicit(Transposed v, std::size_t n, std::vector<double>& d, std::vector<double>& e) {
    for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;

    double f = 0.0;
    double tst1 = 0.0;
    const double eps = std::ldexp(1.0, -52);
    constexpr int max_iter = 100;

    for (std::size_t l = 0; l < n; ++l) {
        tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
        std::size_t m = l;
        while (m < n) {
            if (std::abs(e[m]) <= eps * tst1) break;
            ++m;
        }
        if (m == n) m = n - 1;  // e[n-1] == 0, so the scan always stops here

        if (m > l) {
            int iter = 0;
            do {
                if (++iter > max_iter) throw NumericalError("eigen_symmetric: QL iteration did not converge");

                double g = d[l];
                double p = (d[l + 1] - g) / (2.0 * e[l]);
                double r = std::hypot(p, 1.0);
                if (p < 0) r = -r;
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                const double dl1 = d[l + 1];
                double h = g - d[l];
                for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
                f += h;

                p = d[m];
                double c = 1.0, c2 = 1.0, c3 = 1.0;
                const double el1 = e[l + 1];
                double s = 0.0, s2 = 0.0;
                for (std::size_t i = m; i-- > l;) {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = std::hypot(p, e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);

                    double* vi = v.column(i);
                    double* vi1 = v.column(i + 1);
                    for (std::size_t k = 0; k < n; ++k) {
                        const double t = vi1[k];
                        vi1[k] = s * vi[k] + c * t;
                        vi[k] = c * vi[k] - s * t;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
            } while (std::abs(e[l]) > eps * tst1);
        }
        d[l] += f;
        e[l] = 0.0;
    }
}

// Sorts eigenvalues ascending; work holds eigenvectors as rows.
SymmetricEigen sorted_result(std::vector<double> d, const DenseMatrix& work) {
    const std::size_t n = d.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

    SymmetricEigen out;
    out.values.resize(n);
    out.vectors = DenseMatrix(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.values[i] = d[order[i]];
        auto src = work.row(order[i]);
        for (std::size_t w = 0; w < n; ++w) out.vectors(w, i) = src[w];
    }
    return out;
}

void require_symmetric(const DenseMatrix& a) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (a(i, j) != a(j, i)) throw ValidationError("eigen_symmetric: matrix is not symmetric");
}

}  // namespace

SymmetricEigen eigen_symmetric(const DenseMatrix& a) {
    require_symmetric(a);
    const std::size_t n = a.size();
    if (n == 0) return {};
    if (n == 1) return {{a(0, 0)}, DenseMatrix::identity(1)};

    DenseMatrix work = a;  // symmetric, so already its own transpose
    std::vector<double> d(n), e(n);
    tridiagonalize(Transposed(work), n, d, e);
    ql_implicit(Transposed(work), n, d, e);
    // Row c of work now holds eigenvector c.
    return sorted_result(std::move(d), work);
}

SymmetricEigen eigen_symmetric_jacobi(const DenseMatrix& a, double tol, int max_sweeps) {
    require_symmetric(a);
    const std::size_t n = a.size();
    DenseMatrix m = a;
    DenseMatrix v = DenseMatrix::identity(n);  // row k = eigenvector k at the end

    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(m(i, j)));

    for (int sweep = 0;; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off = std::max(off, std::abs(m(i, j)));
        if (off <= tol * std::max(scale, 1e-300)) break;
        if (sweep >= max_sweeps) throw NumericalError("eigen_symmetric_jacobi: no convergence");

        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = m(p, q);
                if (apq == 0.0) continue;
                const double theta = (m(q, q) - m(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(theta, 1.0));
                const double c = 1.0 / std::hypot(t, 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double mkp = m(k, p), mkq = m(k, q);
                    m(k, p) = c * mkp - s * mkq;
                    m(k, q) = s * mkp + c * mkq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double mpk = m(p, k), mqk = m(q, k);
                    m(p, k) = c * mpk - s * mqk;
                    m(q, k) = s * mpk + c * mqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vpk = v(p, k), vqk = v(q, k);
                    v(p, k) = c * vpk - s * vqk;
                    v(q, k) = s * vpk + c * vqk;
                }
            }
    }
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = m(i, i);
    return sorted_result(std::move(d), v);
}

}  // namespace relmass
