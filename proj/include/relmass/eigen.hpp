#pragma once

#include <vector>

#include "relmass/dense.hpp"

namespace relmass {

// Eigenpairs of a real symmetric matrix, eigenvalues ascending.
// vectors(w, i) is component w of the unit eigenvector for values[i].
struct SymmetricEigen {
    std::vector<double> values;
    DenseMatrix vectors;
};

// Householder tridiagonalization followed by implicit-shift QL.
// Throws NumericalError if QL fails to converge.
SymmetricEigen eigen_symmetric(const DenseMatrix& a);

// Cyclic Jacobi rotations. O(n^3) per sweep; intended as an independent
// reference for small matrices.
SymmetricEigen eigen_symmetric_jacobi(const DenseMatrix& a, double tol = 1e-14, int max_sweeps = 100);

}  // namespace relmass
