#pragma once

#include <array>
#include <cmath>
#include <vector>

namespace lgq {

/// Orthonormal basis of the (right) null space of an m x n real matrix,
/// computed from the eigendecomposition of AᵀA by cyclic Jacobi.
/// Directions whose singular value is <= rel_tol * (largest singular value)
/// count as null.
std::vector<std::vector<double>> nullspace(const std::vector<std::vector<double>>& A,
                                           double rel_tol = 1e-7);

/// Cyclic Jacobi eigensolver for a symmetric n x n matrix. Returns
/// eigenvalues ascending; V columns are the matching eigenvectors.
void jacobi_eigen(std::vector<std::vector<double>> S, std::vector<double>& evals,
                  std::vector<std::vector<double>>& V);

} // namespace lgq
