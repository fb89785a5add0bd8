// density.hpp
// Reduced density matrices via partial trace, and their von Neumann
// entropy. Dense storage, restricted to modest kept dimensions.

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "qfock/fock.hpp"

namespace qfock {

// Dense reduced state over the listed kept modes.
struct DensityMatrix {
    std::vector<ModeId> kept_modes;
    std::vector<int> kept_cutoffs;
    Eigen::MatrixXcd entries;
};

// Dense eigendecomposition is permitted only up to this kept dimension.
inline constexpr std::size_t dense_eigen_limit = 4096;

// Trace out every mode not in keep. keep must be a nonempty proper subset
// of the state's modes.
DensityMatrix partial_trace(const StateVector& v, const std::vector<ModeId>& keep);

double trace_real(const DensityMatrix& rho);
double purity(const DensityMatrix& rho);

// -sum lambda ln lambda; eigenvalues <= tol contribute zero, eigenvalues
// below -tol raise numeric_error.
double von_neumann_entropy(const DensityMatrix& rho, double tol = 1e-10);

} // namespace qfock
