// operators.hpp
// Sparse operators on a truncated Fock space: ladder operators, algebra
// helpers, inner products, and safe-subspace utilities.

#pragma once

#include <vector>

#include <Eigen/SparseCore>

#include "qfock/fock.hpp"

namespace qfock {

using SparseCd = Eigen::SparseMatrix<cd>;

// Sparse complex matrix bound to a space, with optional verified
// (anti-)hermiticity flags recording the tolerance of the check.
struct Operator {
    SpacePtr space;
    SparseCd matrix;
    bool hermitian = false;
    bool anti_hermitian = false;
    double flag_tolerance = 0.0;
};

Operator zero_op(const SpacePtr& space);
Operator identity_op(const SpacePtr& space);
Operator annihilation_op(const SpacePtr& space, const ModeId& mode);
Operator creation_op(const SpacePtr& space, const ModeId& mode);
Operator number_op(const SpacePtr& space, const ModeId& mode);

Operator adjoint(const Operator& a);
Operator commutator(const Operator& a, const Operator& b);

Operator operator+(const Operator& a, const Operator& b);
Operator operator-(const Operator& a, const Operator& b);
Operator operator*(const Operator& a, const Operator& b);
Operator operator*(cd scalar, const Operator& a);
Operator operator*(double scalar, const Operator& a);

StateVector apply(const Operator& a, const StateVector& v);
cd inner(const StateVector& u, const StateVector& v);
cd expectation(const Operator& a, const StateVector& v);

// Largest entry magnitude over stored entries.
double max_abs(const Operator& a);

// Verify and record (anti-)hermiticity; returns whether the flag was set.
bool verify_hermitian(Operator& a, double tol);
bool verify_anti_hermitian(Operator& a, double tol);

// Basis states with every occupation <= N_max - margin (identity checks:
// truncation defects are confined to the top rungs).
std::vector<std::size_t> safe_indices_margin(const FockSpaceSpec& space, int margin);

// Basis states with every occupation <= cap (conjugation checks: the
// exponential spreads occupation, so the comparison block sits low).
std::vector<std::size_t> safe_indices_cap(const FockSpaceSpec& space, int cap);

// max over listed columns of the 2-norm of (A e_i) compressed to the same
// index set, i.e. the column norm of the P A P block.
double max_block_colnorm(const Operator& a, const std::vector<std::size_t>& indices);

// max over listed columns of the full 2-norm of A e_i (no row compression).
double max_colnorm_on(const Operator& a, const std::vector<std::size_t>& indices);

} // namespace qfock
