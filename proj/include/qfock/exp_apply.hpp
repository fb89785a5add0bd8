// exp_apply.hpp
// Matrix-free action of an operator exponential on a state vector via a
// scaled Taylor series with a computable remainder bound.

#pragma once

#include "qfock/operators.hpp"

namespace qfock {

// Bookkeeping for cutoff artifacts: norm lost to truncated rungs and the
// number of spare rungs the computation had available.
struct TruncationReport {
    double leaked_norm = 0.0;
    int safe_subspace_margin = 0;
};

struct ExpApplyResult {
    StateVector state;
    TruncationReport report;
};

// Computes w ~ exp(A) v with series tail bounded by tol, without ever
// materializing a dense exponential. If A carries a verified
// anti-hermitian flag, |  ||w|| - ||v||  | is reported as leaked_norm.
// Throws numeric_error with the outstanding remainder if the iteration
// budget is exhausted.
ExpApplyResult exp_apply(const Operator& a, const StateVector& v, double tol);

} // namespace qfock
