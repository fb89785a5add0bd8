// density.cpp
// Partial trace by strided gather into a kept x traced matrix M, then
// rho = M M^dagger; entropy from a self-adjoint eigendecomposition.

#include "qfock/density.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qfock/errors.hpp"

namespace qfock {

DensityMatrix partial_trace(const StateVector& v, const std::vector<ModeId>& keep) {
    const FockSpaceSpec& space = *v.space;
    if (keep.empty()) {
        throw validation_error("partial_trace: keep set must be nonempty");
    }
    std::vector<std::size_t> kept_pos;
    kept_pos.reserve(keep.size());
    for (const ModeId& m : keep) {
        const std::size_t p = space.mode_position(m);
        if (std::find(kept_pos.begin(), kept_pos.end(), p) != kept_pos.end()) {
            throw validation_error("partial_trace: duplicate kept mode " + to_string(m));
        }
        kept_pos.push_back(p);
    }
    if (kept_pos.size() == space.n_modes()) {
        throw validation_error("partial_trace: keep set must be a proper subset");
    }

    std::vector<std::size_t> traced_pos;
    for (std::size_t p = 0; p < space.n_modes(); ++p) {
        if (std::find(kept_pos.begin(), kept_pos.end(), p) == kept_pos.end()) {
            traced_pos.push_back(p);
        }
    }

    auto block_offsets = [&space](const std::vector<std::size_t>& pos) {
        std::vector<std::size_t> offsets{0};
        for (std::size_t p : pos) {
            const auto levels = static_cast<std::size_t>(space.cutoff(p)) + 1;
            std::vector<std::size_t> next;
            next.reserve(offsets.size() * levels);
            for (std::size_t base : offsets) {
                for (std::size_t n = 0; n < levels; ++n) {
                    next.push_back(base + n * space.stride(p));
                }
            }
            offsets = std::move(next);
        }
        return offsets;
    };

    const std::vector<std::size_t> kept_off = block_offsets(kept_pos);
    const std::vector<std::size_t> traced_off = block_offsets(traced_pos);
    const auto kd = static_cast<Eigen::Index>(kept_off.size());
    const auto td = static_cast<Eigen::Index>(traced_off.size());

    if (kept_off.size() > dense_eigen_limit) {
        throw resource_error("partial_trace: kept dimension " +
                             std::to_string(kept_off.size()) +
                             " exceeds the dense limit of " +
                             std::to_string(dense_eigen_limit));
    }

    Eigen::MatrixXcd m(kd, td);
    for (Eigen::Index i = 0; i < kd; ++i) {
        for (Eigen::Index t = 0; t < td; ++t) {
            m(i, t) = v.amplitudes[static_cast<Eigen::Index>(
                kept_off[static_cast<std::size_t>(i)] +
                traced_off[static_cast<std::size_t>(t)])];
        }
    }

    DensityMatrix rho;
    rho.entries = m * m.adjoint();
    for (std::size_t p : kept_pos) {
        rho.kept_modes.push_back(space.mode(p));
        rho.kept_cutoffs.push_back(space.cutoff(p));
    }
    return rho;
}

double trace_real(const DensityMatrix& rho) {
    return rho.entries.trace().real();
}

double purity(const DensityMatrix& rho) {
    return (rho.entries * rho.entries).trace().real();
}

double von_neumann_entropy(const DensityMatrix& rho, double tol) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.entries);
    if (solver.info() != Eigen::Success) {
        throw numeric_error("von_neumann_entropy: eigendecomposition failed");
    }
    double s = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const double lambda = solver.eigenvalues()[i];
        if (lambda < -tol) {
            throw numeric_error(
                "von_neumann_entropy: eigenvalue " + std::to_string(lambda) +
                    " below -tolerance",
                -lambda);
        }
        if (lambda > tol) {
            s -= lambda * std::log(lambda);
        }
    }
    return s;
}

} // namespace qfock
