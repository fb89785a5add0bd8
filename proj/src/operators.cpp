// operators.cpp
// Construction and algebra of sparse Fock-space operators.

#include "qfock/operators.hpp"

#include <cmath>

namespace qfock {

namespace {

void require_same(const Operator& a, const Operator& b, const char* what) {
    require_same_space(a.space, b.space, what);
}

} // namespace

Operator zero_op(const SpacePtr& space) {
    const auto d = static_cast<Eigen::Index>(space->dim());
    return {space, SparseCd(d, d)};
}

Operator identity_op(const SpacePtr& space) {
    const auto d = static_cast<Eigen::Index>(space->dim());
    SparseCd m(d, d);
    m.setIdentity();
    return {space, std::move(m), true, false, 0.0};
}

Operator annihilation_op(const SpacePtr& space, const ModeId& mode) {
    const std::size_t pos = space->mode_position(mode);
    const std::size_t stride = space->stride(pos);
    const auto levels = static_cast<std::size_t>(space->cutoff(pos)) + 1;
    const std::size_t dim = space->dim();

    std::vector<Eigen::Triplet<cd>> trip;
    trip.reserve(dim - dim / levels);
    for (std::size_t idx = 0; idx < dim; ++idx) {
        const auto n = (idx / stride) % levels;
        if (n >= 1) {
            trip.emplace_back(static_cast<int>(idx - stride), static_cast<int>(idx),
                              cd(std::sqrt(static_cast<double>(n)), 0.0));
        }
    }
    SparseCd m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    m.setFromTriplets(trip.begin(), trip.end());
    return {space, std::move(m)};
}

Operator creation_op(const SpacePtr& space, const ModeId& mode) {
    return adjoint(annihilation_op(space, mode));
}

Operator number_op(const SpacePtr& space, const ModeId& mode) {
    const std::size_t pos = space->mode_position(mode);
    const std::size_t stride = space->stride(pos);
    const auto levels = static_cast<std::size_t>(space->cutoff(pos)) + 1;
    const std::size_t dim = space->dim();

    std::vector<Eigen::Triplet<cd>> trip;
    trip.reserve(dim);
    for (std::size_t idx = 0; idx < dim; ++idx) {
        const auto n = (idx / stride) % levels;
        if (n >= 1) {
            trip.emplace_back(static_cast<int>(idx), static_cast<int>(idx),
                              cd(static_cast<double>(n), 0.0));
        }
    }
    SparseCd m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    m.setFromTriplets(trip.begin(), trip.end());
    return {space, std::move(m), true, false, 0.0};
}

Operator adjoint(const Operator& a) {
    Operator out{a.space, SparseCd(a.matrix.adjoint())};
    out.hermitian = a.hermitian;
    out.anti_hermitian = a.anti_hermitian;
    out.flag_tolerance = a.flag_tolerance;
    return out;
}

Operator commutator(const Operator& a, const Operator& b) {
    require_same(a, b, "commutator");
    return {a.space, SparseCd(a.matrix * b.matrix - b.matrix * a.matrix)};
}

Operator operator+(const Operator& a, const Operator& b) {
    require_same(a, b, "operator+");
    return {a.space, SparseCd(a.matrix + b.matrix)};
}

Operator operator-(const Operator& a, const Operator& b) {
    require_same(a, b, "operator-");
    return {a.space, SparseCd(a.matrix - b.matrix)};
}

Operator operator*(const Operator& a, const Operator& b) {
    require_same(a, b, "operator*");
    return {a.space, SparseCd(a.matrix * b.matrix)};
}

Operator operator*(cd scalar, const Operator& a) {
    return {a.space, SparseCd(scalar * a.matrix)};
}

Operator operator*(double scalar, const Operator& a) {
    return cd(scalar, 0.0) * a;
}

StateVector apply(const Operator& a, const StateVector& v) {
    require_same_space(a.space, v.space, "apply");
    return {v.space, a.matrix * v.amplitudes};
}

cd inner(const StateVector& u, const StateVector& v) {
    require_same_space(u.space, v.space, "inner");
    return u.amplitudes.dot(v.amplitudes);
}

cd expectation(const Operator& a, const StateVector& v) {
    return inner(v, apply(a, v));
}

double max_abs(const Operator& a) {
    double m = 0.0;
    for (int k = 0; k < a.matrix.outerSize(); ++k) {
        for (SparseCd::InnerIterator it(a.matrix, k); it; ++it) {
            m = std::max(m, std::abs(it.value()));
        }
    }
    return m;
}

bool verify_hermitian(Operator& a, double tol) {
    Operator diff{a.space, SparseCd(a.matrix - SparseCd(a.matrix.adjoint()))};
    if (max_abs(diff) <= tol) {
        a.hermitian = true;
        a.flag_tolerance = tol;
        return true;
    }
    return false;
}

bool verify_anti_hermitian(Operator& a, double tol) {
    Operator sum{a.space, SparseCd(a.matrix + SparseCd(a.matrix.adjoint()))};
    if (max_abs(sum) <= tol) {
        a.anti_hermitian = true;
        a.flag_tolerance = tol;
        return true;
    }
    return false;
}

std::vector<std::size_t> safe_indices_margin(const FockSpaceSpec& space, int margin) {
    std::vector<std::size_t> out;
    std::vector<int> occ(space.n_modes());
    for (std::size_t idx = 0; idx < space.dim(); ++idx) {
        space.occupations_of(idx, occ);
        bool safe = true;
        for (std::size_t m = 0; m < occ.size(); ++m) {
            if (occ[m] > space.cutoff(m) - margin) {
                safe = false;
                break;
            }
        }
        if (safe) {
            out.push_back(idx);
        }
    }
    return out;
}

std::vector<std::size_t> safe_indices_cap(const FockSpaceSpec& space, int cap) {
    std::vector<std::size_t> out;
    std::vector<int> occ(space.n_modes());
    for (std::size_t idx = 0; idx < space.dim(); ++idx) {
        space.occupations_of(idx, occ);
        bool safe = true;
        for (int n : occ) {
            if (n > cap) {
                safe = false;
                break;
            }
        }
        if (safe) {
            out.push_back(idx);
        }
    }
    return out;
}

double max_block_colnorm(const Operator& a, const std::vector<std::size_t>& indices) {
    std::vector<char> in_set(a.space->dim(), 0);
    for (std::size_t i : indices) {
        in_set[i] = 1;
    }
    double worst = 0.0;
    for (std::size_t col : indices) {
        double acc = 0.0;
        for (SparseCd::InnerIterator it(a.matrix, static_cast<int>(col)); it; ++it) {
            if (in_set[static_cast<std::size_t>(it.row())]) {
                acc += std::norm(it.value());
            }
        }
        worst = std::max(worst, std::sqrt(acc));
    }
    return worst;
}

double max_colnorm_on(const Operator& a, const std::vector<std::size_t>& indices) {
    double worst = 0.0;
    for (std::size_t col : indices) {
        double acc = 0.0;
        for (SparseCd::InnerIterator it(a.matrix, static_cast<int>(col)); it; ++it) {
            acc += std::norm(it.value());
        }
        worst = std::max(worst, std::sqrt(acc));
    }
    return worst;
}

} // namespace qfock
