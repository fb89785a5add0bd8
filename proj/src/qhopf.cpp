// qhopf.cpp
// q-numbers, doubling, coproducts, and sector isolation.

#include "qfock/qhopf.hpp"

#include <cmath>
#include <string>

namespace qfock {

namespace {

// Sparse Kronecker product, row/col index = i_a * dim_b + i_b.
SparseCd sparse_kron(const SparseCd& a, const SparseCd& b) {
    std::vector<Eigen::Triplet<cd>> trip;
    trip.reserve(static_cast<std::size_t>(a.nonZeros()) *
                 static_cast<std::size_t>(b.nonZeros()));
    for (int ka = 0; ka < a.outerSize(); ++ka) {
        for (SparseCd::InnerIterator ia(a, ka); ia; ++ia) {
            for (int kb = 0; kb < b.outerSize(); ++kb) {
                for (SparseCd::InnerIterator ib(b, kb); ib; ++ib) {
                    trip.emplace_back(ia.row() * b.rows() + ib.row(),
                                      ia.col() * b.cols() + ib.col(),
                                      ia.value() * ib.value());
                }
            }
        }
    }
    SparseCd out(a.rows() * b.rows(), a.cols() * b.cols());
    out.setFromTriplets(trip.begin(), trip.end());
    return out;
}

SparseCd sparse_identity(Eigen::Index d) {
    SparseCd id(d, d);
    id.setIdentity();
    return id;
}

} // namespace

QParam QParam::from_epsilon(double epsilon) {
    if (!std::isfinite(epsilon)) {
        throw validation_error("QParam: epsilon must be finite");
    }
    return {epsilon, std::exp(2.0 * epsilon)};
}

QParam QParam::from_q(double q) {
    if (!(q > 0.0) || !std::isfinite(q)) {
        throw validation_error(
            "QParam: q must be a finite positive real (modulus-one phases "
            "are not supported)");
    }
    return {0.5 * std::log(q), q};
}

double q_number(double x, const QParam& qp) {
    if (std::abs(qp.q - 1.0) < 1e-8) {
        return x;
    }
    // (q^x - q^{-x})/(q - q^{-1}) = sinh(x ln q)/sinh(ln q), stable near q = 1
    const double l = std::log(qp.q);
    return std::sinh(x * l) / std::sinh(l);
}

DoubledSpace make_doubled(const SpacePtr& base) {
    std::vector<ModeId> modes;
    std::vector<int> cutoffs;
    modes.reserve(2 * base->n_modes());
    cutoffs.reserve(2 * base->n_modes());
    for (Sector s : {Sector::plus, Sector::minus}) {
        for (std::size_t i = 0; i < base->n_modes(); ++i) {
            ModeId m = base->mode(i);
            m.sector = s;
            modes.push_back(m);
            cutoffs.push_back(base->cutoff(i));
        }
    }
    return {base, build_space(std::move(modes), std::move(cutoffs))};
}

Operator embed_plus(const DoubledSpace& d, const Operator& base_op) {
    require_same_space(base_op.space, d.base, "embed_plus");
    const auto bd = static_cast<Eigen::Index>(d.base->dim());
    return {d.doubled, sparse_kron(base_op.matrix, sparse_identity(bd))};
}

Operator embed_minus(const DoubledSpace& d, const Operator& base_op) {
    require_same_space(base_op.space, d.base, "embed_minus");
    const auto bd = static_cast<Eigen::Index>(d.base->dim());
    return {d.doubled, sparse_kron(sparse_identity(bd), base_op.matrix)};
}

Operator casimir(const SpacePtr& single_mode_space) {
    if (single_mode_space->n_modes() != 1) {
        throw validation_error("casimir: per-mode construction requires a "
                               "single-mode space");
    }
    const ModeId& m = single_mode_space->mode(0);
    // C = 2NH - a^dag a with H = 1/2
    const Operator n = number_op(single_mode_space, m);
    const Operator a = annihilation_op(single_mode_space, m);
    return n - adjoint(a) * a;
}

Operator casimir_q(const SpacePtr& single_mode_space, const QParam& qp) {
    if (single_mode_space->n_modes() != 1) {
        throw validation_error("casimir_q: per-mode construction requires a "
                               "single-mode space");
    }
    const ModeId& m = single_mode_space->mode(0);
    // C_q = N [2H]_q - a_q^dag a_q; in the fundamental representation
    // [2H]_q = [1]_q = 1 and a_q coincides with a.
    const Operator n = number_op(single_mode_space, m);
    const Operator a = annihilation_op(single_mode_space, m);
    return q_number(1.0, qp) * n - adjoint(a) * a;
}

Operator coproduct_plain(const Operator& base_op, const DoubledSpace& d) {
    return embed_plus(d, base_op) + embed_minus(d, base_op);
}

Operator coproduct_deformed(const DoubledSpace& d, const QParam& qp,
                            const ModeId& base_mode, LadderKind kind) {
    const Operator a = annihilation_op(d.base, base_mode);
    const double ep = std::exp(qp.epsilon);
    const double em = std::exp(-qp.epsilon);
    Operator delta = ep * embed_plus(d, a) + em * embed_minus(d, a);
    if (kind == LadderKind::creation) {
        return adjoint(delta);
    }
    return delta;
}

SectorIsolation sector_isolation_matrix(const QParam& qp) {
    if (qp.epsilon == 0.0) {
        throw validation_error(
            "sector_isolation_matrix: singular at epsilon = 0 "
            "(det = 2 sinh 2 epsilon = 0)");
    }
    const double ep = std::exp(qp.epsilon);
    const double em = std::exp(-qp.epsilon);
    const double det = 2.0 * std::sinh(2.0 * qp.epsilon);
    SectorIsolation si;
    si.m = {{{ep, em}, {em, ep}}};
    si.m_inv = {{{ep / det, -em / det}, {-em / det, ep / det}}};
    si.det = det;
    return si;
}

} // namespace qfock
