// bogoliubov.cpp
// Squeezing generator and dressed operators.

#include "qfock/bogoliubov.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qfock {

void validate_squeeze(const SpacePtr& space, const SqueezeSet& s) {
    std::vector<ModeId> claimed;
    for (const PairSpec& p : s.pairs) {
        const ModeId d = p.particle_mode();
        const ModeId dbar = p.antiparticle_mode();
        if (d == dbar) {
            throw validation_error("squeeze set: pair couples a mode to itself (" +
                                   to_string(d) + ")");
        }
        for (const ModeId& m : {d, dbar}) {
            if (!space->has_mode(m)) {
                throw validation_error("squeeze set: mode " + to_string(m) +
                                       " is not in the space");
            }
            if (std::find(claimed.begin(), claimed.end(), m) != claimed.end()) {
                throw validation_error("squeeze set: mode " + to_string(m) +
                                       " appears in two pairs");
            }
            claimed.push_back(m);
        }
    }
}

std::vector<Operator> smear(const Eigen::MatrixXcd& f,
                            const std::vector<Operator>& ops) {
    if (f.rows() != f.cols() ||
        static_cast<std::size_t>(f.rows()) != ops.size()) {
        throw validation_error("smear: F must be square with one row per operator");
    }
    const double dev =
        (f * f.adjoint() - Eigen::MatrixXcd::Identity(f.rows(), f.cols()))
            .cwiseAbs()
            .maxCoeff();
    if (dev > 1e-12) {
        throw validation_error("smear: F is not unitary, ||FF^dag - I||_max = " +
                               std::to_string(dev));
    }
    for (std::size_t k = 1; k < ops.size(); ++k) {
        require_same_space(ops[0].space, ops[k].space, "smear");
    }
    std::vector<Operator> out;
    out.reserve(ops.size());
    for (Eigen::Index p = 0; p < f.cols(); ++p) {
        Operator d = zero_op(ops[0].space);
        for (Eigen::Index k = 0; k < f.rows(); ++k) {
            d = d + f(k, p) * ops[static_cast<std::size_t>(k)];
        }
        out.push_back(std::move(d));
    }
    return out;
}

Operator generator(const SpacePtr& space, const SqueezeSet& s) {
    validate_squeeze(space, s);
    Operator g = zero_op(space);
    for (const PairSpec& p : s.pairs) {
        const Operator d = annihilation_op(space, p.particle_mode());
        const Operator dbar = annihilation_op(space, p.antiparticle_mode());
        g = g + p.epsilon * (d * dbar - adjoint(d) * adjoint(dbar));
    }
    if (!verify_anti_hermitian(g, 1e-12)) {
        throw numeric_error("generator: assembled g failed the anti-hermiticity check");
    }
    return g;
}

std::vector<DressedPair> dressed_ops_closed(const SpacePtr& space,
                                            const SqueezeSet& s) {
    validate_squeeze(space, s);
    std::vector<DressedPair> out;
    out.reserve(s.pairs.size());
    for (const PairSpec& p : s.pairs) {
        const Operator d = annihilation_op(space, p.particle_mode());
        const Operator dbar = annihilation_op(space, p.antiparticle_mode());
        const double c = std::cosh(p.epsilon);
        const double sh = std::sinh(p.epsilon);
        out.push_back({c * d + sh * adjoint(dbar), c * dbar + sh * adjoint(d)});
    }
    return out;
}

Operator dressed_ops_conjugated(const SpacePtr& space, const SqueezeSet& s,
                                const Operator& op, double tol) {
    require_same_space(space, op.space, "dressed_ops_conjugated");
    if (!(tol > 0.0)) {
        throw validation_error("dressed_ops_conjugated: tol must be positive");
    }
    if (space->dim() > dense_column_budget) {
        throw resource_error(
            "dressed_ops_conjugated: dimension " + std::to_string(space->dim()) +
            " exceeds the column-by-column budget of " +
            std::to_string(dense_column_budget));
    }
    const Operator g = generator(space, s);
    Operator g_neg = -1.0 * g;
    g_neg.anti_hermitian = g.anti_hermitian;
    g_neg.flag_tolerance = g.flag_tolerance;

    const auto dim = static_cast<Eigen::Index>(space->dim());
    std::vector<Eigen::Triplet<cd>> trip;
    StateVector e = zero_state(space);
    for (Eigen::Index col = 0; col < dim; ++col) {
        e.amplitudes.setZero();
        e.amplitudes[col] = cd(1.0, 0.0);
        // G op G^-1 e = exp(g) op exp(-g) e
        StateVector u = exp_apply(g_neg, e, tol / 2).state;
        u = apply(op, u);
        StateVector w = exp_apply(g, u, tol / 2).state;
        for (Eigen::Index row = 0; row < dim; ++row) {
            if (w.amplitudes[row] != cd(0.0, 0.0)) {
                trip.emplace_back(static_cast<int>(row), static_cast<int>(col),
                                  w.amplitudes[row]);
            }
        }
    }
    SparseCd m(dim, dim);
    m.setFromTriplets(trip.begin(), trip.end());
    return {space, std::move(m)};
}

SpacePtr make_pair_space(const std::vector<MomentumSpec>& momenta, int cutoff) {
    std::vector<ModeId> modes;
    for (Sector s : {Sector::plus, Sector::minus}) {
        for (const MomentumSpec& m : momenta) {
            modes.push_back({m.label, s, Species::particle});
            modes.push_back({m.partner_label, s, Species::antiparticle});
        }
    }
    return build_space(std::move(modes), cutoff);
}

SqueezeSet standard_squeeze_set(const std::vector<MomentumSpec>& momenta) {
    SqueezeSet s;
    for (const MomentumSpec& m : momenta) {
        s.pairs.push_back({m.label, m.partner_label, Sector::plus, m.epsilon});
        s.pairs.push_back({m.label, m.partner_label, Sector::minus, m.epsilon});
    }
    return s;
}

} // namespace qfock
