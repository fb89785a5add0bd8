// bogoliubov.hpp
// Pair structure, mode smearing, the squeezing generator g, and dressed
// operators in closed and conjugated form.

#pragma once

#include <vector>

#include "qfock/exp_apply.hpp"
#include "qfock/operators.hpp"

namespace qfock {

// One squeezed pair: the (p, sigma, particle) mode couples to the
// (p~, -sigma, antiparticle) mode with strength epsilon(p) = epsilon(p~).
struct PairSpec {
    int momentum_label = 0;
    int partner_label = 0;
    Sector sector = Sector::plus;
    double epsilon = 0.0;

    ModeId particle_mode() const {
        return {momentum_label, sector, Species::particle};
    }
    ModeId antiparticle_mode() const {
        return {partner_label, opposite(sector), Species::antiparticle};
    }
};

struct SqueezeSet {
    std::vector<PairSpec> pairs;
};

// Throws validation_error unless all pair modes exist in the space,
// are distinct, and no mode is claimed by two pairs.
void validate_squeeze(const SpacePtr& space, const SqueezeSet& s);

// d_p = sum_k F(k, p) a_k for a unitary F (columns index the new modes).
std::vector<Operator> smear(const Eigen::MatrixXcd& f,
                            const std::vector<Operator>& ops);

// g = sum_pairs epsilon (d dbar - d^dag dbar^dag), verified anti-hermitian.
Operator generator(const SpacePtr& space, const SqueezeSet& s);

// Closed-form dressed operators per pair:
// d(eps) = d cosh eps + dbar^dag sinh eps, dbar(eps) = dbar cosh eps + d^dag sinh eps.
struct DressedPair {
    Operator d;
    Operator dbar;
};

std::vector<DressedPair> dressed_ops_closed(const SpacePtr& space,
                                            const SqueezeSet& s);

// G op G^-1 computed column-by-column with nested exp_apply; restricted
// to spaces within the dense column budget.
inline constexpr std::size_t dense_column_budget = 4096;

Operator dressed_ops_conjugated(const SpacePtr& space, const SqueezeSet& s,
                                const Operator& op, double tol);

// Standard laboratory layout: per momentum, four modes
// (p,+,d), (p~,+,dbar), then the sigma=- copies, with sigma=+ modes first
// across all momenta; and the two sigma pairs per momentum.
struct MomentumSpec {
    int label = 0;
    int partner_label = 0;
    double epsilon = 0.0;
};

SpacePtr make_pair_space(const std::vector<MomentumSpec>& momenta, int cutoff);
SqueezeSet standard_squeeze_set(const std::vector<MomentumSpec>& momenta);

} // namespace qfock
