// entangle.hpp
// Entanglement content of |0_M> in the dressed basis: W_n weight tables,
// fixed-excitation expansion terms, the Bell-structure fidelity, and the
// sector-bipartition entanglement entropy.

#pragma once

#include <vector>

#include "qfock/density.hpp"
#include "qfock/vacuum.hpp"

namespace qfock {

// Weight of one pair-occupation configuration n = (n_p).
struct WnRow {
    std::vector<int> pair_occupations;
    double weight = 0.0;
};

struct WnTable {
    // Lexicographically ordered in pair_occupations.
    std::vector<WnRow> rows;
    // Aggregated by total n = sum of pair occupations; index = n.
    std::vector<double> by_total;
    // max(0, 1 - sum of row weights): bound on the untabulated tail.
    double tail_bound = 0.0;
    // Weight found at configurations with unequal particle/antiparticle
    // occupation in some pair (zero up to roundoff by charge conservation).
    double off_pair_residual = 0.0;
};

// W_n = prod_p sinh^{2 n_p} e_p / cosh^{2(n_p + 1)} e_p over all
// configurations with total n <= max_total_n.
WnTable wn_analytic(const SqueezeSet& s, int max_total_n);

// Same table read off the squared amplitudes of the dressed representation
// of |0_M>; requires the squeeze pairs to cover every mode of the space.
WnTable wn_from_state(const VacuumPair& vp);

// |0_M> expressed in dressed occupation labels: exp(-g)|0_M> held in the
// plain occupation basis.
StateVector dressed_representation(const VacuumPair& vp);

struct ExpansionTerm {
    // Normalized projection; the zero state when the component is empty.
    StateVector state;
    double raw_norm = 0.0;
};

// Projection of the dressed representation onto total occupation
// 2 * total_n (n particles plus n antiparticles).
ExpansionTerm expansion_term(const VacuumPair& vp, int total_n);

// Fidelity between the normalized total_n = 1 component and the equal
// superposition of the two cross-sector configurations. Requires the
// single-momentum two-pair layout; the component must not vanish.
double bell_structure_check(const VacuumPair& vp);

// Entropy of the reduced state after tracing out every sigma = - mode of
// the dressed representation; equals sum of mode_entropy over pairs.
double sector_entanglement_entropy(const VacuumPair& vp);

} // namespace qfock
