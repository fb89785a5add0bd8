// vacuum.hpp
// The dressed vacuum |0(eps)> = G |0_M>, its condensate reconstruction,
// vacuum overlaps, and dressed occupation expectations.

#pragma once

#include "qfock/bogoliubov.hpp"
#include "qfock/exp_apply.hpp"

namespace qfock {

// Smallest cutoff N with tanh^{2(N+1)}(|eps|) < tol: the missing-weight
// law, governing overlaps, W_n tails, and reduced-state spectra.
int plan_cutoff(double eps_max, double tol);

// Smallest cutoff N with sqrt(2) cosh(|eps|) S tanh(|eps|)^N < tol / 2,
// where S = max(1, 4.5 sinh^2) absorbs top-rung reflection: the amplitude
// law governing the annihilation residual ||d(eps)|0(eps)>||, which decays
// roughly half as fast as the missing weight.
int vacuum_cutoff(double eps_max, double tol);

// |0_M>, |0(eps)>, the squeeze that links them, and the cutoff bookkeeping.
struct VacuumPair {
    StateVector minkowski;
    StateVector dressed;
    SqueezeSet squeeze;
    TruncationReport truncation;
};

StateVector minkowski_vacuum(const SpacePtr& space);

// Assembles the |0_M> side of a VacuumPair without building |0(eps)>;
// sufficient for expectations taken on the Minkowski vacuum. The dressed
// field is left as the zero state.
VacuumPair minkowski_pair(const SpacePtr& space, const SqueezeSet& s);

// Builds |0(eps)> = exp(g)|0_M> and enforces the annihilation property
// ||d(eps)|0(eps)>|| < tol for every pair. Rejects cutoffs below
// vacuum_cutoff with the required cutoff in the message.
VacuumPair epsilon_vacuum(const SpacePtr& space, const SqueezeSet& s, double tol);

struct Reconstruction {
    StateVector state;
    double fidelity;
};

// |0_M> = (1/Z) exp(sum_pairs tanh eps d^dag(eps) dbar^dag(eps)) |0(eps)>
// with Z the product of cosh eps over pairs (= cosh^2 per momentum);
// fidelity is |<0_M|reconstructed>| / ||reconstructed||.
Reconstruction reconstruct_minkowski(const VacuumPair& vp);

// |<0(eps)|0(eps')>| for 1..n_pairs pairs; per-pair value computed once
// on a two-mode space (overlaps factorize over pairs exactly).
std::vector<double> overlap_vacua(double eps, double eps_prime, int n_pairs,
                                  int cutoff, double tol = 1e-10);

// <0_M| x^dag(eps) x(eps) |0_M> for the pair's particle or antiparticle
// dressed operator; equals sinh^2 eps.
double dressed_number_expectation(const VacuumPair& vp, const PairSpec& pair,
                                  Species which);

} // namespace qfock
