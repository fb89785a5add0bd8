// thermo.hpp
// Entropy operator, sector Hamiltonians, free energy with dual evaluation
// paths, and the variational stationarity picking out the Bose-Einstein
// occupation.

#pragma once

#include "qfock/bogoliubov.hpp"
#include "qfock/vacuum.hpp"

namespace qfock {

struct ThermoParams {
    double beta = 1.0;
    double omega = 1.0;
};

// Throws validation_error unless beta and omega are positive and finite.
void validate_thermo(const ThermoParams& tp);

// Closed-form per-mode entropy cosh^2 e ln cosh^2 e - sinh^2 e ln sinh^2 e,
// continued to 0 at e = 0.
double mode_entropy(double epsilon);

// Log-singularity guard for the operator form; below this, callers must
// use the closed-form path (mode_entropy).
inline constexpr double entropy_eps_min = 1e-6;

// S^(sigma) = sum over dressed modes living in sector sigma of
// -[x^dag x ln sinh^2 e - x x^dag ln cosh^2 e]; a pair contributes its
// particle copy when pair.sector == sigma and its antiparticle copy when
// the pair straddles into sigma from the other sector.
Operator entropy_operator(const SpacePtr& space, const SqueezeSet& s,
                          Sector sigma, double eps_min = entropy_eps_min);

// Unsigned sector part omega * sum [d^dag(e) d(e) + dbar(e) dbar^dag(e)]
// over the dressed modes living in sector sigma (dbar dbar^dag kept in
// that order; the ordering constant is retained).
Operator sector_hamiltonian(const SpacePtr& space, const SqueezeSet& s,
                            double omega, Sector sigma);

// H_eps = H(+) - H(-).
Operator hamiltonian_eps(const SpacePtr& space, const SqueezeSet& s,
                         double omega);

// 1 / (exp(beta omega) - 1); beta omega <= 0 is rejected.
double bose_einstein(const ThermoParams& tp);

// Closed-form free energy per momentum:
// omega (2 sinh^2 e + 1) - (2/beta) mode_entropy(e).
double free_energy(double epsilon, const ThermoParams& tp);

// d/de of free_energy: 2 omega sinh 2e - (2/beta) sinh 2e ln coth^2 e.
double free_energy_derivative(double epsilon, const ThermoParams& tp);

struct FreeEnergyDual {
    double closed = 0.0;
    double operator_path = 0.0;
    double delta = 0.0;
};

// Evaluates F once as <0_M| H(+) - S(+)/beta |0_M> and once in closed
// form; disagreement beyond 1e-8 raises numeric_error.
FreeEnergyDual free_energy_dual(const SpacePtr& space, const SqueezeSet& s,
                                const ThermoParams& tp);

// Bracketed minimization of free_energy over e in [0, asinh(sqrt(10 n_BE))],
// polished on the analytic derivative; satisfies
// |sinh^2 e* - bose_einstein(tp)| < 1e-8.
double stationary_epsilon(const ThermoParams& tp);

} // namespace qfock
