// thermo.cpp
// Entropy operator, sector Hamiltonians, free energy, and stationarity.

#include "qfock/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include <boost/math/tools/minima.hpp>

namespace qfock {

namespace {

// -[x^dag x ln sinh^2 e - x x^dag ln cosh^2 e] for one dressed mode.
Operator mode_entropy_term(const Operator& x, double epsilon) {
    const double sh = std::sinh(epsilon);
    const double s2 = sh * sh;
    const double ln_s2 = std::log(s2);
    const double ln_c2 = std::log1p(s2);
    return (-ln_s2) * (adjoint(x) * x) + ln_c2 * (x * adjoint(x));
}

} // namespace

void validate_thermo(const ThermoParams& tp) {
    if (!(tp.beta > 0.0) || !std::isfinite(tp.beta)) {
        throw validation_error("thermo: beta must be positive and finite");
    }
    if (!(tp.omega > 0.0) || !std::isfinite(tp.omega)) {
        throw validation_error("thermo: omega must be positive and finite");
    }
}

double mode_entropy(double epsilon) {
    const double sh = std::sinh(epsilon);
    const double s2 = sh * sh;
    if (s2 == 0.0) {
        return 0.0;
    }
    const double c2 = 1.0 + s2;
    return c2 * std::log(c2) - s2 * std::log(s2);
}

Operator entropy_operator(const SpacePtr& space, const SqueezeSet& s,
                          Sector sigma, double eps_min) {
    validate_squeeze(space, s);
    for (const PairSpec& p : s.pairs) {
        if (std::abs(p.epsilon) < eps_min) {
            throw validation_error(
                "entropy_operator: |epsilon| = " + std::to_string(p.epsilon) +
                " is below the eps_min guard " + std::to_string(eps_min) +
                "; use the closed-form path (mode_entropy) near epsilon = 0");
        }
    }
    const auto dressed = dressed_ops_closed(space, s);
    Operator out = zero_op(space);
    for (std::size_t i = 0; i < s.pairs.size(); ++i) {
        const PairSpec& p = s.pairs[i];
        if (p.sector == sigma) {
            out = out + mode_entropy_term(dressed[i].d, p.epsilon);
        }
        if (opposite(p.sector) == sigma) {
            out = out + mode_entropy_term(dressed[i].dbar, p.epsilon);
        }
    }
    if (!verify_hermitian(out, 1e-10)) {
        throw numeric_error(
            "entropy_operator: assembled operator is not hermitian");
    }
    return out;
}

Operator sector_hamiltonian(const SpacePtr& space, const SqueezeSet& s,
                            double omega, Sector sigma) {
    validate_thermo({1.0, omega});
    validate_squeeze(space, s);
    const auto dressed = dressed_ops_closed(space, s);
    Operator out = zero_op(space);
    for (std::size_t i = 0; i < s.pairs.size(); ++i) {
        const PairSpec& p = s.pairs[i];
        if (p.sector == sigma) {
            const Operator& x = dressed[i].d;
            out = out + omega * (adjoint(x) * x);
        }
        if (opposite(p.sector) == sigma) {
            const Operator& x = dressed[i].dbar;
            out = out + omega * (x * adjoint(x));
        }
    }
    if (!verify_hermitian(out, 1e-10)) {
        throw numeric_error(
            "sector_hamiltonian: assembled operator is not hermitian");
    }
    return out;
}

Operator hamiltonian_eps(const SpacePtr& space, const SqueezeSet& s,
                         double omega) {
    Operator h = sector_hamiltonian(space, s, omega, Sector::plus) -
                 sector_hamiltonian(space, s, omega, Sector::minus);
    verify_hermitian(h, 1e-10);
    return h;
}

double bose_einstein(const ThermoParams& tp) {
    const double x = tp.beta * tp.omega;
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw validation_error("bose_einstein: beta * omega must be positive");
    }
    return 1.0 / std::expm1(x);
}

double free_energy(double epsilon, const ThermoParams& tp) {
    validate_thermo(tp);
    const double sh = std::sinh(epsilon);
    return tp.omega * (2.0 * sh * sh + 1.0) -
           (2.0 / tp.beta) * mode_entropy(epsilon);
}

double free_energy_derivative(double epsilon, const ThermoParams& tp) {
    validate_thermo(tp);
    if (epsilon == 0.0) {
        return 0.0;
    }
    const double s2e = std::sinh(2.0 * epsilon);
    const double th = std::tanh(epsilon);
    const double ln_coth2 = -2.0 * std::log(std::abs(th));
    return 2.0 * tp.omega * s2e - (2.0 / tp.beta) * s2e * ln_coth2;
}

FreeEnergyDual free_energy_dual(const SpacePtr& space, const SqueezeSet& s,
                                const ThermoParams& tp) {
    validate_thermo(tp);
    const Operator h_plus = sector_hamiltonian(space, s, tp.omega, Sector::plus);
    const Operator s_plus = entropy_operator(space, s, Sector::plus);
    const StateVector vac = minkowski_vacuum(space);

    FreeEnergyDual out;
    out.operator_path =
        (expectation(h_plus, vac) - expectation(s_plus, vac) / tp.beta).real();

    for (const PairSpec& p : s.pairs) {
        const double sh = std::sinh(p.epsilon);
        const double s2 = sh * sh;
        const double energy =
            (p.sector == Sector::plus) ? tp.omega * s2 : tp.omega * (s2 + 1.0);
        out.closed += energy - mode_entropy(p.epsilon) / tp.beta;
    }

    out.delta = std::abs(out.closed - out.operator_path);
    if (out.delta > 1e-8) {
        throw numeric_error("free_energy_dual: operator and closed-form paths "
                            "disagree by " + std::to_string(out.delta),
                            out.delta);
    }
    return out;
}

double stationary_epsilon(const ThermoParams& tp) {
    validate_thermo(tp);
    const double n_be = bose_einstein(tp);
    const double hi = std::asinh(std::sqrt(10.0 * n_be));

    const auto f = [&tp](double e) { return free_energy(e, tp); };
    const auto bracket =
        boost::math::tools::brent_find_minima(f, 0.0, hi, 40);
    double e = bracket.first;

    // Newton polish on h(e) = omega - (2/beta) ln coth e; the comparison
    // based minimizer plateaus near sqrt(machine epsilon) in e.
    e = std::max(e, 1e-12);
    for (int it = 0; it < 50; ++it) {
        const double h = tp.omega + (2.0 / tp.beta) * std::log(std::tanh(e));
        const double hp = 4.0 / (tp.beta * std::sinh(2.0 * e));
        const double step = h / hp;
        e = std::max(e - step, 1e-12);
        if (std::abs(step) < 1e-15 * std::max(1.0, e)) {
            break;
        }
    }
    return e;
}

} // namespace qfock
