// test_thermo.cpp
// Entropy operator, sector Hamiltonians, free energy and its dual
// evaluation, and the variational Bose-Einstein stationarity.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "qfock/errors.hpp"
#include "qfock/thermo.hpp"

using namespace qfock;

namespace {

SpacePtr pair_space(int cutoff) {
    return build_space({ModeId{0, Sector::plus, Species::particle},
                        ModeId{0, Sector::minus, Species::antiparticle}},
                       cutoff);
}

SqueezeSet one_pair(double eps) {
    return SqueezeSet{{PairSpec{0, 0, Sector::plus, eps}}};
}

} // namespace

TEST_CASE("closed-form mode entropy") {
    CHECK(mode_entropy(0.0) == 0.0);
    CHECK(std::abs(mode_entropy(0.5) - 0.6594529591680364) < 1e-12);
    CHECK(mode_entropy(0.5) == mode_entropy(-0.5));
    CHECK(mode_entropy(1.0) > mode_entropy(0.5));
}

TEST_CASE("bose-einstein occupation") {
    CHECK(std::abs(bose_einstein({1.0, 1.0}) - 0.5819767068693265) < 1e-15);
    CHECK_THROWS_AS(bose_einstein({-1.0, 1.0}), validation_error);
    CHECK_THROWS_AS(validate_thermo({0.0, 1.0}), validation_error);
    CHECK_THROWS_AS(validate_thermo({1.0, -2.0}), validation_error);
    CHECK_THROWS_AS(
        validate_thermo({std::numeric_limits<double>::infinity(), 1.0}),
        validation_error);
}

TEST_CASE("stationary epsilon reproduces bose-einstein occupation") {
    const ThermoParams half_fill{std::log(2.0), 1.0};
    CHECK(std::abs(stationary_epsilon(half_fill) - 0.881373587019543) < 1e-9);

    const ThermoParams unit{1.0, 1.0};
    const double e_star = stationary_epsilon(unit);
    CHECK(std::abs(std::pow(std::sinh(e_star), 2.0) - 0.5819767068693265)
          < 1e-8);
    CHECK(std::abs(free_energy_derivative(e_star, unit)) < 1e-8);

    const ThermoParams cold{30.0, 1.0};
    CHECK(stationary_epsilon(cold) < 1e-5);
}

TEST_CASE("free energy closed form and derivative") {
    const ThermoParams tp{2.0, 1.3};
    CHECK(free_energy(0.0, tp) == 1.3);
    CHECK(free_energy(0.4, tp) == free_energy(-0.4, tp));
    CHECK(free_energy_derivative(0.0, tp) == 0.0);

    const double e = 0.4;
    const double h = 1e-6;
    const double fd =
        (free_energy(e + h, tp) - free_energy(e - h, tp)) / (2.0 * h);
    CHECK(std::abs(fd - free_energy_derivative(e, tp)) < 1e-8);
}

TEST_CASE("dual free energy paths agree on the standard layout") {
    const SpacePtr sp = make_pair_space({MomentumSpec{0, 0, 0.5}}, 2);
    const SqueezeSet s = standard_squeeze_set({MomentumSpec{0, 0, 0.5}});
    const ThermoParams tp{2.0, 1.3};
    const FreeEnergyDual dual = free_energy_dual(sp, s, tp);
    CHECK(dual.delta < 1e-12);
    CHECK(std::abs(dual.closed - free_energy(0.5, tp)) < 1e-15);
}

TEST_CASE("entropy operator expectation matches the closed form") {
    const double eps = 0.3;

    const SpacePtr two = pair_space(2);
    const SqueezeSet single = one_pair(eps);
    Operator s_plus = entropy_operator(two, single, Sector::plus);
    CHECK(s_plus.hermitian);
    const VacuumPair vp2 = minkowski_pair(two, single);
    CHECK(std::abs(expectation(s_plus, vp2.minkowski).real() -
                   mode_entropy(eps)) < 1e-12);

    const SpacePtr four = make_pair_space({MomentumSpec{0, 0, eps}}, 2);
    const SqueezeSet both = standard_squeeze_set({MomentumSpec{0, 0, eps}});
    const Operator s4 = entropy_operator(four, both, Sector::plus);
    const VacuumPair vp4 = minkowski_pair(four, both);
    CHECK(std::abs(expectation(s4, vp4.minkowski).real() -
                   2.0 * mode_entropy(eps)) < 1e-12);

    CHECK_THROWS_AS(entropy_operator(two, one_pair(1e-7), Sector::plus),
                    validation_error);
}

TEST_CASE("sector hamiltonians and their difference") {
    const double eps = 0.0;
    const double omega = 1.7;
    const SpacePtr sp = make_pair_space({MomentumSpec{0, 0, eps}}, 2);
    const SqueezeSet s = standard_squeeze_set({MomentumSpec{0, 0, eps}});

    const Operator hp = sector_hamiltonian(sp, s, omega, Sector::plus);
    const Operator hm = sector_hamiltonian(sp, s, omega, Sector::minus);
    const Operator h = hamiltonian_eps(sp, s, omega);
    CHECK(h.hermitian);
    CHECK(max_abs(h - (hp - hm)) < 1e-15);

    const auto energy_of = [&](const std::vector<int>& occ) {
        const StateVector v = basis_state(sp, occ);
        return expectation(h, v).real();
    };
    CHECK(std::abs(energy_of({0, 0, 0, 0})) < 1e-15);
    CHECK(std::abs(energy_of({1, 0, 0, 0}) - omega) < 1e-14);
    CHECK(std::abs(energy_of({0, 1, 0, 0}) - omega) < 1e-14);
    CHECK(std::abs(energy_of({0, 0, 1, 0}) + omega) < 1e-14);
    CHECK(std::abs(energy_of({0, 0, 0, 1}) + omega) < 1e-14);

    const StateVector one = basis_state(sp, std::vector<int>{1, 0, 0, 0});
    const StateVector hv = apply(h, one);
    CHECK((hv.amplitudes - omega * one.amplitudes).norm() < 1e-14);
}

TEST_CASE("dressed hamiltonian annihilates the dressed vacuum") {
    const double eps = 0.3;
    const double omega = 1.0;
    const SpacePtr sp = make_pair_space({MomentumSpec{0, 0, eps}}, 14);
    const SqueezeSet s = standard_squeeze_set({MomentumSpec{0, 0, eps}});
    const VacuumPair vp = epsilon_vacuum(sp, s, 1e-6);
    const Operator h = hamiltonian_eps(sp, s, omega);
    CHECK(norm(apply(h, vp.dressed)) < 1e-5);
}
