// test_vacuum.cpp
// Cutoff planning rules, the dressed vacuum and its condensate structure,
// vacuum overlaps, and dressed occupation expectations.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "qfock/errors.hpp"
#include "qfock/vacuum.hpp"

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

double amplitude_bound(double e, int n) {
    const double spill = std::max(1.0, 4.5 * std::pow(std::sinh(e), 2.0));
    return std::sqrt(2.0) * std::cosh(e) * spill * std::pow(std::tanh(e), n);
}

} // namespace

TEST_CASE("planning rules hit their defining inequalities") {
    CHECK(plan_cutoff(0.3, 1e-8) == 7);
    CHECK(plan_cutoff(0.5, 1e-8) == 11);
    CHECK(plan_cutoff(0.0, 1e-8) == 1);

    CHECK(vacuum_cutoff(0.3, 1e-8) == 16);
    CHECK(vacuum_cutoff(0.5, 1e-8) == 26);
    CHECK(vacuum_cutoff(1.0, 1e-8) >= 73);

    for (double e : {0.3, 0.7, 1.2}) {
        const int n = vacuum_cutoff(e, 1e-8);
        CHECK(amplitude_bound(e, n) < 0.5e-8);
        CHECK(amplitude_bound(e, n - 1) >= 0.5e-8);
        CHECK(vacuum_cutoff(e, 1e-8) == vacuum_cutoff(-e, 1e-8));
    }

    for (double e : {0.2, 0.5, 1.0}) {
        const int n = plan_cutoff(e, 1e-10);
        const double t2 = std::pow(std::tanh(e), 2.0);
        CHECK(std::pow(t2, n + 1) < 1e-10);
        CHECK(std::pow(t2, n) >= 1e-10);
    }
}

TEST_CASE("dressed vacuum carries the condensate amplitudes") {
    const double eps = 0.5;
    const SpacePtr sp = pair_space(vacuum_cutoff(eps, 1e-8));
    const VacuumPair vp = epsilon_vacuum(sp, one_pair(eps), 1e-8);

    CHECK(std::abs(norm(vp.dressed) - 1.0) < 1e-10);
    const auto at = [&](int n, int m) {
        const std::vector<int> occ{n, m};
        return vp.dressed.amplitudes[static_cast<Eigen::Index>(
            sp->index_of(occ))];
    };
    CHECK(std::abs(at(0, 0).real() - 0.886818883970074) < 1e-10);
    CHECK(std::abs(at(1, 1).real() - (-0.409814221664745)) < 1e-10);
    CHECK(std::abs(at(0, 0).imag()) < 1e-14);
    CHECK(std::abs(at(0, 1)) < 1e-12);
    CHECK(std::abs(at(1, 0)) < 1e-12);

    const Operator d_eps = dressed_ops_closed(sp, vp.squeeze)[0].d;
    CHECK(norm(apply(d_eps, vp.dressed)) < 1e-8);
}

TEST_CASE("shallow cutoffs are rejected with the required value") {
    const SpacePtr sp = pair_space(10);
    try {
        epsilon_vacuum(sp, one_pair(0.5), 1e-8);
        FAIL("expected validation_error");
    } catch (const validation_error& e) {
        CHECK(std::string(e.what()).find("26") != std::string::npos);
    }
}

TEST_CASE("condensate reconstruction recovers the minkowski vacuum") {
    const double eps = 0.3;
    const SpacePtr sp = pair_space(16);
    const VacuumPair vp = epsilon_vacuum(sp, one_pair(eps), 1e-8);
    const Reconstruction rec = reconstruct_minkowski(vp);
    CHECK(rec.fidelity > 1.0 - 1e-10);
    CHECK(std::abs(norm(rec.state) - 1.0) < 1e-8);
}

TEST_CASE("vacuum overlaps factorize geometrically") {
    const int cutoff = plan_cutoff(1.0, 1e-10) + 4;
    const auto v = overlap_vacua(1.0, 0.0, 3, cutoff, 1e-10);
    REQUIRE(v.size() == 3u);
    const double per_pair = 0.6480542736638855;
    CHECK(std::abs(v[0] - per_pair) < 1e-10);
    CHECK(std::abs(v[1] - per_pair * per_pair) < 1e-10);
    CHECK(std::abs(v[2] / v[1] - v[0]) < 1e-12);

    const auto same =
        overlap_vacua(0.3, 0.3, 2, plan_cutoff(0.3, 1e-10) + 1, 1e-10);
    CHECK(std::abs(same[0] - 1.0) < 1e-12);
    CHECK(std::abs(same[1] - 1.0) < 1e-12);

    CHECK_THROWS_AS(overlap_vacua(1.0, 0.0, 0, cutoff, 1e-10),
                    validation_error);
    CHECK_THROWS_AS(overlap_vacua(1.0, 0.0, 3, plan_cutoff(1.0, 1e-10) - 1,
                                  1e-10),
                    validation_error);
}

TEST_CASE("dressed occupation of the minkowski vacuum") {
    const double eps = 0.5;
    const SpacePtr sp = pair_space(2);
    const SqueezeSet s = one_pair(eps);
    const VacuumPair vp = minkowski_pair(sp, s);
    CHECK(norm(vp.dressed) == 0.0);
    CHECK(std::abs(norm(vp.minkowski) - 1.0) < 1e-15);

    const double want = 0.2715403174076219;
    CHECK(std::abs(dressed_number_expectation(vp, s.pairs[0],
                                              Species::particle) -
                   want) < 1e-12);
    CHECK(std::abs(dressed_number_expectation(vp, s.pairs[0],
                                              Species::antiparticle) -
                   want) < 1e-12);

    const PairSpec foreign{7, 7, Sector::plus, 0.5};
    CHECK_THROWS_AS(dressed_number_expectation(vp, foreign, Species::particle),
                    validation_error);
}
