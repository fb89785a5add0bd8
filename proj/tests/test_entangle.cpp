// test_entangle.cpp
// W_n weight tables, the dressed representation and its expansion terms,
// the Bell-structure fidelity, and the sector bipartition entropy.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "qfock/entangle.hpp"
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

double pair_weight(double eps, int n) {
    const double t2 = std::pow(std::tanh(eps), 2.0);
    return std::pow(t2, n) / std::pow(std::cosh(eps), 2.0);
}

} // namespace

TEST_CASE("analytic weight table for one pair") {
    const double eps = 0.5;
    const WnTable w = wn_analytic(one_pair(eps), 10);
    REQUIRE(w.rows.size() == 11u);
    REQUIRE(w.by_total.size() == 11u);

    CHECK(std::abs(w.rows[0].weight - 0.7864477329659275) < 1e-12);
    CHECK(std::abs(w.rows[1].weight / w.rows[0].weight -
                   0.21355226703407257) < 1e-12);
    for (int n = 0; n <= 10; ++n) {
        CHECK(w.rows[static_cast<std::size_t>(n)].pair_occupations ==
              std::vector<int>{n});
        CHECK(w.by_total[static_cast<std::size_t>(n)] ==
              w.rows[static_cast<std::size_t>(n)].weight);
    }

    double sum = 0.0;
    for (const WnRow& r : w.rows) sum += r.weight;
    CHECK(std::abs(sum - 0.999999957874405) < 1e-12);
    CHECK(std::abs(w.tail_bound - (1.0 - sum)) < 1e-15);
    CHECK(w.off_pair_residual == 0.0);

    CHECK_THROWS_AS(wn_analytic(SqueezeSet{}, 4), validation_error);
    CHECK_THROWS_AS(wn_analytic(one_pair(eps), -1), validation_error);
}

TEST_CASE("analytic table at epsilon = 0 is pure vacuum") {
    const WnTable w = wn_analytic(one_pair(0.0), 5);
    CHECK(w.rows[0].weight == 1.0);
    for (std::size_t n = 1; n < w.rows.size(); ++n) {
        CHECK(w.rows[n].weight == 0.0);
    }
    CHECK(w.tail_bound == 0.0);
}

TEST_CASE("analytic table for two pairs") {
    SqueezeSet s{{PairSpec{0, 0, Sector::plus, 0.3},
                  PairSpec{0, 0, Sector::minus, 0.5}}};
    const WnTable w = wn_analytic(s, 3);
    REQUIRE(w.rows.size() == 10u);

    CHECK(w.rows[0].pair_occupations == std::vector<int>{0, 0});
    CHECK(w.rows[1].pair_occupations == std::vector<int>{0, 1});
    CHECK(w.rows[4].pair_occupations == std::vector<int>{1, 0});
    CHECK(w.rows[9].pair_occupations == std::vector<int>{3, 0});

    for (const WnRow& r : w.rows) {
        const double want = pair_weight(0.3, r.pair_occupations[0]) *
                            pair_weight(0.5, r.pair_occupations[1]);
        CHECK(std::abs(r.weight - want) < 1e-15);
    }

    const double want2 = pair_weight(0.3, 0) * pair_weight(0.5, 2) +
                         pair_weight(0.3, 1) * pair_weight(0.5, 1) +
                         pair_weight(0.3, 2) * pair_weight(0.5, 0);
    CHECK(std::abs(w.by_total[2] - want2) < 1e-15);
}

TEST_CASE("empirical weights match the analytic table") {
    const double eps = 0.5;
    const SpacePtr sp = pair_space(32);
    const VacuumPair vp = epsilon_vacuum(sp, one_pair(eps), 1e-10);
    const WnTable emp = wn_from_state(vp);
    const WnTable ana = wn_analytic(one_pair(eps), 10);
    for (int n = 0; n <= 10; ++n) {
        CHECK(std::abs(emp.by_total[static_cast<std::size_t>(n)] -
                       ana.by_total[static_cast<std::size_t>(n)]) < 1e-9);
    }
    CHECK(emp.off_pair_residual == 0.0);
    CHECK(emp.rows[1].pair_occupations == std::vector<int>{1});

    const StateVector psi = dressed_representation(vp);
    const auto at = [&](int n, int m) {
        const std::vector<int> occ{n, m};
        return psi.amplitudes[static_cast<Eigen::Index>(sp->index_of(occ))];
    };
    CHECK(std::abs(at(0, 0).real() - 1.0 / std::cosh(eps)) < 1e-10);
    CHECK(std::abs(at(1, 1).real() / at(0, 0).real() - std::tanh(eps))
          < 1e-12);
    CHECK(at(1, 1).real() > 0.0);
}

TEST_CASE("expansion terms carry the condensate norms") {
    const double eps = 0.3;
    const SpacePtr sp = pair_space(16);
    const VacuumPair vp = epsilon_vacuum(sp, one_pair(eps), 1e-8);

    const ExpansionTerm t0 = expansion_term(vp, 0);
    const ExpansionTerm t1 = expansion_term(vp, 1);
    CHECK(std::abs(t0.raw_norm - 1.0 / std::cosh(eps)) < 1e-10);
    CHECK(std::abs(t1.raw_norm - std::tanh(eps) / std::cosh(eps)) < 1e-10);
    CHECK(std::abs(norm(t1.state) - 1.0) < 1e-12);

    const std::vector<int> occ11{1, 1};
    const StateVector unit = basis_state(sp, occ11);
    CHECK(std::abs(std::abs(inner(unit, t1.state)) - 1.0) < 1e-10);

    CHECK_THROWS_AS(expansion_term(vp, -1), validation_error);
    const SpacePtr tiny = pair_space(4);
    const VacuumPair small = minkowski_pair(tiny, one_pair(eps));
    CHECK_THROWS_AS(expansion_term(small, 5), validation_error);
}

TEST_CASE("bell structure of the total_n = 1 component") {
    for (double eps : {0.1, 1.0}) {
        const SpacePtr sp = make_pair_space({MomentumSpec{0, 0, eps}}, 10);
        const SqueezeSet s = standard_squeeze_set({MomentumSpec{0, 0, eps}});
        const VacuumPair vp = minkowski_pair(sp, s);
        CHECK(std::abs(bell_structure_check(vp) - 1.0) < 1e-12);
    }

    const SpacePtr sp0 = make_pair_space({MomentumSpec{0, 0, 0.0}}, 4);
    const VacuumPair vp0 =
        minkowski_pair(sp0, standard_squeeze_set({MomentumSpec{0, 0, 0.0}}));
    CHECK_THROWS_AS(bell_structure_check(vp0), validation_error);

    const VacuumPair narrow = minkowski_pair(pair_space(4), one_pair(0.3));
    CHECK_THROWS_AS(bell_structure_check(narrow), validation_error);
}

TEST_CASE("sector bipartition entropy matches the mode entropy sum") {
    const SpacePtr sp = pair_space(32);
    const VacuumPair vp = epsilon_vacuum(sp, one_pair(0.5), 1e-10);
    CHECK(std::abs(sector_entanglement_entropy(vp) - mode_entropy(0.5))
          < 1e-8);

    const double eps = 0.3;
    const SpacePtr four = make_pair_space({MomentumSpec{0, 0, eps}}, 18);
    const SqueezeSet both = standard_squeeze_set({MomentumSpec{0, 0, eps}});
    const VacuumPair vp4 = epsilon_vacuum(four, both, 1e-9);
    CHECK(std::abs(sector_entanglement_entropy(vp4) - 2.0 * mode_entropy(eps))
          < 1e-8);

    const WnTable emp = wn_from_state(vp4);
    const WnTable ana = wn_analytic(both, 6);
    for (std::size_t n = 0; n < 7; ++n) {
        CHECK(std::abs(emp.by_total[n] - ana.by_total[n]) < 1e-8);
    }
}
