// test_bogoliubov.cpp
// Pair layout, smearing, the squeezing generator, and dressed operators
// in closed and conjugated form.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "qfock/bogoliubov.hpp"
#include "qfock/errors.hpp"

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

TEST_CASE("standard pair space layout") {
    const SpacePtr sp = make_pair_space({MomentumSpec{0, 0, 0.3}}, 2);
    CHECK(sp->dim() == 81u);
    CHECK(sp->n_modes() == 4u);
    CHECK(sp->mode(0) == ModeId{0, Sector::plus, Species::particle});
    CHECK(sp->mode(1) == ModeId{0, Sector::plus, Species::antiparticle});
    CHECK(sp->mode(2) == ModeId{0, Sector::minus, Species::particle});
    CHECK(sp->mode(3) == ModeId{0, Sector::minus, Species::antiparticle});

    const SqueezeSet s = standard_squeeze_set({MomentumSpec{0, 0, 0.3}});
    CHECK(s.pairs.size() == 2u);
    CHECK(s.pairs[0].sector == Sector::plus);
    CHECK(s.pairs[1].sector == Sector::minus);
    CHECK(s.pairs[0].epsilon == 0.3);
    CHECK(s.pairs[0].antiparticle_mode() ==
          ModeId{0, Sector::minus, Species::antiparticle});
    CHECK(s.pairs[1].antiparticle_mode() ==
          ModeId{0, Sector::plus, Species::antiparticle});
    CHECK_NOTHROW(validate_squeeze(sp, s));
}

TEST_CASE("sigma-plus modes come first across momenta") {
    const SpacePtr sp = make_pair_space(
        {MomentumSpec{0, 1, 0.1}, MomentumSpec{2, 3, 0.2}}, 1);
    CHECK(sp->n_modes() == 8u);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(sp->mode(i).sector == Sector::plus);
        CHECK(sp->mode(i + 4).sector == Sector::minus);
    }
    CHECK(sp->mode(1) == ModeId{1, Sector::plus, Species::antiparticle});
    CHECK(sp->mode(2) == ModeId{2, Sector::plus, Species::particle});
}

TEST_CASE("squeeze validation rejects bad pairings") {
    const SpacePtr sp = pair_space(3);
    CHECK_THROWS_AS(
        validate_squeeze(sp, SqueezeSet{{PairSpec{0, 0, Sector::minus, 0.1}}}),
        validation_error);

    SqueezeSet twice{{PairSpec{0, 0, Sector::plus, 0.1},
                      PairSpec{0, 0, Sector::plus, 0.2}}};
    CHECK_THROWS_AS(validate_squeeze(sp, twice), validation_error);
}

TEST_CASE("generator matrix elements and anti-hermiticity") {
    const double eps = 0.3;
    const SpacePtr sp = pair_space(3);
    const Operator g = generator(sp, one_pair(eps));
    CHECK(g.anti_hermitian);

    const auto idx = [&](int n, int m) {
        const std::vector<int> occ{n, m};
        return static_cast<Eigen::Index>(sp->index_of(occ));
    };
    CHECK(std::abs(g.matrix.coeff(idx(0, 0), idx(1, 1)) - cd{eps, 0.0})
          < 1e-15);
    CHECK(std::abs(g.matrix.coeff(idx(1, 1), idx(2, 2)) - cd{2.0 * eps, 0.0})
          < 1e-15);
    CHECK(std::abs(g.matrix.coeff(idx(1, 1), idx(0, 0)) + cd{eps, 0.0})
          < 1e-15);
    CHECK(std::abs(g.matrix.coeff(idx(1, 0), idx(0, 1))) == 0.0);
}

TEST_CASE("closed-form dressed operators") {
    const double eps = 0.4;
    const SpacePtr sp = pair_space(5);
    const auto pairs = dressed_ops_closed(sp, one_pair(eps));
    REQUIRE(pairs.size() == 1u);

    const Operator a = annihilation_op(sp, sp->mode(0));
    const Operator b = annihilation_op(sp, sp->mode(1));
    const Operator want_d =
        std::cosh(eps) * a + std::sinh(eps) * adjoint(b);
    const Operator want_dbar =
        std::cosh(eps) * b + std::sinh(eps) * adjoint(a);
    CHECK(max_abs(pairs[0].d - want_d) < 1e-15);
    CHECK(max_abs(pairs[0].dbar - want_dbar) < 1e-15);

    const auto undressed = dressed_ops_closed(sp, one_pair(0.0));
    CHECK(max_abs(undressed[0].d - a) == 0.0);
    CHECK(max_abs(undressed[0].dbar - b) == 0.0);
}

TEST_CASE("smearing with a unitary matrix") {
    const SpacePtr sp = build_space(
        {ModeId{0, Sector::plus, Species::particle},
         ModeId{1, Sector::plus, Species::particle}},
        3);
    const std::vector<Operator> ops = {annihilation_op(sp, sp->mode(0)),
                                       annihilation_op(sp, sp->mode(1))};

    Eigen::MatrixXcd ident = Eigen::MatrixXcd::Identity(2, 2);
    const auto same = smear(ident, ops);
    CHECK(max_abs(same[0] - ops[0]) == 0.0);
    CHECK(max_abs(same[1] - ops[1]) == 0.0);

    const double c = std::cos(std::numbers::pi / 4.0);
    const double s = std::sin(std::numbers::pi / 4.0);
    Eigen::MatrixXcd f(2, 2);
    f << cd{c, 0.0}, cd{-s, 0.0}, cd{s, 0.0}, cd{c, 0.0};
    const auto rot = smear(f, ops);
    const Operator want = c * ops[0] + s * ops[1];
    CHECK(max_abs(rot[0] - want) < 1e-15);

    const auto margin1 = safe_indices_margin(*sp, 1);
    const Operator ccr =
        commutator(rot[0], adjoint(rot[0])) - identity_op(sp);
    CHECK(max_colnorm_on(ccr, margin1) < 1e-14);
    const Operator cross = commutator(rot[0], adjoint(rot[1]));
    CHECK(max_colnorm_on(cross, margin1) < 1e-14);

    Eigen::MatrixXcd bad(2, 2);
    bad << cd{1.0, 0.0}, cd{0.0, 0.0}, cd{0.0, 0.0}, cd{2.0, 0.0};
    CHECK_THROWS_AS(smear(bad, ops), validation_error);
    Eigen::MatrixXcd wrong_size = Eigen::MatrixXcd::Identity(3, 3);
    CHECK_THROWS_AS(smear(wrong_size, ops), validation_error);
}

TEST_CASE("conjugated dressing matches the closed form on a low block") {
    const double eps = 0.3;
    const SpacePtr sp = pair_space(16);
    const SqueezeSet s = one_pair(eps);
    const Operator d = annihilation_op(sp, sp->mode(0));
    const Operator conj = dressed_ops_conjugated(sp, s, d, 1e-12);
    const Operator closed = dressed_ops_closed(sp, s)[0].d;
    const auto low = safe_indices_cap(*sp, 3);
    CHECK(max_block_colnorm(conj - closed, low) < 1e-6);
}

TEST_CASE("conjugation by the identity squeeze is exact") {
    const SpacePtr sp = pair_space(6);
    const Operator d = annihilation_op(sp, sp->mode(0));
    const Operator conj = dressed_ops_conjugated(sp, one_pair(0.0), d, 1e-12);
    CHECK(max_abs(conj - d) < 1e-14);
}

TEST_CASE("conjugation refuses spaces beyond the column budget") {
    const SpacePtr sp = pair_space(70);
    CHECK(sp->dim() == 5041u);
    const Operator d = annihilation_op(sp, sp->mode(0));
    CHECK_THROWS_AS(dressed_ops_conjugated(sp, one_pair(0.1), d, 1e-10),
                    resource_error);
}
