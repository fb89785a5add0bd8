// test_fock_core.cpp
// Fock space core: indexing, ladder operators, safe-subspace helpers,
// exp_apply, and reduced density matrices.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "qfock/density.hpp"
#include "qfock/errors.hpp"
#include "qfock/exp_apply.hpp"
#include "qfock/fock.hpp"
#include "qfock/operators.hpp"

using namespace qfock;

namespace {

SpacePtr one_mode(int cutoff) {
    return build_space({ModeId{0, Sector::plus, Species::particle}}, cutoff);
}

} // namespace

TEST_CASE("space layout and index bijection") {
    const std::vector<ModeId> modes = {
        {0, Sector::plus, Species::particle},
        {0, Sector::minus, Species::antiparticle},
        {1, Sector::plus, Species::particle},
    };
    const SpacePtr sp = build_space(modes, {2, 3, 1});
    CHECK(sp->dim() == 3u * 4u * 2u);
    CHECK(sp->n_modes() == 3u);
    CHECK(sp->mode(1) == modes[1]);
    CHECK(sp->mode_position(modes[2]) == 2u);
    CHECK(sp->has_mode(modes[0]));
    CHECK(!sp->has_mode(ModeId{9, Sector::plus, Species::particle}));

    for (std::size_t i = 0; i < sp->dim(); ++i) {
        CHECK(sp->index_of(sp->occupations_of(i)) == i);
    }

    const std::vector<int> occ{1, 0, 0};
    CHECK(sp->index_of(occ) == 4u * 2u);
    CHECK_THROWS_AS(sp->mode_position(ModeId{9, Sector::plus,
                                             Species::particle}),
                    validation_error);
}

TEST_CASE("bad spaces are rejected") {
    const ModeId m{0, Sector::plus, Species::particle};
    CHECK_THROWS_AS(build_space({m, m}, 3), validation_error);
    CHECK_THROWS_AS(build_space({m}, 0), validation_error);
    CHECK_THROWS_AS(build_space({}, 3), validation_error);

    std::vector<ModeId> many;
    for (int i = 0; i < 8; ++i) {
        many.push_back(ModeId{i, Sector::plus, Species::particle});
    }
    CHECK_THROWS_AS(build_space(many, 9), resource_error);
}

TEST_CASE("ladder operator matrix elements") {
    const SpacePtr sp = one_mode(5);
    const ModeId m = sp->mode(0);
    const Operator a = annihilation_op(sp, m);
    const Operator ad = creation_op(sp, m);
    const Operator n = number_op(sp, m);

    for (int k = 1; k <= 5; ++k) {
        CHECK(std::abs(a.matrix.coeff(k - 1, k) - cd{std::sqrt(double(k)), 0.0})
              < 1e-15);
    }
    CHECK(max_abs(ad - adjoint(a)) == 0.0);
    CHECK(max_abs(n - ad * a) < 1e-14);
    CHECK_THROWS_AS(
        annihilation_op(sp, ModeId{7, Sector::plus, Species::particle}),
        validation_error);
}

TEST_CASE("ccr defect is confined to the top rung") {
    const SpacePtr sp = one_mode(6);
    const ModeId m = sp->mode(0);
    const Operator c =
        commutator(annihilation_op(sp, m), creation_op(sp, m)) -
        identity_op(sp);
    CHECK(max_colnorm_on(c, safe_indices_margin(*sp, 1)) < 1e-14);
    CHECK(max_abs(c) == doctest::Approx(7.0).epsilon(1e-14));
}

TEST_CASE("safe index helpers follow their occupation rules") {
    const SpacePtr sp = build_space(
        {ModeId{0, Sector::plus, Species::particle},
         ModeId{0, Sector::minus, Species::antiparticle}},
        3);
    const auto margin1 = safe_indices_margin(*sp, 1);
    CHECK(margin1.size() == 9u);
    for (std::size_t i : margin1) {
        for (int o : sp->occupations_of(i)) CHECK(o <= 2);
    }
    const auto cap1 = safe_indices_cap(*sp, 1);
    CHECK(cap1.size() == 4u);
}

TEST_CASE("hermiticity verification sets flags") {
    const SpacePtr sp = one_mode(5);
    const ModeId m = sp->mode(0);
    Operator n = number_op(sp, m);
    CHECK(verify_hermitian(n, 1e-12));
    CHECK(n.hermitian);

    Operator x = annihilation_op(sp, m) - creation_op(sp, m);
    CHECK(verify_anti_hermitian(x, 1e-12));
    CHECK(x.anti_hermitian);
    CHECK(!verify_hermitian(x, 1e-12));
}

TEST_CASE("expectation and inner products") {
    const SpacePtr sp = one_mode(4);
    const ModeId m = sp->mode(0);
    const std::vector<int> occ{3};
    const StateVector v = basis_state(sp, occ);
    CHECK(norm(v) == 1.0);
    CHECK(std::abs(expectation(number_op(sp, m), v) - cd{3.0, 0.0}) < 1e-15);
    const StateVector w = apply(annihilation_op(sp, m), v);
    CHECK(std::abs(norm(w) - std::sqrt(3.0)) < 1e-15);
    CHECK(std::abs(inner(v, v) - cd{1.0, 0.0}) < 1e-15);
}

TEST_CASE("exp_apply reproduces number-operator phases") {
    const SpacePtr sp = one_mode(6);
    const ModeId m = sp->mode(0);
    const double theta = 0.7;
    Operator gen = cd{0.0, theta} * number_op(sp, m);
    CHECK(verify_anti_hermitian(gen, 1e-12));

    StateVector v = zero_state(sp);
    for (int n = 0; n <= 6; ++n) v.amplitudes[n] = 1.0 / std::sqrt(7.0);
    const ExpApplyResult r = exp_apply(gen, v, 1e-14);
    for (int n = 0; n <= 6; ++n) {
        const cd want =
            std::exp(cd{0.0, theta * n}) / std::sqrt(7.0);
        CHECK(std::abs(r.state.amplitudes[n] - want) < 1e-13);
    }
    CHECK(r.report.leaked_norm < 1e-12);
}

TEST_CASE("exp_apply of the zero operator is the identity") {
    const SpacePtr sp = one_mode(4);
    const std::vector<int> occ{2};
    const StateVector v = basis_state(sp, occ);
    const ExpApplyResult r = exp_apply(zero_op(sp), v, 1e-14);
    CHECK((r.state.amplitudes - v.amplitudes).norm() == 0.0);
}

TEST_CASE("partial trace of a bell pair is maximally mixed") {
    const SpacePtr sp = build_space(
        {ModeId{0, Sector::plus, Species::particle},
         ModeId{0, Sector::minus, Species::antiparticle}},
        1);
    StateVector v = zero_state(sp);
    const std::vector<int> occ00{0, 0};
    const std::vector<int> occ11{1, 1};
    v.amplitudes[static_cast<Eigen::Index>(sp->index_of(occ00))] =
        1.0 / std::sqrt(2.0);
    v.amplitudes[static_cast<Eigen::Index>(sp->index_of(occ11))] =
        1.0 / std::sqrt(2.0);

    const DensityMatrix rho = partial_trace(v, {sp->mode(0)});
    CHECK(rho.entries.rows() == 2);
    CHECK(std::abs(trace_real(rho) - 1.0) < 1e-15);
    CHECK(std::abs(purity(rho) - 0.5) < 1e-15);
    CHECK(std::abs(von_neumann_entropy(rho) - std::log(2.0)) < 1e-12);

    CHECK_THROWS_AS(partial_trace(v, {}), validation_error);
    CHECK_THROWS_AS(partial_trace(v, {sp->mode(0), sp->mode(1)}),
                    validation_error);
}

TEST_CASE("von neumann entropy rejects negative spectra") {
    DensityMatrix rho;
    rho.kept_modes = {ModeId{0, Sector::plus, Species::particle}};
    rho.kept_cutoffs = {1};
    rho.entries = Eigen::MatrixXcd::Zero(2, 2);
    rho.entries(0, 0) = 1.1;
    rho.entries(1, 1) = -0.1;
    CHECK_THROWS_AS(von_neumann_entropy(rho), numeric_error);

    rho.entries(0, 0) = 1.0;
    rho.entries(1, 1) = 0.0;
    CHECK(von_neumann_entropy(rho) == 0.0);
}
