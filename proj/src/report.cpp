// report.cpp
// Experiment runners producing deterministic rows and invariant verdicts,
// plus CSV/JSON emission and JSON round-trip parsing.

#include "qfock/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "qfock/bogoliubov.hpp"
#include "qfock/density.hpp"
#include "qfock/entangle.hpp"
#include "qfock/errors.hpp"
#include "qfock/exp_apply.hpp"
#include "qfock/fock.hpp"
#include "qfock/operators.hpp"
#include "qfock/qhopf.hpp"
#include "qfock/thermo.hpp"
#include "qfock/vacuum.hpp"

namespace qfock {

namespace {

using nlohmann::ordered_json;

Cell num(double v) { return Cell{v}; }
Cell idx(long long v) { return Cell{v}; }
Cell txt(std::string v) { return Cell{std::move(v)}; }

void add_value_invariant(ReportRecord& rec, std::string name, double value,
                         double tolerance) {
    rec.invariants.push_back(
        {std::move(name), value <= tolerance, value, tolerance});
}

void add_flag_invariant(ReportRecord& rec, std::string name, bool ok) {
    rec.invariants.push_back({std::move(name), ok, ok ? 0.0 : 1.0, 0.5});
}

void push_check(ReportRecord& rec, std::string check, std::string parameter,
                double residual, double tolerance) {
    rec.rows.push_back({txt(std::move(check)), txt(std::move(parameter)),
                        num(residual), num(tolerance)});
}

std::string param_eps(double e) { return "epsilon=" + format_double(e); }

std::string param_q(double q) { return "q=" + format_double(q); }

double max_abs_matrix_diff(const SparseCd& a, const SparseCd& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw validation_error("max_abs_matrix_diff: dimension mismatch");
    }
    SparseCd d = a;
    d -= b;
    double m = 0.0;
    for (Eigen::Index k = 0; k < d.outerSize(); ++k) {
        for (SparseCd::InnerIterator it(d, k); it; ++it) {
            m = std::max(m, std::abs(it.value()));
        }
    }
    return m;
}

double state_diff_norm(const StateVector& u, const StateVector& v) {
    require_same_space(u.space, v.space, "state_diff_norm");
    return (u.amplitudes - v.amplitudes).norm();
}

// Least-squares slope of y against x (with intercept); single points fall
// back to the through-origin slope.
double ls_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.empty()) {
        throw validation_error("ls_slope: mismatched or empty samples");
    }
    if (xs.size() == 1) return ys[0] / xs[0];
    const double n = static_cast<double>(xs.size());
    double xbar = 0.0;
    double ybar = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xbar += xs[i];
        ybar += ys[i];
    }
    xbar /= n;
    ybar /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - xbar) * (xs[i] - xbar);
        sxy += (xs[i] - xbar) * (ys[i] - ybar);
    }
    return sxy / sxx;
}

// Smallest cutoff N with sqrt(2) omega cosh(eps) (N+1) tanh^N(eps) < tol/4,
// the residual model for ||H_eps |0(eps)>||.
int h_eps_cutoff(double eps, double omega, double tol) {
    const double t = std::tanh(std::abs(eps));
    const double c = std::sqrt(2.0) * std::max(omega, 1e-12) * std::cosh(eps);
    int n = 2;
    while (c * (n + 1) * std::pow(t, n) >= 0.25 * tol && n < 200) ++n;
    return n;
}

void require_momenta(const RunConfig& cfg) {
    if (cfg.momenta.empty()) {
        throw validation_error("run_experiment: momenta must not be empty");
    }
    if (!(cfg.tolerance > 0.0)) {
        throw validation_error("run_experiment: tolerance must be positive");
    }
}

SpacePtr single_mode_space(int cutoff) {
    return build_space({ModeId{0, Sector::plus, Species::particle}}, cutoff);
}

SpacePtr single_pair_space(int cutoff) {
    const PairSpec p{0, 0, Sector::plus, 0.0};
    return build_space({p.particle_mode(), p.antiparticle_mode()}, cutoff);
}

SqueezeSet single_pair_squeeze(double eps) {
    return SqueezeSet{{PairSpec{0, 0, Sector::plus, eps}}};
}

// ---------------------------------------------------------------------
// algebra-check
// ---------------------------------------------------------------------

ReportRecord run_algebra_check(const RunConfig& cfg) {
    ReportRecord rec;
    rec.experiment = "algebra-check";
    rec.columns = {"check", "parameter", "residual", "tolerance"};

    const int cutoff = cfg.cutoff.value_or(16);
    if (cutoff < 4) {
        throw validation_error("algebra-check: cutoff must be at least 4");
    }

    const SpacePtr space = single_mode_space(cutoff);
    const ModeId mode = space->mode(0);
    const Operator a = annihilation_op(space, mode);
    const Operator ad = creation_op(space, mode);
    const Operator n_op = number_op(space, mode);
    const Operator id = identity_op(space);
    const auto safe1 = safe_indices_margin(*space, 1);

    const std::vector<double> q_list = {0.5, 1.0, 1.5, 2.0, std::exp(1.0)};

    double ccr = 0.0;
    {
        const double r1 = max_colnorm_on(commutator(a, ad) - id, safe1);
        const double r2 = max_colnorm_on(commutator(n_op, a) + a, safe1);
        const double r3 = max_colnorm_on(commutator(n_op, ad) - ad, safe1);
        push_check(rec, "ccr_identity", "[a,a+]-1", r1, 1e-10);
        push_check(rec, "number_lowering", "[N,a]+a", r2, 1e-10);
        push_check(rec, "number_raising", "[N,a+]-a+", r3, 1e-10);
        ccr = std::max({r1, r2, r3});
    }

    double cas = max_abs(casimir(space));
    push_check(rec, "casimir", "fundamental", cas, 1e-12);
    for (double q : q_list) {
        const double r = max_abs(casimir_q(space, QParam::from_q(q)));
        push_check(rec, "casimir_q", param_q(q), r, 1e-12);
        cas = std::max(cas, r);
    }

    const DoubledSpace doub = make_doubled(space);
    const double dim_defect = std::abs(
        static_cast<double>(doub.doubled->dim()) -
        static_cast<double>(space->dim()) * static_cast<double>(space->dim()));
    push_check(rec, "doubled_dimension", "dim=base^2", dim_defect, 0.5);

    const Operator a_plus = embed_plus(doub, a);
    const Operator a_minus = embed_minus(doub, a);
    const double sector_comm =
        std::max(max_abs(commutator(a_plus, adjoint(a_minus))),
                 max_abs(commutator(a_plus, a_minus)));
    push_check(rec, "sector_commutation", "[a(+),a(-)]", sector_comm, 1e-15);

    const Operator id2 = identity_op(doub.doubled);
    const auto safe2 = safe_indices_margin(*doub.doubled, 1);
    const Operator delta_plain = coproduct_plain(a, doub);

    double hom = 0.0;
    double q1_red = 0.0;
    double adj_cons = 0.0;
    for (double q : q_list) {
        const QParam qp = QParam::from_q(q);
        const Operator da =
            coproduct_deformed(doub, qp, mode, LadderKind::annihilation);
        const Operator target = q_number(2.0, qp) * id2;
        const double r =
            max_colnorm_on(commutator(da, adjoint(da)) - target, safe2);
        push_check(rec, "coproduct_ccr", param_q(q), r, 1e-10);
        hom = std::max(hom, r);

        const Operator dc =
            coproduct_deformed(doub, qp, mode, LadderKind::creation);
        const double ra = max_abs(dc - adjoint(da));
        adj_cons = std::max(adj_cons, ra);

        if (q == 1.0) {
            q1_red = max_abs(da - delta_plain);
            push_check(rec, "q1_reduction", param_q(q), q1_red, 1e-15);
        }
    }
    push_check(rec, "coproduct_adjoint", "creation=adjoint(annihilation)",
               adj_cons, 1e-15);

    double continuity = 0.0;
    {
        const auto defect = [&](double e) {
            const Operator da = coproduct_deformed(
                doub, QParam::from_epsilon(e), mode, LadderKind::annihilation);
            return max_abs(da - delta_plain);
        };
        const double v3 = defect(1e-3);
        const double v4 = defect(1e-4);
        continuity = std::abs(v3 / v4 - 10.0);
        push_check(rec, "continuity_q_to_1", "ratio(1e-3/1e-4)-10",
                   continuity, 0.1);
    }

    double qsym = 0.0;
    {
        const std::vector<double> xs = {0.5, 1.0, 2.7};
        for (double q : {0.5, 2.0, std::exp(1.0)}) {
            const QParam qp = QParam::from_q(q);
            const QParam qpi = QParam::from_q(1.0 / q);
            for (double x : xs) {
                qsym = std::max(
                    qsym, std::abs(q_number(x, qp) + q_number(-x, qp)));
                qsym = std::max(
                    qsym, std::abs(q_number(x, qp) - q_number(x, qpi)));
            }
        }
        push_check(rec, "q_number_symmetry", "odd,inversion", qsym, 1e-12);
    }

    double qcons = 0.0;
    {
        const QParam qe = QParam::from_epsilon(0.3);
        const QParam qq = QParam::from_q(2.0);
        qcons = std::max(std::abs(qe.q - std::exp(0.6)),
                         std::abs(std::exp(2.0 * qq.epsilon) - 2.0));
        push_check(rec, "qparam_consistency", "q=exp(2 epsilon)", qcons, 1e-14);
    }

    add_value_invariant(rec, "ccr_identity", ccr, 1e-10);
    add_value_invariant(rec, "casimir_zero", cas, 1e-12);
    add_value_invariant(rec, "doubled_dimension", dim_defect, 0.5);
    add_value_invariant(rec, "sector_commutation", sector_comm, 1e-15);
    add_value_invariant(rec, "coproduct_homomorphism", hom, 1e-10);
    add_value_invariant(rec, "q1_reduction", q1_red, 1e-15);
    add_value_invariant(rec, "coproduct_adjoint", adj_cons, 1e-15);
    add_value_invariant(rec, "continuity_q_to_1", continuity, 0.1);
    add_value_invariant(rec, "q_number_symmetry", qsym, 1e-12);
    add_value_invariant(rec, "qparam_consistency", qcons, 1e-14);
    return rec;
}

// ---------------------------------------------------------------------
// bogoliubov-check
// ---------------------------------------------------------------------

ReportRecord run_bogoliubov_check(const RunConfig& cfg) {
    ReportRecord rec;
    rec.experiment = "bogoliubov-check";
    rec.columns = {"check", "parameter", "residual", "tolerance"};
    (void)cfg;

    double ccr_closed = 0.0;
    double cross = 0.0;
    {
        const SpacePtr sp = single_pair_space(12);
        const Operator id = identity_op(sp);
        const auto safe1 = safe_indices_margin(*sp, 1);
        for (double e : {0.0, 0.1, 0.5, 1.0}) {
            const SqueezeSet s = single_pair_squeeze(e);
            const DressedPair dp = dressed_ops_closed(sp, s).front();
            const double r1 =
                max_colnorm_on(commutator(dp.d, adjoint(dp.d)) - id, safe1);
            const double r2 = max_colnorm_on(
                commutator(dp.dbar, adjoint(dp.dbar)) - id, safe1);
            const double r3 = std::max(
                max_colnorm_on(commutator(dp.d, dp.dbar), safe1),
                max_colnorm_on(commutator(dp.d, adjoint(dp.dbar)), safe1));
            push_check(rec, "ccr_closed", param_eps(e), std::max(r1, r2),
                       1e-10);
            push_check(rec, "cross_commutators", param_eps(e), r3, 1e-10);
            ccr_closed = std::max({ccr_closed, r1, r2});
            cross = std::max(cross, r3);
        }
    }

    double first_order = 0.0;
    double bch2 = 0.0;
    double antih = 0.0;
    bool flagged = true;
    {
        const SpacePtr sp = single_pair_space(12);
        const double e = 0.3;
        const SqueezeSet s = single_pair_squeeze(e);
        const Operator g = generator(sp, s);
        const PairSpec& p = s.pairs.front();
        const Operator d_plain = annihilation_op(sp, p.particle_mode());
        const Operator db_plain = annihilation_op(sp, p.antiparticle_mode());
        const auto safe1 = safe_indices_margin(*sp, 1);
        const auto safe2 = safe_indices_margin(*sp, 2);

        first_order = max_colnorm_on(
            commutator(g, d_plain) - e * adjoint(db_plain), safe1);
        push_check(rec, "first_order_action", "[g,d]-eps dbar+", first_order,
                   1e-12);

        bch2 = max_colnorm_on(
            0.5 * commutator(g, commutator(g, d_plain)) -
                (0.5 * e * e) * d_plain,
            safe2);
        push_check(rec, "bch_order2", param_eps(e), bch2, 1e-10);

        antih = max_abs(g + adjoint(g));
        push_check(rec, "generator_antihermitian", param_eps(e), antih, 1e-15);
        flagged = g.anti_hermitian;

        const double g0 = max_abs(generator(sp, single_pair_squeeze(0.0)));
        push_check(rec, "generator_eps0", "g(0)=0", g0, 0.0);
        antih = std::max(antih, g0);
    }

    double composition = 0.0;
    {
        const SpacePtr sp = single_pair_space(12);
        const DressedPair d1 =
            dressed_ops_closed(sp, single_pair_squeeze(0.2)).front();
        const DressedPair dt =
            dressed_ops_closed(sp, single_pair_squeeze(0.5)).front();
        const Operator d12 =
            std::cosh(0.3) * d1.d + std::sinh(0.3) * adjoint(d1.dbar);
        const Operator db12 =
            std::cosh(0.3) * d1.dbar + std::sinh(0.3) * adjoint(d1.d);
        composition =
            std::max(max_abs(d12 - dt.d), max_abs(db12 - dt.dbar));
        push_check(rec, "composition", "0.2 then 0.3 = 0.5", composition,
                   1e-10);
    }

    double conj_oracle = 0.0;
    double conj_ccr = 0.0;
    for (double e : {0.0, 0.1, 0.3, 0.5}) {
        const int cutoff = std::max(
            20, 4 + static_cast<int>(
                        std::ceil(2.6 * plan_cutoff(std::abs(e), 1e-8))));
        const SpacePtr sp = single_pair_space(cutoff);
        const SqueezeSet s = single_pair_squeeze(e);
        const DressedPair dp = dressed_ops_closed(sp, s).front();
        const Operator id = identity_op(sp);
        const auto cap4 = safe_indices_cap(*sp, 4);

        const Operator d_plain =
            annihilation_op(sp, s.pairs.front().particle_mode());
        const Operator wd = dressed_ops_conjugated(sp, s, d_plain, 1e-10);
        double r_or = max_block_colnorm(wd - dp.d, cap4);
        double r_cc = max_block_colnorm(
            commutator(wd, adjoint(wd)) - id, cap4);
        if (e == 0.3) {
            const Operator db_plain =
                annihilation_op(sp, s.pairs.front().antiparticle_mode());
            const Operator wdb =
                dressed_ops_conjugated(sp, s, db_plain, 1e-10);
            r_or = std::max(r_or, max_block_colnorm(wdb - dp.dbar, cap4));
            r_cc = std::max(r_cc,
                            max_block_colnorm(
                                commutator(wdb, adjoint(wdb)) - id, cap4));
        }
        push_check(rec, "conjugation_oracle", param_eps(e), r_or, 1e-8);
        push_check(rec, "ccr_conjugated", param_eps(e), r_cc, 1e-8);
        conj_oracle = std::max(conj_oracle, r_or);
        conj_ccr = std::max(conj_ccr, r_cc);
    }

    double charge_gen = 0.0;
    double charge_conj = 0.0;
    {
        const double e = 0.3;
        const SpacePtr sp = single_pair_space(20);
        const SqueezeSet s = single_pair_squeeze(e);
        const PairSpec& p = s.pairs.front();
        const Operator q_op = number_op(sp, p.particle_mode()) -
                              number_op(sp, p.antiparticle_mode());
        const Operator g = generator(sp, s);
        charge_gen =
            max_colnorm_on(commutator(g, q_op), safe_indices_margin(*sp, 1));
        push_check(rec, "charge_generator", param_eps(e), charge_gen, 1e-12);

        const Operator wq = dressed_ops_conjugated(sp, s, q_op, 1e-10);
        charge_conj = max_block_colnorm(wq - q_op, safe_indices_cap(*sp, 4));
        push_check(rec, "charge_conjugation", param_eps(e), charge_conj, 1e-8);
    }

    double iso_rec = 0.0;
    double iso_asm = 0.0;
    double iso_det = 0.0;
    {
        const SpacePtr base = single_mode_space(12);
        const ModeId mode = base->mode(0);
        const DoubledSpace doub = make_doubled(base);
        const Operator a = annihilation_op(base, mode);
        const SpacePtr pair_sp = single_pair_space(12);
        for (double e : {0.1, 0.5}) {
            const QParam qp = QParam::from_epsilon(e);
            const QParam qpi = QParam::from_epsilon(-e);
            const Operator da =
                coproduct_deformed(doub, qp, mode, LadderKind::annihilation);
            const Operator dai =
                coproduct_deformed(doub, qpi, mode, LadderKind::annihilation);
            const SectorIsolation iso = sector_isolation_matrix(qp);

            const Operator ap =
                iso.m_inv[0][0] * da + iso.m_inv[0][1] * dai;
            const Operator am =
                iso.m_inv[1][0] * da + iso.m_inv[1][1] * dai;
            const double r_rec =
                std::max(max_abs(ap - embed_plus(doub, a)),
                         max_abs(am - embed_minus(doub, a)));
            push_check(rec, "isolation_reconstruct", param_eps(e), r_rec,
                       1e-12);
            iso_rec = std::max(iso_rec, r_rec);

            const Operator assembled =
                std::cosh(e) * ap + std::sinh(e) * adjoint(am);
            const DressedPair closed =
                dressed_ops_closed(pair_sp, single_pair_squeeze(e)).front();
            const double r_asm =
                max_abs_matrix_diff(assembled.matrix, closed.d.matrix);
            push_check(rec, "isolation_assembly", param_eps(e), r_asm, 1e-10);
            iso_asm = std::max(iso_asm, r_asm);

            const double r_det = std::abs(iso.det - 2.0 * std::sinh(2.0 * e));
            push_check(rec, "isolation_det", param_eps(e), r_det, 1e-14);
            iso_det = std::max(iso_det, r_det);
        }
    }

    bool eps0_rejected = false;
    try {
        (void)sector_isolation_matrix(QParam::from_epsilon(0.0));
    } catch (const validation_error&) {
        eps0_rejected = true;
    }
    push_check(rec, "isolation_rejects_eps0", "epsilon=0",
               eps0_rejected ? 0.0 : 1.0, 0.5);

    double smear_ccr = 0.0;
    bool smear_rejects = false;
    {
        const SpacePtr sp = build_space(
            {ModeId{0, Sector::plus, Species::particle},
             ModeId{1, Sector::plus, Species::particle}},
            10);
        const Operator a0 = annihilation_op(sp, sp->mode(0));
        const Operator a1 = annihilation_op(sp, sp->mode(1));
        const Operator id = identity_op(sp);
        const auto safe1 = safe_indices_margin(*sp, 1);
        const double th = std::atan(1.0);
        Eigen::MatrixXcd f(2, 2);
        f << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
        const std::vector<Operator> ds = smear(f, {a0, a1});
        for (std::size_t i = 0; i < ds.size(); ++i) {
            for (std::size_t j = 0; j < ds.size(); ++j) {
                Operator c = commutator(ds[i], adjoint(ds[j]));
                if (i == j) c = c - id;
                smear_ccr = std::max(smear_ccr, max_colnorm_on(c, safe1));
            }
        }
        push_check(rec, "smear_ccr", "rotation pi/4", smear_ccr, 1e-12);

        Eigen::MatrixXcd bad = f;
        bad(0, 0) *= 1.1;
        try {
            (void)smear(bad, {a0, a1});
        } catch (const validation_error&) {
            smear_rejects = true;
        }
        push_check(rec, "smear_rejects_nonunitary", "scaled row",
                   smear_rejects ? 0.0 : 1.0, 0.5);
    }

    add_value_invariant(rec, "ccr_closed", ccr_closed, 1e-10);
    add_value_invariant(rec, "cross_commutators", cross, 1e-10);
    add_value_invariant(rec, "first_order_action", first_order, 1e-12);
    add_value_invariant(rec, "bch_order2", bch2, 1e-10);
    add_value_invariant(rec, "generator_antihermitian", antih, 1e-15);
    add_flag_invariant(rec, "generator_flagged", flagged);
    add_value_invariant(rec, "composition", composition, 1e-10);
    add_value_invariant(rec, "conjugation_oracle", conj_oracle, 1e-8);
    add_value_invariant(rec, "ccr_conjugated", conj_ccr, 1e-8);
    add_value_invariant(rec, "charge_generator", charge_gen, 1e-12);
    add_value_invariant(rec, "charge_conjugation", charge_conj, 1e-8);
    add_value_invariant(rec, "isolation_reconstruct", iso_rec, 1e-12);
    add_value_invariant(rec, "isolation_assembly", iso_asm, 1e-10);
    add_value_invariant(rec, "isolation_det", iso_det, 1e-14);
    add_flag_invariant(rec, "isolation_rejects_eps0", eps0_rejected);
    add_value_invariant(rec, "smear_ccr", smear_ccr, 1e-12);
    add_flag_invariant(rec, "smear_rejects_nonunitary", smear_rejects);
    return rec;
}

// ---------------------------------------------------------------------
// vacuum-check
// ---------------------------------------------------------------------

ReportRecord run_vacuum_check(const RunConfig& cfg) {
    ReportRecord rec;
    rec.experiment = "vacuum-check";
    rec.columns = {"label",
                   "epsilon",
                   "cutoff",
                   "annihilation_residual",
                   "reconstruction_fidelity",
                   "reconstruction_norm_defect",
                   "z_defect",
                   "norm_defect",
                   "norm_defect_bound",
                   "leaked_norm",
                   "amplitude_law_residual"};
    const double tol = cfg.tolerance;

    double eps_max = 0.0;
    for (const auto& m : cfg.momenta) {
        eps_max = std::max(eps_max, std::abs(m.epsilon));
    }
    if (cfg.cutoff) {
        const int need = plan_cutoff(eps_max, tol);
        if (*cfg.cutoff < need) {
            throw validation_error(
                "vacuum-check: cutoff " + std::to_string(*cfg.cutoff) +
                " cannot resolve the requested tolerance; minimal admissible "
                "cutoff is " +
                std::to_string(need));
        }
    }

    double r_annih = 0.0;
    double r_fid = 0.0;
    double r_rnorm = 0.0;
    double r_z = 0.0;
    double r_norm_excess = 0.0;
    double r_leak = 0.0;
    double r_amp = 0.0;

    for (const auto& m : cfg.momenta) {
        const int used = std::max(cfg.cutoff.value_or(0),
                                  vacuum_cutoff(std::abs(m.epsilon), tol));
        const std::vector<MomentumSpec> ms = {{m.label, m.label, m.epsilon}};
        const SpacePtr sp = make_pair_space(ms, used);
        const SqueezeSet s = standard_squeeze_set(ms);
        const VacuumPair vp = epsilon_vacuum(sp, s, tol);

        double annih = 0.0;
        const auto dressed = dressed_ops_closed(sp, s);
        for (const auto& dp : dressed) {
            annih = std::max(annih, norm(apply(dp.d, vp.dressed)));
            annih = std::max(annih, norm(apply(dp.dbar, vp.dressed)));
        }

        const Reconstruction rc = reconstruct_minkowski(vp);
        const double fid_defect = 1.0 - rc.fidelity;
        const double rnorm_defect = std::abs(norm(rc.state) - 1.0);

        double z_pairs = 1.0;
        for (const auto& p : s.pairs) z_pairs *= std::cosh(p.epsilon);
        const double z_defect =
            std::abs(z_pairs - std::pow(std::cosh(m.epsilon), 2.0));

        const double norm_defect = std::abs(norm(vp.dressed) - 1.0);
        const double norm_bound =
            1.5 * std::pow(std::tanh(std::abs(m.epsilon)),
                           2.0 * (used + 1)) +
            1e-12;
        const double leak = vp.truncation.leaked_norm;

        double amp = 0.0;
        {
            const SpacePtr sp2 = single_pair_space(used);
            const SqueezeSet s2 = single_pair_squeeze(m.epsilon);
            const VacuumPair vp2 = epsilon_vacuum(sp2, s2, tol);
            const double t = std::tanh(m.epsilon);
            const double c = std::cosh(m.epsilon);
            for (int n = 0; n <= 2; ++n) {
                const std::vector<int> occ{n, n};
                const std::size_t i = sp2->index_of(occ);
                const cd expected{std::pow(-t, n) / c, 0.0};
                amp = std::max(
                    amp, std::abs(vp2.dressed.amplitudes[
                                      static_cast<Eigen::Index>(i)] -
                                  expected));
            }
        }

        rec.rows.push_back({idx(m.label), num(m.epsilon),
                            idx(static_cast<long long>(used)), num(annih),
                            num(rc.fidelity), num(rnorm_defect),
                            num(z_defect), num(norm_defect), num(norm_bound),
                            num(leak), num(amp)});

        r_annih = std::max(r_annih, annih);
        r_fid = std::max(r_fid, fid_defect);
        r_rnorm = std::max(r_rnorm, rnorm_defect);
        r_z = std::max(r_z, z_defect);
        r_norm_excess =
            std::max(r_norm_excess, std::max(0.0, norm_defect - norm_bound));
        r_leak = std::max(r_leak, leak);
        r_amp = std::max(r_amp, amp);
    }

    add_value_invariant(rec, "annihilation", r_annih, tol);
    add_value_invariant(rec, "reconstruction_fidelity", r_fid, tol);
    add_value_invariant(rec, "reconstruction_norm", r_rnorm, tol);
    add_value_invariant(rec, "z_product", r_z, 1e-12);
    add_value_invariant(rec, "norm_bookkeeping", r_norm_excess, 1e-13);
    add_value_invariant(rec, "leaked_norm", r_leak, 1e-10);
    add_value_invariant(rec, "amplitude_law", r_amp, 1e-10);
    return rec;
}

// ---------------------------------------------------------------------
// thermo-scan
// ---------------------------------------------------------------------

ReportRecord run_thermo_scan(const RunConfig& cfg) {
    ReportRecord rec;
    rec.experiment = "thermo-scan";
    rec.columns = {"beta",
                   "omega",
                   "epsilon_star",
                   "sinh2_star",
                   "bose_einstein",
                   "variational_delta",
                   "dressed_number_delta",
                   "free_energy_closed",
                   "free_energy_operator",
                   "dual_delta",
                   "derivative_at_star",
                   "fd_derivative_delta"};

    double var_cfg = 0.0;
    double dn_cfg = 0.0;
    double dual_max = 0.0;
    double closed_cons = 0.0;
    double deriv_star = 0.0;
    double deriv_fd = 0.0;
    bool stationary_positive = true;

    const auto grid_row = [&](double beta, const MomentumCfg& m,
                              bool record_row) {
        const ThermoParams tp{beta, m.omega};
        const double nbe = bose_einstein(tp);
        const double estar = stationary_epsilon(tp);
        if (!(estar > 0.0)) stationary_positive = false;
        const double s2 = std::pow(std::sinh(estar), 2.0);
        const double vdelta = std::abs(s2 - nbe);

        const std::vector<MomentumSpec> ms = {{m.label, m.label, estar}};
        const SpacePtr sp = make_pair_space(ms, 2);
        const SqueezeSet s = standard_squeeze_set(ms);
        const VacuumPair vpm = minkowski_pair(sp, s);
        double dn = 0.0;
        for (const auto& p : s.pairs) {
            dn = std::max(dn, std::abs(dressed_number_expectation(
                                           vpm, p, Species::particle) -
                                       nbe));
            dn = std::max(dn, std::abs(dressed_number_expectation(
                                           vpm, p, Species::antiparticle) -
                                       nbe));
        }

        const SqueezeSet s05 =
            standard_squeeze_set({{m.label, m.label, 0.5}});
        const FreeEnergyDual dual = free_energy_dual(sp, s05, tp);
        closed_cons = std::max(
            closed_cons, std::abs(dual.closed - free_energy(0.5, tp)));

        const double dstar = std::abs(free_energy_derivative(estar, tp));
        const double h = 1e-5;
        const double fd = (free_energy(0.5 + h, tp) -
                           free_energy(0.5 - h, tp)) /
                          (2.0 * h);
        const double fd_delta =
            std::abs(fd - free_energy_derivative(0.5, tp));

        var_cfg = std::max(var_cfg, vdelta);
        dn_cfg = std::max(dn_cfg, dn);
        dual_max = std::max(dual_max, dual.delta);
        deriv_star = std::max(deriv_star, dstar);
        deriv_fd = std::max(deriv_fd, fd_delta);

        if (record_row) {
            rec.rows.push_back({num(beta), num(m.omega), num(estar), num(s2),
                                num(nbe), num(vdelta), num(dn),
                                num(dual.closed), num(dual.operator_path),
                                num(dual.delta), num(dstar), num(fd_delta)});
        }
        return std::pair<double, double>{vdelta, dn};
    };

    for (double beta : grid_points(cfg.beta_grid)) {
        for (const auto& m : cfg.momenta) grid_row(beta, m, true);
    }

    double var_15 = 0.0;
    double dn_15 = 0.0;
    for (double beta : {0.2, 0.5, 1.0, 2.0, 5.0}) {
        for (double omega : {0.5, 1.0, 2.0}) {
            MomentumCfg m;
            m.label = 0;
            m.omega = omega;
            m.epsilon = 0.0;
            const auto [v, d] = grid_row(beta, m, false);
            var_15 = std::max(var_15, v);
            dn_15 = std::max(dn_15, d);
        }
    }

    const MomentumCfg& m0 = cfg.momenta.front();
    const double eps_anchor = std::min(std::abs(m0.epsilon), 0.5);
    double h_annih = 0.0;
    {
        const int used = std::max(h_eps_cutoff(eps_anchor, m0.omega, 1e-8),
                                  vacuum_cutoff(eps_anchor, 1e-8));
        const std::vector<MomentumSpec> ms = {{m0.label, m0.label,
                                               eps_anchor}};
        const SpacePtr sp = make_pair_space(ms, used);
        const SqueezeSet s = standard_squeeze_set(ms);
        const VacuumPair vp = epsilon_vacuum(sp, s, 1e-8);
        const Operator h_op = hamiltonian_eps(sp, s, m0.omega);
        h_annih = norm(apply(h_op, vp.dressed));
    }

    double h_spec = 0.0;
    double h_decomp = 0.0;
    {
        const std::vector<MomentumSpec> ms = {{m0.label, m0.label, 0.0}};
        const SpacePtr sp = make_pair_space(ms, 2);
        const SqueezeSet s = standard_squeeze_set(ms);
        const Operator h_op = hamiltonian_eps(sp, s, m0.omega);

        const auto excited = [&](Sector sigma) {
            std::vector<int> occ(sp->n_modes(), 0);
            const ModeId mode{m0.label, sigma, Species::particle};
            occ[sp->mode_position(mode)] = 1;
            return basis_state(sp, occ);
        };
        const StateVector e_plus = excited(Sector::plus);
        const StateVector e_minus = excited(Sector::minus);
        StateVector h_plus = apply(h_op, e_plus);
        StateVector h_minus = apply(h_op, e_minus);
        h_plus.amplitudes -= m0.omega * e_plus.amplitudes;
        h_minus.amplitudes += m0.omega * e_minus.amplitudes;
        h_spec = std::max(h_plus.amplitudes.norm(),
                          h_minus.amplitudes.norm());

        const std::vector<MomentumSpec> ms3 = {{m0.label, m0.label, 0.3}};
        const SqueezeSet s3 = standard_squeeze_set(ms3);
        const Operator whole = hamiltonian_eps(sp, s3, m0.omega);
        const Operator split =
            sector_hamiltonian(sp, s3, m0.omega, Sector::plus) -
            sector_hamiltonian(sp, s3, m0.omega, Sector::minus);
        h_decomp = max_abs(whole - split);
    }

    double h_numbers = 0.0;
    {
        const std::vector<MomentumSpec> ms = {{m0.label, m0.label, 0.3}};
        const SpacePtr sp = make_pair_space(ms, 8);
        const SqueezeSet s = standard_squeeze_set(ms);
        const Operator h_op = hamiltonian_eps(sp, s, m0.omega);
        const auto safe2 = safe_indices_margin(*sp, 2);
        for (const auto& dp : dressed_ops_closed(sp, s)) {
            const Operator nd = adjoint(dp.d) * dp.d;
            const Operator ndb = adjoint(dp.dbar) * dp.dbar;
            h_numbers = std::max(
                h_numbers, max_colnorm_on(commutator(h_op, nd), safe2));
            h_numbers = std::max(
                h_numbers, max_colnorm_on(commutator(h_op, ndb), safe2));
        }
    }

    double entropy_triple = 0.0;
    {
        const SpacePtr sp = single_pair_space(36);
        for (double e : {0.2, 0.5, 1.0}) {
            const SqueezeSet s = single_pair_squeeze(e);
            const VacuumPair vpm = minkowski_pair(sp, s);
            const double op_val =
                expectation(entropy_operator(sp, s, Sector::plus),
                            vpm.minkowski)
                    .real();
            const double vn = sector_entanglement_entropy(vpm);
            const double closed = mode_entropy(e);
            entropy_triple = std::max(
                entropy_triple,
                std::max({std::abs(op_val - vn), std::abs(vn - closed),
                          std::abs(op_val - closed)}));
        }
    }

    double s_inv = 0.0;
    {
        const SpacePtr sp = single_pair_space(20);
        const SqueezeSet s = single_pair_squeeze(0.3);
        const Operator s_eps = entropy_operator(sp, s, Sector::plus) -
                               entropy_operator(sp, s, Sector::minus);
        const Operator conj = dressed_ops_conjugated(sp, s, s_eps, 1e-10);
        s_inv = max_block_colnorm(conj - s_eps, safe_indices_cap(*sp, 4));
    }

    add_value_invariant(rec, "variational_grid15",
                        std::max(var_15, 0.0), 1e-8);
    add_value_invariant(rec, "dressed_number_grid15", dn_15, 1e-6);
    add_value_invariant(rec, "variational_config", var_cfg, 1e-8);
    add_value_invariant(rec, "dressed_number_config", dn_cfg, 1e-6);
    add_flag_invariant(rec, "stationary_positive", stationary_positive);
    add_value_invariant(rec, "dual_path", dual_max, 1e-8);
    add_value_invariant(rec, "closed_form_consistency", closed_cons, 1e-12);
    add_value_invariant(rec, "derivative_at_star", deriv_star, 1e-8);
    add_value_invariant(rec, "derivative_fd", deriv_fd, 1e-5);
    add_value_invariant(rec, "h_annihilates_vacuum", h_annih, 1e-8);
    add_value_invariant(rec, "h_spectrum_eps0", h_spec, 1e-12);
    add_value_invariant(rec, "h_decomposition", h_decomp, 1e-15);
    add_value_invariant(rec, "h_commutes_numbers", h_numbers, 1e-10);
    add_value_invariant(rec, "entropy_triple", entropy_triple, 1e-6);
    add_value_invariant(rec, "s_eps_invariance", s_inv, 1e-8);
    return rec;
}

// ---------------------------------------------------------------------
// entangle-report
// ---------------------------------------------------------------------

ReportRecord run_entangle_report(const RunConfig& cfg) {
    ReportRecord rec;
    rec.experiment = "entangle-report";
    rec.columns = {"epsilon",
                   "cutoff",
                   "w0_analytic",
                   "w0_empirical",
                   "wn_max_delta",
                   "geometric_ratio_defect",
                   "partial_sum_defect",
                   "tail_bound",
                   "off_pair_residual",
                   "sector_entropy",
                   "entropy_triple_delta",
                   "amplitude_n0_defect",
                   "amplitude_ratio_defect"};

    const double tol_e = std::min(cfg.tolerance, 1e-8);
    const int max_total = 10;

    double psum = 0.0;
    double geo = 0.0;
    double emp = 0.0;
    double off = 0.0;
    double triple = 0.0;
    double amp0 = 0.0;
    double ratio = 0.0;
    bool in_range = true;
    std::vector<double> entropies;

    for (double e : grid_points(cfg.epsilon_grid)) {
        const int cutoff =
            std::max(cfg.cutoff.value_or(0),
                     vacuum_cutoff(std::abs(e), tol_e) + 2);
        const SpacePtr sp = single_pair_space(cutoff);
        const SqueezeSet s = single_pair_squeeze(e);
        const VacuumPair vp = epsilon_vacuum(sp, s, tol_e);

        const WnTable ana = wn_analytic(s, max_total);
        const WnTable empt = wn_from_state(vp);

        const double t2 = std::pow(std::tanh(e), 2.0);
        double wn_delta = 0.0;
        double geo_e = 0.0;
        double sum = 0.0;
        for (int n = 0; n <= max_total; ++n) {
            const double wa = ana.by_total[static_cast<std::size_t>(n)];
            sum += wa;
            if (wa <= 0.0 && e != 0.0) in_range = false;
            if (wa > 1.0 + 1e-15) in_range = false;
            if (static_cast<std::size_t>(n) < empt.by_total.size()) {
                wn_delta = std::max(
                    wn_delta,
                    std::abs(wa -
                             empt.by_total[static_cast<std::size_t>(n)]));
            }
            if (n < max_total && wa > 0.0) {
                const double wn1 =
                    ana.by_total[static_cast<std::size_t>(n) + 1];
                geo_e = std::max(geo_e, std::abs(wn1 / wa - t2));
            }
        }
        const double expected_sum =
            1.0 - std::pow(std::tanh(e), 2.0 * (max_total + 1));
        const double psum_e = std::abs(sum - expected_sum);

        const double s_ent = sector_entanglement_entropy(vp);
        const double op_val =
            expectation(entropy_operator(sp, s, Sector::plus), vp.minkowski)
                .real();
        const double closed = mode_entropy(e);
        const double triple_e =
            std::max({std::abs(op_val - s_ent), std::abs(s_ent - closed),
                      std::abs(op_val - closed)});

        const ExpansionTerm t0 = expansion_term(vp, 0);
        const ExpansionTerm t1 = expansion_term(vp, 1);
        const double amp0_e =
            std::abs(t0.raw_norm - 1.0 / std::cosh(e));
        const StateVector psi = dressed_representation(vp);
        const std::vector<int> occ00{0, 0};
        const std::vector<int> occ11{1, 1};
        const cd a00 =
            psi.amplitudes[static_cast<Eigen::Index>(sp->index_of(occ00))];
        const cd a11 =
            psi.amplitudes[static_cast<Eigen::Index>(sp->index_of(occ11))];
        const double ratio_e = std::abs(a11 / a00 - cd{std::tanh(e), 0.0});
        (void)t1;

        rec.rows.push_back(
            {num(e), idx(static_cast<long long>(cutoff)),
             num(ana.by_total[0]), num(empt.by_total[0]), num(wn_delta),
             num(geo_e), num(psum_e), num(ana.tail_bound),
             num(empt.off_pair_residual), num(s_ent), num(triple_e),
             num(amp0_e), num(ratio_e)});

        psum = std::max(psum, psum_e);
        geo = std::max(geo, geo_e);
        emp = std::max(emp, wn_delta);
        off = std::max(off, empt.off_pair_residual);
        triple = std::max(triple, triple_e);
        amp0 = std::max(amp0, amp0_e);
        ratio = std::max(ratio, ratio_e);
        entropies.push_back(s_ent);
    }

    double monotone = 0.0;
    for (std::size_t i = 0; i + 1 < entropies.size(); ++i) {
        monotone = std::max(monotone, entropies[i] - entropies[i + 1]);
    }
    monotone = std::max(monotone, 0.0);

    double bell = 0.0;
    {
        std::vector<double> bell_eps = {0.1, 0.5, 1.0};
        const double e0 = cfg.momenta.front().epsilon;
        if (std::abs(e0) >= entropy_eps_min &&
            std::none_of(bell_eps.begin(), bell_eps.end(), [&](double b) {
                return std::abs(b - std::abs(e0)) < 1e-12;
            })) {
            bell_eps.push_back(std::abs(e0));
        }
        for (double e : bell_eps) {
            const std::vector<MomentumSpec> ms = {{0, 0, e}};
            const SpacePtr sp = make_pair_space(ms, 10);
            const SqueezeSet s = standard_squeeze_set(ms);
            const VacuumPair vpm = minkowski_pair(sp, s);
            bell = std::max(bell,
                            std::abs(1.0 - bell_structure_check(vpm)));
        }
    }

    add_value_invariant(rec, "wn_partial_sum", psum, 1e-10);
    add_value_invariant(rec, "wn_geometric", geo, 1e-10);
    add_value_invariant(rec, "wn_empirical", emp, 1e-8);
    add_value_invariant(rec, "off_pair_residual", off, 1e-16);
    add_flag_invariant(rec, "wn_range", in_range);
    add_value_invariant(rec, "entropy_triple", triple, 1e-6);
    add_value_invariant(rec, "entropy_monotone", monotone, 1e-12);
    add_value_invariant(rec, "amplitude_n0", amp0, 1e-10);
    add_value_invariant(rec, "amplitude_ratio", ratio, 1e-8);
    add_value_invariant(rec, "bell_fidelity", bell, 1e-8);
    return rec;
}

// ---------------------------------------------------------------------
// overlap-scaling
// ---------------------------------------------------------------------

ReportRecord run_overlap_scaling(const RunConfig& cfg) {
    ReportRecord rec;
    rec.experiment = "overlap-scaling";
    rec.columns = {"k", "overlap", "analytic", "delta"};

    const double eps = cfg.momenta.front().epsilon;
    const double epsp = cfg.epsilon_prime;
    const double tol_o = std::min(cfg.tolerance, 1e-10);
    const double scale = std::max(std::abs(eps), std::abs(epsp));
    const int cutoff =
        std::max(cfg.cutoff.value_or(0), plan_cutoff(scale, tol_o) + 4);

    const std::vector<double> seq =
        overlap_vacua(eps, epsp, cfg.n_pairs_max, cutoff, tol_o);

    const double cosh_d = std::cosh(eps - epsp);
    double max_delta = 0.0;
    double factor = 0.0;
    std::vector<double> ks;
    std::vector<double> lys;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        const double k = static_cast<double>(i + 1);
        const double analytic = std::pow(1.0 / cosh_d, k);
        const double delta = std::abs(seq[i] - analytic);
        rec.rows.push_back({idx(static_cast<long long>(i + 1)), num(seq[i]),
                            num(analytic), num(delta)});
        max_delta = std::max(max_delta, delta);
        factor = std::max(factor,
                          std::abs(seq[i] - std::pow(seq[0], k)));
        ks.push_back(k);
        lys.push_back(std::log(seq[i]));
    }

    const double slope = ls_slope(ks, lys);
    const double slope_delta = std::abs(slope + std::log(cosh_d));

    double equal_eps = 0.0;
    for (double v : overlap_vacua(0.3, 0.3, 3, plan_cutoff(0.3, 1e-10) + 1,
                                  1e-10)) {
        equal_eps = std::max(equal_eps, std::abs(v - 1.0));
    }

    add_value_invariant(rec, "overlap_law", max_delta, 1e-10);
    add_value_invariant(rec, "overlap_slope", slope_delta, 1e-6);
    add_value_invariant(rec, "overlap_factorization", factor, 1e-12);
    add_value_invariant(rec, "overlap_equal_eps", equal_eps, 1e-12);
    return rec;
}

// ---------------------------------------------------------------------
// verify-all
// ---------------------------------------------------------------------

using Runner = ReportRecord (*)(const RunConfig&);

const std::vector<std::pair<std::string, Runner>>& runners() {
    static const std::vector<std::pair<std::string, Runner>> table = {
        {"algebra-check", &run_algebra_check},
        {"bogoliubov-check", &run_bogoliubov_check},
        {"vacuum-check", &run_vacuum_check},
        {"thermo-scan", &run_thermo_scan},
        {"entangle-report", &run_entangle_report},
        {"overlap-scaling", &run_overlap_scaling},
    };
    return table;
}

ReportRecord run_verify_all(const RunConfig& cfg) {
    ReportRecord rec;
    rec.experiment = "verify-all";
    rec.columns = {"experiment", "invariant", "value", "tolerance", "pass"};
    for (const auto& [name, fn] : runners()) {
        const ReportRecord sub = fn(cfg);
        for (const auto& inv : sub.invariants) {
            rec.rows.push_back({txt(name), txt(inv.name), num(inv.value),
                                num(inv.tolerance),
                                idx(inv.pass ? 1LL : 0LL)});
            rec.invariants.push_back({name + "." + inv.name, inv.pass,
                                      inv.value, inv.tolerance});
        }
    }
    return rec;
}

std::string hex16(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(v));
    return std::string(buf, 16);
}

std::string cell_to_csv(const Cell& c) {
    std::string raw;
    if (std::holds_alternative<long long>(c)) {
        raw = std::to_string(std::get<long long>(c));
    } else if (std::holds_alternative<double>(c)) {
        raw = format_double(std::get<double>(c));
    } else {
        raw = std::get<std::string>(c);
    }
    if (raw.find_first_of(",\"\n") == std::string::npos) return raw;
    std::string quoted = "\"";
    for (char ch : raw) {
        if (ch == '"') quoted += '"';
        quoted += ch;
    }
    quoted += '"';
    return quoted;
}

ordered_json cell_to_json(const Cell& c) {
    if (std::holds_alternative<long long>(c)) {
        return std::get<long long>(c);
    }
    if (std::holds_alternative<double>(c)) return std::get<double>(c);
    return std::get<std::string>(c);
}

void write_text_file(const std::filesystem::path& p,
                     const std::string& text) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw validation_error("emit: cannot open " + p.string() +
                               " for writing");
    }
    out << text;
    out.flush();
    if (!out) {
        throw validation_error("emit: write failed for " + p.string());
    }
}

std::string utc_timestamp() {
    const std::time_t now =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return std::string(buf);
}

} // namespace

bool ReportRecord::all_pass() const {
    return std::all_of(invariants.begin(), invariants.end(),
                       [](const Invariant& i) { return i.pass; });
}

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names = {
        "algebra-check",  "bogoliubov-check", "vacuum-check", "thermo-scan",
        "entangle-report", "overlap-scaling",  "verify-all"};
    return names;
}

ReportRecord run_experiment(const std::string& name, const RunConfig& cfg) {
    require_momenta(cfg);
    const auto t0 = std::chrono::steady_clock::now();
    ReportRecord rec;
    if (name == "verify-all") {
        rec = run_verify_all(cfg);
    } else {
        const auto& table = runners();
        const auto it =
            std::find_if(table.begin(), table.end(),
                         [&](const auto& kv) { return kv.first == name; });
        if (it == table.end()) {
            std::string known;
            for (const auto& n : experiment_names()) {
                if (!known.empty()) known += ", ";
                known += n;
            }
            throw validation_error("unknown experiment '" + name +
                                   "'; known experiments: " + known);
        }
        rec = it->second(cfg);
    }
    rec.config = cfg;
    rec.config_hash = hex16(fnv1a64(canonical_config_json(cfg)));
    rec.version = artifact_version;
    const auto t1 = std::chrono::steady_clock::now();
    rec.duration_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0)
            .count();
    return rec;
}

void emit(const ReportRecord& rec, const std::string& out_dir,
          ReportFormat fmt) {
    namespace fs = std::filesystem;
    const fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw validation_error("emit: cannot create directory " +
                               dir.string() + ": " + ec.message());
    }

    if (fmt == ReportFormat::csv) {
        std::string csv;
        for (std::size_t i = 0; i < rec.columns.size(); ++i) {
            if (i) csv += ',';
            csv += rec.columns[i];
        }
        csv += '\n';
        for (const auto& row : rec.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) csv += ',';
                csv += cell_to_csv(row[i]);
            }
            csv += '\n';
        }
        write_text_file(dir / "report.csv", csv);

        std::string inv = "name,pass,value,tolerance\n";
        for (const auto& i : rec.invariants) {
            inv += i.name;
            inv += ',';
            inv += i.pass ? "true" : "false";
            inv += ',';
            inv += format_double(i.value);
            inv += ',';
            inv += format_double(i.tolerance);
            inv += '\n';
        }
        write_text_file(dir / "invariants.csv", inv);
    } else {
        ordered_json j;
        j["experiment"] = rec.experiment;
        j["config"] = ordered_json::parse(canonical_config_json(rec.config));
        j["columns"] = rec.columns;
        j["rows"] = ordered_json::array();
        for (const auto& row : rec.rows) {
            ordered_json obj;
            for (std::size_t i = 0; i < row.size() && i < rec.columns.size();
                 ++i) {
                obj[rec.columns[i]] = cell_to_json(row[i]);
            }
            j["rows"].push_back(std::move(obj));
        }
        j["invariants"] = ordered_json::array();
        for (const auto& i : rec.invariants) {
            ordered_json obj;
            obj["name"] = i.name;
            obj["pass"] = i.pass;
            obj["value"] = i.value;
            obj["tolerance"] = i.tolerance;
            j["invariants"].push_back(std::move(obj));
        }
        j["manifest"] = {{"config_hash", rec.config_hash},
                         {"artifact_version", rec.version}};
        write_text_file(dir / "report.json", j.dump(2) + "\n");
    }

    ordered_json manifest;
    manifest["config_hash"] = rec.config_hash;
    manifest["artifact_version"] = rec.version;
    manifest["timestamp_utc"] = utc_timestamp();
    manifest["duration_ms"] = rec.duration_ms;
    write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

ReportRecord parse_report_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw validation_error(std::string("parse_report_json: ") + e.what());
    }
    if (!j.is_object()) {
        throw validation_error("parse_report_json: top level must be an object");
    }
    ReportRecord rec;
    try {
        rec.experiment = j.at("experiment").get<std::string>();
        rec.config = parse_config(j.at("config").dump());
        rec.columns = j.at("columns").get<std::vector<std::string>>();
        for (const auto& row : j.at("rows")) {
            std::vector<Cell> cells;
            for (const auto& col : rec.columns) {
                const auto& v = row.at(col);
                if (v.is_string()) {
                    cells.emplace_back(v.get<std::string>());
                } else if (v.is_number_float()) {
                    cells.emplace_back(v.get<double>());
                } else if (v.is_number_integer() ||
                           v.is_number_unsigned()) {
                    cells.emplace_back(v.get<long long>());
                } else {
                    throw validation_error(
                        "parse_report_json: unsupported cell type in column " +
                        col);
                }
            }
            rec.rows.push_back(std::move(cells));
        }
        for (const auto& iv : j.at("invariants")) {
            rec.invariants.push_back({iv.at("name").get<std::string>(),
                                      iv.at("pass").get<bool>(),
                                      iv.at("value").get<double>(),
                                      iv.at("tolerance").get<double>()});
        }
        rec.config_hash =
            j.at("manifest").at("config_hash").get<std::string>();
        rec.version =
            j.at("manifest").at("artifact_version").get<std::string>();
    } catch (const validation_error&) {
        throw;
    } catch (const std::exception& e) {
        throw validation_error(std::string("parse_report_json: ") + e.what());
    }
    return rec;
}

std::string format_double(double x) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    if (res.ec != std::errc()) {
        throw numeric_error("format_double: conversion failed");
    }
    return std::string(buf.data(), res.ptr);
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= static_cast<std::uint64_t>(c);
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace qfock
