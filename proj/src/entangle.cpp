// entangle.cpp
// W_n tables, expansion terms, Bell fidelity, and sector entropy.

#include "qfock/entangle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

namespace qfock {

namespace {

double config_weight(const SqueezeSet& s, const std::vector<int>& occ) {
    double w = 1.0;
    for (std::size_t i = 0; i < s.pairs.size(); ++i) {
        const double sh = std::sinh(s.pairs[i].epsilon);
        const double ch = std::cosh(s.pairs[i].epsilon);
        const int n = occ[i];
        w *= std::pow(sh * sh, n) / std::pow(ch * ch, n + 1);
    }
    return w;
}

WnTable finish_table(std::vector<WnRow> rows, double off_residual) {
    WnTable t;
    t.rows = std::move(rows);
    int max_total = 0;
    double total_weight = 0.0;
    for (const WnRow& r : t.rows) {
        const int n = std::accumulate(r.pair_occupations.begin(),
                                      r.pair_occupations.end(), 0);
        max_total = std::max(max_total, n);
        total_weight += r.weight;
    }
    t.by_total.assign(static_cast<std::size_t>(max_total) + 1, 0.0);
    for (const WnRow& r : t.rows) {
        const int n = std::accumulate(r.pair_occupations.begin(),
                                      r.pair_occupations.end(), 0);
        t.by_total[static_cast<std::size_t>(n)] += r.weight;
    }
    t.tail_bound = std::max(0.0, 1.0 - total_weight);
    t.off_pair_residual = off_residual;
    return t;
}

} // namespace

WnTable wn_analytic(const SqueezeSet& s, int max_total_n) {
    if (s.pairs.empty()) {
        throw validation_error("wn_analytic: squeeze set has no pairs");
    }
    if (max_total_n < 0) {
        throw validation_error("wn_analytic: max_total_n must be >= 0");
    }
    const std::size_t k = s.pairs.size();
    std::vector<WnRow> rows;
    std::vector<int> occ(k, 0);
    // Lexicographic odometer over the simplex sum(occ) <= max_total_n.
    while (true) {
        rows.push_back({occ, config_weight(s, occ)});
        std::size_t pos = k;
        while (pos > 0) {
            --pos;
            ++occ[pos];
            if (std::accumulate(occ.begin(), occ.end(), 0) <= max_total_n) {
                break;
            }
            occ[pos] = 0;
            if (pos == 0) {
                return finish_table(std::move(rows), 0.0);
            }
        }
    }
}

StateVector dressed_representation(const VacuumPair& vp) {
    const SpacePtr& space = vp.minkowski.space;
    Operator g = generator(space, vp.squeeze);
    Operator g_neg = -1.0 * g;
    g_neg.anti_hermitian = g.anti_hermitian;
    g_neg.flag_tolerance = g.flag_tolerance;
    return exp_apply(g_neg, vp.minkowski, 1e-13).state;
}

WnTable wn_from_state(const VacuumPair& vp) {
    const SpacePtr& space = vp.minkowski.space;
    const std::size_t k = vp.squeeze.pairs.size();
    if (2 * k != space->n_modes()) {
        throw validation_error("wn_from_state: squeeze pairs must cover every "
                               "mode of the space");
    }

    std::vector<std::size_t> d_pos(k), dbar_pos(k);
    for (std::size_t i = 0; i < k; ++i) {
        d_pos[i] = space->mode_position(vp.squeeze.pairs[i].particle_mode());
        dbar_pos[i] =
            space->mode_position(vp.squeeze.pairs[i].antiparticle_mode());
    }

    const StateVector psi = dressed_representation(vp);
    const double total = psi.amplitudes.squaredNorm();
    if (std::abs(total - 1.0) > 1e-10) {
        throw numeric_error("wn_from_state: dressed representation lost " +
                                std::to_string(std::abs(total - 1.0)) +
                                " of its weight to truncation",
                            std::abs(total - 1.0));
    }

    std::map<std::vector<int>, double> acc;
    double off_residual = 0.0;
    std::vector<int> occ(space->n_modes(), 0);
    std::vector<int> config(k, 0);
    for (std::size_t idx = 0; idx < space->dim(); ++idx) {
        const double w = std::norm(psi.amplitudes[static_cast<Eigen::Index>(idx)]);
        if (w == 0.0) {
            continue;
        }
        space->occupations_of(idx, occ);
        bool diagonal = true;
        for (std::size_t i = 0; i < k; ++i) {
            if (occ[d_pos[i]] != occ[dbar_pos[i]]) {
                diagonal = false;
                break;
            }
            config[i] = occ[d_pos[i]];
        }
        if (diagonal) {
            acc[config] += w;
        } else {
            off_residual += w;
        }
    }

    std::vector<WnRow> rows;
    rows.reserve(acc.size());
    for (auto& [c, w] : acc) {
        rows.push_back({c, w});
    }
    return finish_table(std::move(rows), off_residual);
}

ExpansionTerm expansion_term(const VacuumPair& vp, int total_n) {
    const SpacePtr& space = vp.minkowski.space;
    if (total_n < 0) {
        throw validation_error("expansion_term: total_n must be >= 0");
    }
    int budget = 0;
    for (std::size_t i = 0; i < space->n_modes(); ++i) {
        budget += space->cutoff(i);
    }
    if (2 * total_n > budget) {
        throw validation_error("expansion_term: 2 * total_n = " +
                               std::to_string(2 * total_n) +
                               " exceeds the cutoff budget " +
                               std::to_string(budget));
    }

    const StateVector psi = dressed_representation(vp);
    ExpansionTerm term;
    term.state = zero_state(space);
    std::vector<int> occ(space->n_modes(), 0);
    for (std::size_t idx = 0; idx < space->dim(); ++idx) {
        space->occupations_of(idx, occ);
        if (std::accumulate(occ.begin(), occ.end(), 0) == 2 * total_n) {
            term.state.amplitudes[static_cast<Eigen::Index>(idx)] =
                psi.amplitudes[static_cast<Eigen::Index>(idx)];
        }
    }
    term.raw_norm = norm(term.state);
    if (term.raw_norm > 0.0) {
        term.state.amplitudes /= term.raw_norm;
    }
    return term;
}

double bell_structure_check(const VacuumPair& vp) {
    const SpacePtr& space = vp.minkowski.space;
    if (vp.squeeze.pairs.size() != 2 || space->n_modes() != 4) {
        throw validation_error("bell_structure_check: requires the "
                               "single-momentum layout (two pairs, four modes)");
    }
    const ExpansionTerm term = expansion_term(vp, 1);
    if (term.raw_norm < 1e-14) {
        throw validation_error("bell_structure_check: the total_n = 1 component "
                               "vanishes (epsilon = 0 has no such term)");
    }

    StateVector ideal = zero_state(space);
    for (const PairSpec& p : vp.squeeze.pairs) {
        std::vector<int> occ(space->n_modes(), 0);
        occ[space->mode_position(p.particle_mode())] = 1;
        occ[space->mode_position(p.antiparticle_mode())] = 1;
        ideal.amplitudes[static_cast<Eigen::Index>(space->index_of(occ))] =
            1.0 / std::sqrt(2.0);
    }
    return std::abs(inner(ideal, term.state));
}

double sector_entanglement_entropy(const VacuumPair& vp) {
    const StateVector psi = normalized(dressed_representation(vp));
    std::vector<ModeId> keep;
    for (const ModeId& m : psi.space->modes()) {
        if (m.sector == Sector::plus) {
            keep.push_back(m);
        }
    }
    const DensityMatrix rho = partial_trace(psi, keep);
    return von_neumann_entropy(rho);
}

} // namespace qfock
