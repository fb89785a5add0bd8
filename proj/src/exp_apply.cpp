// exp_apply.cpp
// Scaled Taylor evaluation of exp(A) v. The operator is split as
// exp(A) = exp(A/s)^s with s chosen so the per-stage series converges
// fast; each stage stops once a geometric bound on its tail is below the
// stage budget.

#include "qfock/exp_apply.hpp"

#include <cmath>
#include <string>

namespace qfock {

namespace {

// Column-sum norm of a column-major sparse matrix.
double one_norm(const SparseCd& m) {
    double worst = 0.0;
    for (int k = 0; k < m.outerSize(); ++k) {
        double acc = 0.0;
        for (SparseCd::InnerIterator it(m, k); it; ++it) {
            acc += std::abs(it.value());
        }
        worst = std::max(worst, acc);
    }
    return worst;
}

double inf_norm(const SparseCd& m) {
    Eigen::VectorXd rows = Eigen::VectorXd::Zero(m.rows());
    for (int k = 0; k < m.outerSize(); ++k) {
        for (SparseCd::InnerIterator it(m, k); it; ++it) {
            rows[it.row()] += std::abs(it.value());
        }
    }
    return rows.size() ? rows.maxCoeff() : 0.0;
}

} // namespace

ExpApplyResult exp_apply(const Operator& a, const StateVector& v, double tol) {
    require_same_space(a.space, v.space, "exp_apply");
    if (!(tol > 0.0)) {
        throw validation_error("exp_apply: tol must be positive");
    }

    // sqrt(||A||_1 ||A||_inf) bounds the spectral norm.
    const double alpha = std::sqrt(one_norm(a.matrix) * inf_norm(a.matrix));
    const double v_norm = v.amplitudes.norm();

    ExpApplyResult out{{v.space, v.amplitudes}, {}};
    if (alpha == 0.0 || v_norm == 0.0) {
        return out;
    }

    const int stages = std::max(1, static_cast<int>(std::ceil(alpha)));
    const double beta = alpha / stages;
    const double stage_tol = tol / stages;
    constexpr int max_terms = 400;

    Eigen::VectorXcd w = v.amplitudes;
    for (int s = 0; s < stages; ++s) {
        Eigen::VectorXcd term = w;
        Eigen::VectorXcd acc = w;
        double bound = term.norm();
        int j = 0;
        while (true) {
            ++j;
            term = (a.matrix * term) / static_cast<double>(stages * j);
            acc += term;
            // after term j the tail is bounded by ||t_j|| r/(1-r), r = beta/(j+1)
            const double r = beta / (j + 1);
            bound = (r < 1.0) ? term.norm() * r / (1.0 - r)
                              : std::numeric_limits<double>::infinity();
            if (bound <= stage_tol) {
                break;
            }
            if (j >= max_terms) {
                throw numeric_error(
                    "exp_apply: series did not converge within " +
                        std::to_string(max_terms) + " terms (remainder " +
                        std::to_string(bound) + ")",
                    bound);
            }
        }
        w = acc;
    }

    out.state.amplitudes = std::move(w);
    if (a.anti_hermitian) {
        out.report.leaked_norm = std::abs(out.state.amplitudes.norm() - v_norm);
    }
    return out;
}

} // namespace qfock
