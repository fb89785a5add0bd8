// qhopf.hpp
// q-deformation layer: q-numbers, Casimirs in the fundamental
// representation, plain and deformed coproducts on the sector-doubled
// space, and the sector-isolation matrix.

#pragma once

#include <array>

#include "qfock/operators.hpp"

namespace qfock {

// Deformation parameter with q = exp(2 epsilon), restricted to real
// positive q; modulus-one phases are rejected at construction.
struct QParam {
    double epsilon;
    double q;

    static QParam from_epsilon(double epsilon);
    static QParam from_q(double q);
};

// [x]_q = (q^x - q^{-x}) / (q - q^{-1}), with the limit value x returned
// for |q - 1| < 1e-8 (removable singularity).
double q_number(double x, const QParam& qp);

// A base space together with its sector-doubled copy; the doubled space
// holds a sigma=+ and a sigma=- copy of every base mode, plus block first.
struct DoubledSpace {
    SpacePtr base;
    SpacePtr doubled;
};

DoubledSpace make_doubled(const SpacePtr& base);

// Embed a base-space operator as O x 1 (plus sector) or 1 x O (minus sector).
Operator embed_plus(const DoubledSpace& d, const Operator& base_op);
Operator embed_minus(const DoubledSpace& d, const Operator& base_op);

// Casimir C = 2NH - a^dag a in the fundamental representation H = 1/2;
// the q-deformed variant uses [2H]_q. Both vanish identically here.
Operator casimir(const SpacePtr& single_mode_space);
Operator casimir_q(const SpacePtr& single_mode_space, const QParam& qp);

// Delta O = O x 1 + 1 x O.
Operator coproduct_plain(const Operator& base_op, const DoubledSpace& d);

enum class LadderKind { annihilation, creation };

// Deformed coproduct of the ladder operator of one base mode:
// exp(eps) a(+) + exp(-eps) a(-), and its adjoint for the creation kind.
Operator coproduct_deformed(const DoubledSpace& d, const QParam& qp,
                            const ModeId& base_mode, LadderKind kind);

// M = [[e^eps, e^-eps], [e^-eps, e^eps]] mapping sector copies to the
// deformed coproduct pair; singular at eps = 0 (det = 2 sinh 2 eps).
struct SectorIsolation {
    std::array<std::array<double, 2>, 2> m;
    std::array<std::array<double, 2>, 2> m_inv;
    double det;
};

SectorIsolation sector_isolation_matrix(const QParam& qp);

} // namespace qfock
