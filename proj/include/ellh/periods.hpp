#ifndef ELLH_PERIODS_HPP
#define ELLH_PERIODS_HPP

#include <array>

#include "ellh/curve.hpp"

namespace ellh {

/// Period lattice of a real Weierstrass model, with the period ratio reduced
/// to the fundamental domain { |tau| >= 1, |Re tau| <= 1/2 } (boundary
/// normalised to Re >= 0 resp. Re = +1/2).  omega1, omega2 is the reduced
/// basis: tau = omega2 / omega1 and Lambda = Z omega1 + Z omega2 is the
/// lattice of the model (so Delta(Lambda) equals the model discriminant).
struct PeriodData {
    Cplx omega1, omega2;
    Cplx tau;
    Cplx q;                   // exp(2 pi i tau)
    unsigned precision_bits;
    // roots of 4x^3 + b2 x^2 + 2 b4 x + b6 used for elliptic logs:
    // e[0] is the largest (disc > 0) resp. the unique (disc < 0) real root.
    std::array<Cplx, 3> roots;
    bool three_real_roots;
    Real real_period;         // least positive real period
    Cplx imag_period;         // second generator of the unreduced basis
};

/// Torus coordinates of a point: z = (alpha + tau beta) * omega1 mod Lambda,
/// with alpha, beta in [0,1).
struct EllipticLogCoords {
    Cplx z;        // normalised: z / omega1 = alpha + tau beta
    Real alpha, beta;
};

/// Optimal complex arithmetic-geometric mean.
Cplx agm(Cplx a, Cplx b);

/// Carlson symmetric integral R_F; arguments must stay off the negative real axis.
Cplx carlson_rf(Cplx x, Cplx y, Cplx z);

PeriodData period_lattice(const WeierstrassModel& m, unsigned precision_bits);

EllipticLogCoords elliptic_log(const WeierstrassModel& m, const RationalPoint& p,
                               const PeriodData& pd);

/// Lattice discriminant of Z + tau Z: (2 pi)^12 q prod (1-q^n)^24, with the
/// q-product truncated below the working precision.
Cplx discriminant_tau(const Cplx& tau, unsigned precision_bits);

/// log | prod (1-q^n)^24 |  (the eta-product part of discriminant_tau).
Real log_abs_eta24(const Cplx& q);

/// j-invariant from the q-expansion (E4^3 / Delta_normalised).
Cplx j_from_tau(const Cplx& tau);

/// Weierstrass p and p' for z = (alpha + tau beta) omega1 on the lattice of pd;
/// returns model coordinates (x, 2y + a1 x + a3).
void weierstrass_xy(const WeierstrassModel& m, const PeriodData& pd, const Real& alpha,
                    const Real& beta, Cplx& x_out, Cplx& yy_out);

} // namespace ellh

#endif
