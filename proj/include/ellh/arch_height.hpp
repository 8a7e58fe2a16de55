#ifndef ELLH_ARCH_HEIGHT_HPP
#define ELLH_ARCH_HEIGHT_HPP

#include <vector>

#include "ellh/periods.hpp"

namespace ellh {

/// Archimedean canonical local height of the torus point alpha + tau beta
/// (Tate normalisation):  (1/2) B2(beta) 2 pi Im(tau) - log|theta0(w)| with
/// theta0(w) = (1-w) prod (1-q^n w)(1-q^n / w).
Real arch_local_height_coords(const PeriodData& pd, const Real& alpha, const Real& beta);

Real arch_local_height(const WeierstrassModel& m, const RationalPoint& p,
                       const PeriodData& pd);

struct ElkiesCheck {
    Real lhs, rhs;
    bool holds;
};

/// Sum over ordered pairs of lambda(P_i - P_j) against
/// -(N log N)/2 - (N/12) log1|j| - 16N/5.
ElkiesCheck elkies_bound_check(const WeierstrassModel& m,
                               const std::vector<RationalPoint>& pts,
                               const PeriodData& pd);

/// Same check on raw torus points (used for random configurations).
ElkiesCheck elkies_bound_check_coords(const PeriodData& pd, const Real& abs_j,
                                      const std::vector<std::pair<Real, Real>>& coords);

/// log1|j| + 6 >= 2 pi Im(tau).
bool bp_check(const Real& abs_j, const Cplx& tau);

/// Hindry-Silverman: max{|alpha|,|beta|} <= eps/23  =>
/// lambda >= (1-eps)/12 log1|j|.  Distances are to the nearest lattice point.
/// Returns the pair (lambda, bound) actually compared.
std::pair<Real, Real> hs_bound(const PeriodData& pd, const Real& abs_j, const Real& eps,
                               const Real& alpha, const Real& beta);

struct FaltingsResult {
    Real h_F;
    Real im_tau;
    Real log_disc_min;
    // recomputed constant for the discriminant comparison bound
    // h_F <= (1/12)(log|disc| + 2 pi Im tau) - falt_const
    Real falt_const_recomputed;
    bool bound_holds_recomputed;
    bool bound_holds_printed;   // with the printed constant 2.7572 (known bad)
};

/// Faltings height over Q from the minimal discriminant and the reduced tau:
/// h_F = (1/12)(log|disc_min| - log((2pi)^12 |Dnorm(tau)| (Im tau)^6)).
FaltingsResult faltings_height(const WeierstrassModel& minimal_model, const PeriodData& pd);

} // namespace ellh

#endif
