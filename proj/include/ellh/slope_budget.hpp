#ifndef ELLH_SLOPE_BUDGET_HPP
#define ELLH_SLOPE_BUDGET_HPP

#include <string>
#include <vector>

#include "ellh/numeric.hpp"

namespace ellh {

struct ConstructionParams {
    long d = 1;
    Int N_E;
    Real logNDelta;
    Real h_F;
    Int D, M, Z, T0, T1;
};

/// The (H)-choices; throws H0Violated when logNDelta is below the
/// 10^8 d log(2d) floor.
ConstructionParams choose_parameters(long d, const Int& N_E, const Real& logNDelta,
                                     const Real& h_F);

struct ZerosLemmaCheck {
    Int lhs1, rhs1;  // M^2 vs D1
    Int lhs2, rhs2;  // sum T_j vs D1 + M^2 D2
    bool cond1, cond2, ok;
    Int minimal_Z_restoring;  // smallest Z with T0 + Z T1 > D(1+M^2); 0 if n/a
};

ZerosLemmaCheck zeros_lemma_ok(const Int& D1, const Int& D2, const Int& M,
                               const std::vector<Int>& T_list);

struct SlopeBudget {
    Real term_A;            // -D^2 h_F + (D^2/2) log(D/2pi)
    Int term_B_hhat_coeff;  // D^3 (1+M^2) m_max^2  (multiplies hhat(P))
    Real term_B_rest;       // slope part of (B) independent of hhat
    Real term_C;            // pi D^4 / sqrt(3) + D^2 log(D/pi) + D^2 log(D(1+M^2))
    Real term_D;            // -(T0+1)(D^2-T0) / (1650 d) * logNDelta
    Real t1, t2, t3, t4, t5;
    Real t4_displayed;      // the t4 display without d and 1/sqrt(3)
    Real slack;             // 1 - t1 - ... - t5
    bool zeros_ok;
    ZerosLemmaCheck zeros;
    Int n_choice, N_choice, m_max;
};

SlopeBudget budget_terms(const ConstructionParams& params);

struct ConstantAudit {
    std::string name;
    Real printed;
    Real recomputed;
    Real ratio;        // recomputed / printed (0 when printed = 0)
    bool exact_match;  // |ratio - 1| < 1e-12
    std::string note;
};

/// Every named constant of the reduction/extrapolation chain at the frozen
/// choices eps = 1/2, C1 = 2, evaluated from its defining expression and
/// compared against the printed value.  Mismatches are reported, never
/// substituted.
std::vector<ConstantAudit> reproduce_constants(long d);

struct TBoundCell {
    long d;
    Int N_E;
    Real t1, t2, t3, t4, t5, t4_displayed;
    bool pass1, pass2, pass3, pass4, pass5, pass4_displayed;
};

/// t-value audit across (d, N_E) at the (H0) floor with h_F/logNDelta = 1/4.
std::vector<TBoundCell> t_bound_audit(long d_max = 5, long ne_max = 10);

/// Closed-form constants of the main theorem.
struct TheoremConstants {
    long d;
    Real B_d;       // 10^16 (d log 2d)^1.54
    Real C_d;       // 1 / (10^16 d^2 (6094080 + 4.682e15 d + 883200 d log(48 d))^2)
    Real C_d_prime; // 1 / (10^12 d^2 (...)^2.08)
};

TheoremConstants theorem_constants(long d);

} // namespace ellh

#endif
