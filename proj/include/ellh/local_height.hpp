#ifndef ELLH_LOCAL_HEIGHT_HPP
#define ELLH_LOCAL_HEIGHT_HPP

#include <optional>
#include <vector>

#include "ellh/arch_height.hpp"
#include "ellh/tate.hpp"

namespace ellh {

enum class HeightCase {
    arch,
    good,
    additive_or_nonsplit_via_12P,
    split_multiplicative,
    good_aggregate,  // all good primes dividing den(x), summed
};

const char* height_case_name(HeightCase c);

struct LocalHeightTerm {
    // place: p > 0 a finite prime; p = 0 for the aggregated good part;
    // p = -1 for the archimedean place
    Int place;
    HeightCase formula_case = HeightCase::good;
    Real value;
    // finite single-prime terms carry the exact coefficient of log p
    std::optional<Rat> coeff_log_p;
    long N_v = 0;
    std::optional<long> ord_v;  // split case only (folded component index)
};

struct HeightReport {
    RationalPoint point;
    Real canonical_height;
    std::vector<LocalHeightTerm> terms;
    Real oracle_height;
    Real discrepancy;
    long torsion = 0;  // 0 = infinite order
    int oracle_doublings = 0;
    Real oracle_tail_bound;
};

/// Exact order of P, or 0 for infinite order.  Group-law search with a
/// coordinate-size circuit breaker; the cap is a safety margin far above
/// any rational torsion order.
long torsion_order(const WeierstrassModel& m, const RationalPoint& p, long cap = 10000);

/// Folded component index i in [0, N_v/2] of P at a split multiplicative
/// place (the Tate parametrisation determines the index up to i <-> N_v - i;
/// the folded representative is the canonical one).
long tate_parameter_order(const WeierstrassModel& minimal_model, const RationalPoint& p,
                          const LocalReductionData& red, long torsion_hint = -1);

/// Non-archimedean canonical local height at a bad or good prime of the
/// globally minimal model (Tate normalisation).
LocalHeightTerm nonarch_local_height(const WeierstrassModel& minimal_model,
                                     const RationalPoint& p,
                                     const LocalReductionData& red,
                                     long torsion_hint = -1);

struct OracleRun {
    Real value;
    Real tail_bound;   // estimated bound on |value - hhat|
    int doublings;
    bool short_circuited = false;  // some multiple hit O (torsion)
};

/// Tate's limit process h([2^k]P)/4^k in exact arithmetic.
OracleRun naive_height_oracle_run(const WeierstrassModel& m, const RationalPoint& p,
                                  int doublings);
Real naive_height_oracle(const WeierstrassModel& m, const RationalPoint& p, int doublings);

/// Adaptive variant: doubles until the estimated tail is below `target`
/// or the coordinate-size cap is reached.
OracleRun naive_height_oracle_adaptive(const WeierstrassModel& m, const RationalPoint& p,
                                       const Real& target, int max_doublings = 17,
                                       size_t size_cap_bits = 700'000'000);

struct CanonicalHeightOptions {
    unsigned precision_bits = kDefaultPrecisionBits;
    int oracle_doublings = 12;
    bool run_oracle = true;
};

/// Canonical height as the sum of canonical local heights, with the naive
/// limit as an independent cross-check.  The model is minimalised
/// internally; P is given on `m`.
HeightReport canonical_height(const WeierstrassModel& m, const RationalPoint& p,
                              const CanonicalHeightOptions& opt = {});

/// Shared per-curve context so batch callers reuse periods and reduction data.
struct CurveContext {
    WeierstrassModel minimal;
    MinimalModelResult minimalisation;
    std::vector<LocalReductionData> reductions;
    PeriodData periods;
    Int N_E;
    bool semistable;

    static CurveContext make(const WeierstrassModel& m, unsigned precision_bits);
};

HeightReport canonical_height_ctx(const CurveContext& ctx, const RationalPoint& p_minimal,
                                  const CanonicalHeightOptions& opt = {});

} // namespace ellh

#endif
