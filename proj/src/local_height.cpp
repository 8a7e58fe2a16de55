#include "ellh/local_height.hpp"

#include <algorithm>

namespace ellh {

namespace {

Real log_p(const Int& p) { return log_real(to_real(p)); }

// ord_p with +infinity for 0 encoded as std::nullopt
std::optional<long> ord_p_opt(const Rat& q, const Int& p) {
    if (q == 0)
        return std::nullopt;
    return ord_p(q, p);
}

// 1/2 max{0, -ord_p(x)} as an exact rational
Rat half_pole_order(const Rat& x, const Int& p) {
    if (x == 0)
        return Rat(0);
    long o = ord_p(x, p);
    if (o >= 0)
        return Rat(0);
    return Rat(-o, 2);
}

bool reduces_to_singular_point(const WeierstrassModel& m, const RationalPoint& p,
                               const LocalReductionData& red) {
    const Rat& x = p.x();
    const Rat& y = p.y();
    if (x != 0 && ord_p(x, red.p) < 0)
        return false;  // reduces to O, smooth
    auto ox = ord_p_opt(x - Rat(red.sing_x), red.p);
    auto oy = ord_p_opt(y - Rat(red.sing_y), red.p);
    bool x_hits = !ox.has_value() || *ox >= 1;
    bool y_hits = !oy.has_value() || *oy >= 1;
    return x_hits && y_hits;
}

// Exact coefficient of log p in the canonical local height, via the
// quasi-quadraticity relation
//   lambda([m]P) = m^2 lambda(P) - log|psi_m(P)|_v + (m^2-1)/12 log|Delta|_v.
// For torsion P we use a fixed point [m]P = P; otherwise m is chosen so that
// [m]P has smooth reduction and the theorem's smooth formula applies to it.
Rat device_lambda_coeff(const WeierstrassModel& m, const RationalPoint& p,
                        const LocalReductionData& red, long torsion) {
    const Int& pr = red.p;
    const long N = red.N_v;
    if (torsion > 0) {
        long mm = torsion + 1;
        DivisionPolyEvaluator dp(m, p);
        const Rat& psi = dp.psi(mm);
        if (psi == 0)
            throw Error("psi vanished at a fixed-point multiple");
        Rat m2m1 = Rat(Int(mm) * Int(mm) - 1);
        return Rat(-ord_p(psi, pr), 1) / m2m1 + Rat(N, 12);
    }
    long mm = (red.kind == ReductionKind::multiplicative_split) ? 12 * N : 12;
    RationalPoint q = scalar_mul(m, Int(mm), p);
    if (q.is_origin())
        throw Error("unexpected torsion in height device");
    DivisionPolyEvaluator dp(m, p);
    const Rat& psi = dp.psi(mm);
    if (psi == 0)
        throw Error("psi vanished unexpectedly");
    Rat lam_q = half_pole_order(q.x(), pr) + Rat(N, 12);
    Rat r = (lam_q - Rat(ord_p(psi, pr), 1) + Rat(Int(mm) * Int(mm) - 1, 1) * Rat(N, 12)) /
            Rat(Int(mm) * Int(mm), 1);
    return r;
}

Rat b2_half_n(long i, long N) {
    // (1/2) B2(i/N) N  =  (i^2 - i N + N^2/6) / (2N)
    Rat t(i, N);
    Rat b2 = t * t - t + Rat(1, 6);
    return b2 * Rat(N, 2);
}

} // namespace

const char* height_case_name(HeightCase c) {
    switch (c) {
    case HeightCase::arch: return "arch";
    case HeightCase::good: return "good";
    case HeightCase::additive_or_nonsplit_via_12P: return "additive_or_nonsplit_via_12P";
    case HeightCase::split_multiplicative: return "split_multiplicative";
    case HeightCase::good_aggregate: return "good_aggregate";
    }
    return "?";
}

long torsion_order(const WeierstrassModel& m, const RationalPoint& p, long cap) {
    if (!on_curve(m, p))
        throw PointNotOnCurve();
    if (p.is_origin())
        return 1;
    RationalPoint q = p;
    for (long n = 1; n <= cap; ++n) {
        if (q.is_origin())
            return n;
        // torsion points on an integral model cannot have large coordinates
        if (mpz_sizeinbase(numerator(q.x()).backend().data(), 2) > 4096 ||
            mpz_sizeinbase(denominator(q.x()).backend().data(), 2) > 4096)
            return 0;
        q = group_add(m, q, p);
    }
    return 0;
}

long tate_parameter_order(const WeierstrassModel& minimal_model, const RationalPoint& p,
                          const LocalReductionData& red, long torsion_hint) {
    if (red.kind != ReductionKind::multiplicative_split)
        throw NotSplitMultiplicative();
    if (p.is_origin())
        throw PointIsOrigin();
    if (!reduces_to_singular_point(minimal_model, p, red))
        return 0;
    long torsion = torsion_hint >= 0 ? torsion_hint : torsion_order(minimal_model, p, 100);
    Rat r = device_lambda_coeff(minimal_model, p, red, torsion);
    Rat target = r - half_pole_order(p.x(), red.p);
    for (long i = 0; i <= red.N_v / 2; ++i) {
        if (b2_half_n(i, red.N_v) == target)
            return i;
    }
    throw Error("component index inversion failed (non-integral index)");
}

LocalHeightTerm nonarch_local_height(const WeierstrassModel& minimal_model,
                                     const RationalPoint& p,
                                     const LocalReductionData& red,
                                     long torsion_hint) {
    PrecisionGuard guard(current_precision_bits());
    if (p.is_origin())
        throw PointIsOrigin();
    if (!on_curve(minimal_model, p))
        throw PointNotOnCurve();
    LocalHeightTerm t;
    t.place = red.p;
    t.N_v = red.N_v;
    Rat m0 = half_pole_order(p.x(), red.p);

    if (red.kind == ReductionKind::good) {
        t.formula_case = HeightCase::good;
        t.coeff_log_p = m0;
    } else if (!reduces_to_singular_point(minimal_model, p, red)) {
        // smooth reduction at a bad place: the theorem's generic formula
        t.formula_case = (red.kind == ReductionKind::multiplicative_split)
                             ? HeightCase::split_multiplicative
                             : HeightCase::additive_or_nonsplit_via_12P;
        t.coeff_log_p = m0 + Rat(red.N_v, 12);
        if (red.kind == ReductionKind::multiplicative_split)
            t.ord_v = 0;
    } else {
        long torsion = torsion_hint >= 0 ? torsion_hint : torsion_order(minimal_model, p, 100);
        Rat r = device_lambda_coeff(minimal_model, p, red, torsion);
        t.coeff_log_p = r;
        if (red.kind == ReductionKind::multiplicative_split) {
            t.formula_case = HeightCase::split_multiplicative;
            Rat target = r - m0;
            for (long i = 0; i <= red.N_v / 2; ++i) {
                if (b2_half_n(i, red.N_v) == target) {
                    t.ord_v = i;
                    break;
                }
            }
            if (!t.ord_v)
                throw Error("split local height missed the B2 lattice");
        } else {
            t.formula_case = HeightCase::additive_or_nonsplit_via_12P;
        }
    }
    t.value = to_real(*t.coeff_log_p) * log_p(red.p);
    return t;
}

namespace {

// x-only doubling ladder on integer pairs.  Writing x = n/d in lowest terms,
// x(2P) = (n^4 - b4 n^2 d^2 - 2 b6 n d^3 - b8 d^4) /
//         (4 n^3 d + b2 n^2 d^2 + 2 b4 n d^3 + b6 d^4),
// and any common factor of the two sides is supported on primes dividing
// 2 Delta (the resultant of the duplication pair), so full reduction needs
// no big-integer gcd.
struct XLadder {
    Int n, d;
    const Invariants* v;
    std::vector<Int> strip_primes;

    XLadder(const WeierstrassModel& m, const RationalPoint& p) {
        n = numerator(p.x());
        d = denominator(p.x());
        v = &m.invariants();
        strip_primes = prime_divisors(2 * v->disc);
    }

    // returns false when 2P = O
    bool step() {
        Int n2 = n * n, d2 = d * d, nd = n * d;
        Int n4 = n2 * n2, d4 = d2 * d2;
        Int num = n4 - v->b4 * n2 * d2 - 2 * v->b6 * nd * d2 - v->b8 * d4;
        Int den = 4 * n2 * nd + v->b2 * n2 * d2 + 2 * v->b4 * nd * d2 + v->b6 * d4;
        if (den == 0)
            return false;
        for (const Int& p : strip_primes) {
            if (num == 0)
                break;
            Int rn, rd;
            long en = static_cast<long>(
                mpz_remove(rn.backend().data(), num.backend().data(), p.backend().data()));
            long ed = static_cast<long>(
                mpz_remove(rd.backend().data(), den.backend().data(), p.backend().data()));
            long e = std::min(en, ed);
            if (e == 0)
                continue;
            Int pe = 1;
            for (long i = 0; i < e; ++i)
                pe *= p;
            num /= pe;
            den /= pe;
        }
        if (den < 0) {
            den = -den;
            num = -num;
        }
        n = num;
        d = den;
        return true;
    }

    Real naive_h() const {
        Int an = n < 0 ? Int(-n) : n;
        Int mx = an > d ? an : d;
        if (mx <= 1)
            return Real(0);
        return log_real(to_real(mx)) / 2;
    }

    size_t bits() const {
        return mpz_sizeinbase(n.backend().data(), 2) + mpz_sizeinbase(d.backend().data(), 2);
    }
};

} // namespace

OracleRun naive_height_oracle_run(const WeierstrassModel& m, const RationalPoint& p,
                                  int doublings) {
    PrecisionGuard guard(current_precision_bits());
    if (doublings < 0)
        throw ParameterTooSmall("doublings must be nonnegative");
    OracleRun run;
    run.doublings = doublings;
    run.tail_bound = Real(0);
    if (p.is_origin()) {
        run.value = Real(0);
        return run;
    }
    XLadder lad(m, p);
    Real h_prev = lad.naive_h();
    Real max_delta = 0;
    Real four_k = 1;
    for (int k = 1; k <= doublings; ++k) {
        if (!lad.step())
            throw TorsionShortCircuit("[2^" + std::to_string(k) + "]P = O");
        Real h = lad.naive_h();
        max_delta = rmax(max_delta, abs(h - 4 * h_prev));
        h_prev = h;
        four_k *= 4;
    }
    run.value = h_prev / four_k;
    // |sum_{j>=K} delta_j / 4^{j+1}| <= sup|delta| / (3 * 4^K); the observed
    // max is inflated for safety
    run.tail_bound = (4 * max_delta + 1) / (3 * four_k);
    return run;
}

Real naive_height_oracle(const WeierstrassModel& m, const RationalPoint& p, int doublings) {
    return naive_height_oracle_run(m, p, doublings).value;
}

OracleRun naive_height_oracle_adaptive(const WeierstrassModel& m, const RationalPoint& p,
                                       const Real& target, int max_doublings,
                                       size_t size_cap_bits) {
    PrecisionGuard guard(current_precision_bits());
    OracleRun run;
    run.doublings = 0;
    if (p.is_origin()) {
        run.value = Real(0);
        run.tail_bound = Real(0);
        return run;
    }
    XLadder lad(m, p);
    Real h_prev = lad.naive_h();
    Real max_delta = 0;
    Real recent = 0;  // max |delta| over the last three steps
    Real d1 = 0, d2 = 0;
    Real four_k = 1;
    int k = 0;
    Real est = Real(1);
    while (k < max_doublings && lad.bits() < size_cap_bits / 4) {
        if (!lad.step())
            throw TorsionShortCircuit("[2^" + std::to_string(k + 1) + "]P = O");
        ++k;
        Real h = lad.naive_h();
        Real d0 = abs(h - 4 * h_prev);
        max_delta = rmax(max_delta, d0);
        recent = rmax(d0, rmax(d1, d2));
        d2 = d1;
        d1 = d0;
        h_prev = h;
        four_k *= 4;
        // tail model: |delta_j| grows at most 16x per step (the observed
        // square-map rate) until it saturates at the uniform bound C, so
        // sum_{j>=k} delta_j/4^{j+1} <= (4/3) sqrt(recent * C) / 4^k
        Real cbound = 4 * max_delta + 1;
        est = 4 * sqrt(rmax(recent, Real("1e-40")) * cbound) / (3 * four_k);
        if (k >= 11 && est < target)
            break;
    }
    run.value = h_prev / four_k;
    run.tail_bound = est;
    run.doublings = k;
    return run;
}

CurveContext CurveContext::make(const WeierstrassModel& m, unsigned precision_bits) {
    MinimalModelResult g = global_minimal_model(m);
    std::vector<LocalReductionData> red = reduce_all(g.model);
    PeriodData pd = period_lattice(g.model, precision_bits);
    Int ne = compute_NE(red);
    bool ss = is_semistable(red);
    return CurveContext{g.model, g, red, pd, ne, ss};
}

HeightReport canonical_height_ctx(const CurveContext& ctx, const RationalPoint& p,
                                  const CanonicalHeightOptions& opt) {
    PrecisionGuard guard(opt.precision_bits);
    HeightReport rep;
    rep.point = p;
    rep.torsion = torsion_order(ctx.minimal, p);
    if (p.is_origin()) {
        rep.canonical_height = Real(0);
        rep.oracle_height = Real(0);
        rep.discrepancy = Real(0);
        return rep;
    }

    Real total = 0;
    // archimedean
    {
        LocalHeightTerm t;
        t.place = -1;
        t.formula_case = HeightCase::arch;
        t.value = arch_local_height(ctx.minimal, p, ctx.periods);
        total += t.value;
        rep.terms.push_back(std::move(t));
    }
    // bad places
    Int den_bad_part = 1;
    for (const auto& red : ctx.reductions) {
        LocalHeightTerm t = nonarch_local_height(ctx.minimal, p, red, rep.torsion);
        total += t.value;
        long od = p.x() == 0 ? 0 : ord_p(p.x(), red.p);
        if (od < 0) {
            Int pk = 1;
            for (long i = 0; i < -od; ++i)
                pk *= red.p;
            den_bad_part *= pk;
        }
        rep.terms.push_back(std::move(t));
    }
    // good places, aggregated: (1/2) log of the good part of den(x)
    {
        Int d = denominator(p.x());
        Int dgood = d / den_bad_part;
        LocalHeightTerm t;
        t.place = 0;
        t.formula_case = HeightCase::good_aggregate;
        t.value = log_real(to_real(dgood)) / 2;
        total += t.value;
        rep.terms.push_back(std::move(t));
    }
    rep.canonical_height = total;

    if (rep.torsion > 0) {
        rep.oracle_height = Real(0);  // the naive limit of a torsion point
        rep.oracle_doublings = 0;
        rep.oracle_tail_bound = Real(0);
    } else if (opt.run_oracle) {
        OracleRun run = naive_height_oracle_run(ctx.minimal, p, opt.oracle_doublings);
        rep.oracle_height = run.value;
        rep.oracle_doublings = run.doublings;
        rep.oracle_tail_bound = run.tail_bound;
    } else {
        rep.oracle_height = rep.canonical_height;
        rep.oracle_tail_bound = Real(0);
    }
    rep.discrepancy = abs(rep.canonical_height - rep.oracle_height);
    return rep;
}

HeightReport canonical_height(const WeierstrassModel& m, const RationalPoint& p,
                              const CanonicalHeightOptions& opt) {
    if (!on_curve(m, p))
        throw PointNotOnCurve();
    CurveContext ctx = CurveContext::make(m, opt.precision_bits);
    const MinimalModelResult& g = ctx.minimalisation;
    RationalPoint pm = transform_point(p, g.u, g.r, g.s, g.t);
    if (!on_curve(ctx.minimal, pm))
        throw PointNotOnCurve("point lost in minimalisation");
    return canonical_height_ctx(ctx, pm, opt);
}

} // namespace ellh
