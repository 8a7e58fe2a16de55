#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ellh/local_height.hpp"

using namespace ellh;

static PrecisionGuard g_test_precision(128);

namespace {
Real tol(const char* s) { return Real(s); }
}

TEST_CASE("torsion orders by exact group law") {
    WeierstrassModel m11(0, -1, 1, -10, -20);
    CHECK(torsion_order(m11, RationalPoint(Rat(5), Rat(5))) == 5);
    CHECK(torsion_order(m11, RationalPoint::origin()) == 1);
    WeierstrassModel m37(0, 0, 1, -1, 0);
    CHECK(torsion_order(m37, RationalPoint(Rat(0), Rat(0))) == 0);  // infinite
    WeierstrassModel m36(0, 0, 0, 0, 1);
    CHECK(torsion_order(m36, RationalPoint(Rat(2), Rat(3))) == 6);
    CHECK(torsion_order(m36, RationalPoint(Rat(0), Rat(1))) == 3);
    CHECK(torsion_order(m36, RationalPoint(Rat(-1), Rat(0))) == 2);
}

TEST_CASE("component index at the split place of 11a1") {
    CurveContext ctx = CurveContext::make(WeierstrassModel(0, -1, 1, -10, -20), 128);
    REQUIRE(ctx.reductions.size() == 1);
    const auto& red = ctx.reductions[0];
    RationalPoint p(Rat(5), Rat(5));
    long i = tate_parameter_order(ctx.minimal, p, red);
    CHECK(i == 1);
    // nonsingular reduction lands on the identity component
    RationalPoint q = scalar_mul(ctx.minimal, Int(5), group_add(ctx.minimal, p, p));
    if (!q.is_origin())
        CHECK(tate_parameter_order(ctx.minimal, q, red) == 0);
    // doubling congruence through the folded representative
    long i2 = tate_parameter_order(ctx.minimal, group_add(ctx.minimal, p, p), red);
    long expect = (2 * i) % red.N_v;
    expect = std::min(expect, red.N_v - expect);
    CHECK(i2 == expect);
}

TEST_CASE("doubling congruence across corpus-style points") {
    // 14a1 has split places with N_v = 6 and 3
    CurveContext ctx = CurveContext::make(WeierstrassModel(1, 0, 1, 4, -6), 128);
    RationalPoint p(Rat(2), Rat(2));
    for (const auto& red : ctx.reductions) {
        if (red.kind != ReductionKind::multiplicative_split)
            continue;
        long i1 = tate_parameter_order(ctx.minimal, p, red);
        RationalPoint p2 = group_add(ctx.minimal, p, p);
        if (p2.is_origin())
            continue;
        long i2 = tate_parameter_order(ctx.minimal, p2, red);
        long expect = (2 * i1) % red.N_v;
        expect = std::min(expect, red.N_v - expect);
        CHECK(i2 == expect);
    }
}

TEST_CASE("split local height hits the B2 lattice; mid-component value") {
    // B2(1/2) = -1/12: a mid-component point contributes -(1/24) N_v log p
    Rat b2_half = Rat(1, 4) - Rat(1, 2) + Rat(1, 6);
    CHECK(b2_half == Rat(-1, 12));
    CurveContext ctx = CurveContext::make(WeierstrassModel(0, -1, 1, -10, -20), 128);
    LocalHeightTerm t = nonarch_local_height(ctx.minimal, RationalPoint(Rat(5), Rat(5)),
                                             ctx.reductions[0]);
    CHECK(t.formula_case == HeightCase::split_multiplicative);
    REQUIRE(t.ord_v.has_value());
    CHECK(*t.ord_v == 1);
    // lambda = (1/2) B2(1/5) * 5 * log 11 exactly
    Rat expect = (Rat(1, 25) - Rat(1, 5) + Rat(1, 6)) * Rat(5, 2);
    CHECK(*t.coeff_log_p == expect);
}

TEST_CASE("Prop-1 floor is respected exactly at every finite place") {
    for (auto c : std::vector<std::array<long, 5>>{{0, 0, 1, -1, 0},
                                                   {0, -1, 1, -10, -20},
                                                   {1, 0, 1, 4, -6},
                                                   {0, 0, 0, 0, 1},
                                                   {0, 0, 0, 4, 0}}) {
        WeierstrassModel m(c[0], c[1], c[2], c[3], c[4]);
        CurveContext ctx = CurveContext::make(m, 128);
        const MinimalModelResult& g = ctx.minimalisation;
        std::vector<RationalPoint> pts;
        WeierstrassModel orig(c[0], c[1], c[2], c[3], c[4]);
        // take whatever small points exist on these corpus curves
        for (long x = -3; x <= 5; ++x) {
            for (long y = -8; y <= 8; ++y) {
                RationalPoint p{Rat(x), Rat(y)};
                if (on_curve(orig, p))
                    pts.push_back(transform_point(p, g.u, g.r, g.s, g.t));
            }
        }
        for (const auto& p : pts) {
            for (const auto& red : ctx.reductions) {
                LocalHeightTerm t = nonarch_local_height(ctx.minimal, p, red);
                REQUIRE(t.coeff_log_p.has_value());
                CHECK(*t.coeff_log_p >= Rat(-red.N_v, 24));
            }
        }
    }
}

TEST_CASE("good reduction with integral x gives a zero term") {
    CurveContext ctx = CurveContext::make(WeierstrassModel(0, 0, 1, -1, 0), 128);
    LocalReductionData good = tate_reduce(ctx.minimal, Int(5));
    REQUIRE(good.kind == ReductionKind::good);
    LocalHeightTerm t = nonarch_local_height(ctx.minimal, RationalPoint(Rat(0), Rat(0)), good);
    CHECK(*t.coeff_log_p == 0);
}

TEST_CASE("canonical height of the 37a1 generator: decomposition vs ladder") {
    CanonicalHeightOptions opt;
    opt.oracle_doublings = 14;
    WeierstrassModel m(0, 0, 1, -1, 0);
    RationalPoint p(Rat(0), Rat(0));
    HeightReport r = canonical_height(m, p, opt);
    CHECK(r.torsion == 0);
    // frozen from a 14-doubling ladder run; decomposition must sit on it
    CHECK(abs(r.canonical_height - Real("0.0255557041199844201")) < tol("1e-12"));
    CHECK(r.discrepancy < tol("1e-10"));
}

TEST_CASE("canonical height vanishes on torsion") {
    WeierstrassModel m(0, -1, 1, -10, -20);
    HeightReport r = canonical_height(m, RationalPoint(Rat(5), Rat(5)), {});
    CHECK(r.torsion == 5);
    CHECK(abs(r.canonical_height) < tol("1e-12"));
}

TEST_CASE("quadraticity for n <= 8") {
    CurveContext ctx = CurveContext::make(WeierstrassModel(0, 0, 1, -1, 0), 128);
    CanonicalHeightOptions opt;
    opt.run_oracle = false;
    RationalPoint p(Rat(0), Rat(0));
    Real h1 = canonical_height_ctx(ctx, p, opt).canonical_height;
    for (long n = 2; n <= 8; ++n) {
        Real hn = canonical_height_ctx(ctx, scalar_mul(ctx.minimal, Int(n), p), opt)
                      .canonical_height;
        CHECK(abs(hn - Real(n * n) * h1) < tol("1e-10"));
    }
}

TEST_CASE("parallelogram law on random pairs") {
    CurveContext ctx = CurveContext::make(WeierstrassModel(0, 1, 1, -2, 0), 128);
    CanonicalHeightOptions opt;
    opt.run_oracle = false;
    RationalPoint g1(Rat(0), Rat(0)), g2(Rat(1), Rat(0));
    std::mt19937_64 rng(3);
    auto hh = [&](const RationalPoint& q) {
        return q.is_origin() ? Real(0)
                             : canonical_height_ctx(ctx, q, opt).canonical_height;
    };
    for (int t = 0; t < 10; ++t) {
        long a = static_cast<long>(rng() % 5) - 2;
        long b = static_cast<long>(rng() % 5) - 2;
        RationalPoint p = group_add(ctx.minimal, scalar_mul(ctx.minimal, Int(a), g1),
                                    scalar_mul(ctx.minimal, Int(b), g2));
        RationalPoint q = group_add(ctx.minimal, scalar_mul(ctx.minimal, Int(b - 1), g1),
                                    scalar_mul(ctx.minimal, Int(1 - a), g2));
        Real lhs = hh(group_add(ctx.minimal, p, q)) +
                   hh(group_add(ctx.minimal, p, negate(ctx.minimal, q)));
        Real rhs = 2 * hh(p) + 2 * hh(q);
        CHECK(abs(lhs - rhs) < tol("1e-10"));
    }
}

TEST_CASE("oracle short-circuits on 2-power torsion") {
    WeierstrassModel m(0, 0, 0, -1, 0);
    CHECK_THROWS_AS(naive_height_oracle(m, RationalPoint(Rat(0), Rat(0)), 3),
                    TorsionShortCircuit);
    CHECK(naive_height_oracle(m, RationalPoint::origin(), 5) == 0);
}

TEST_CASE("odd torsion oscillates near zero in the ladder") {
    WeierstrassModel m(0, -1, 1, -10, -20);
    OracleRun r = naive_height_oracle_run(m, RationalPoint(Rat(5), Rat(5)), 10);
    CHECK(abs(r.value) < tol("1e-6"));
}

TEST_CASE("dual route at a split place: device equals smooth formula") {
    // points with nonsingular reduction must satisfy the closed-form case,
    // and the division-polynomial device reproduces it
    CurveContext ctx = CurveContext::make(WeierstrassModel(0, -1, 1, -10, -20), 128);
    RationalPoint p(Rat(16), Rat(-61));  // [2](5,5), also torsion
    LocalHeightTerm t = nonarch_local_height(ctx.minimal, p, ctx.reductions[0]);
    REQUIRE(t.ord_v.has_value());
    CHECK(*t.ord_v == 2);
    Rat expect = (Rat(4, 25) - Rat(2, 5) + Rat(1, 6)) * Rat(5, 2);
    CHECK(*t.coeff_log_p == expect);
}

TEST_CASE("adaptive oracle reaches a requested tail bound") {
    WeierstrassModel m(0, 0, 1, -1, 0);
    OracleRun r = naive_height_oracle_adaptive(m, RationalPoint(Rat(0), Rat(0)), tol("3e-9"));
    CHECK(r.tail_bound < tol("3e-9"));
    CHECK(abs(r.value - Real("0.02555570411998442")) < tol("5e-9"));
}
