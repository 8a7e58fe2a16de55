#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ellh/curve.hpp"

using namespace ellh;

static PrecisionGuard g_test_precision(128);

TEST_CASE("invariants of 37a1") {
    WeierstrassModel m(0, 0, 1, -1, 0);
    const Invariants& v = m.invariants();
    CHECK(v.disc == 37);
    CHECK(v.c4 == 48);
    CHECK(v.j == Rat(110592, 37));
    CHECK(4 * v.b8 == v.b2 * v.b6 - v.b4 * v.b4);
    CHECK(v.c4 * v.c4 * v.c4 - v.c6 * v.c6 == 1728 * v.disc);
}

TEST_CASE("c4 = 0 forces j = 0") {
    WeierstrassModel m(0, 0, 0, 0, 1);
    CHECK(m.invariants().c4 == 0);
    CHECK(m.invariants().j == 0);
}

TEST_CASE("singular model rejected") {
    CHECK_THROWS_AS(WeierstrassModel(1, 0, 0, 0, 0), SingularModel);
}

TEST_CASE("rational coefficients cleared to integral form") {
    WeierstrassModel m = WeierstrassModel::from_rational(Rat(0), Rat(0), Rat(0),
                                                         Rat(-1, 4), Rat(0));
    CHECK(m.invariants().j == WeierstrassModel(0, 0, 0, -1, 0).invariants().j);
}

TEST_CASE("group law on 37a1") {
    WeierstrassModel m(0, 0, 1, -1, 0);
    RationalPoint p(Rat(0), Rat(0));
    CHECK(on_curve(m, p));
    RationalPoint two = group_add(m, p, p);
    CHECK(two == RationalPoint(Rat(1), Rat(0)));
    CHECK(group_add(m, p, RationalPoint::origin()) == p);
    CHECK(group_add(m, p, negate(m, p)).is_origin());
    CHECK(scalar_mul(m, Int(2), p) == two);
    CHECK(scalar_mul(m, Int(0), p).is_origin());
    CHECK(scalar_mul(m, Int(-1), p) == negate(m, p));
}

TEST_CASE("point off the curve is rejected") {
    WeierstrassModel m(0, 0, 1, -1, 0);
    RationalPoint bad(Rat(1), Rat(1));
    CHECK_THROWS_AS(group_add(m, bad, bad), PointNotOnCurve);
}

TEST_CASE("group law associativity on random triples") {
    WeierstrassModel m(0, 1, 1, -2, 0);  // rank 2, generators (0,0) and (1,0)
    RationalPoint g1(Rat(0), Rat(0)), g2(Rat(1), Rat(0));
    std::mt19937_64 rng(7);
    std::vector<RationalPoint> pts;
    for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= 2; ++b)
            pts.push_back(group_add(m, scalar_mul(m, Int(a), g1), scalar_mul(m, Int(b), g2)));
    for (int t = 0; t < 200; ++t) {
        const RationalPoint& p = pts[rng() % pts.size()];
        const RationalPoint& q = pts[rng() % pts.size()];
        const RationalPoint& r = pts[rng() % pts.size()];
        CHECK(group_add(m, group_add(m, p, q), r) == group_add(m, p, group_add(m, q, r)));
    }
}

TEST_CASE("scalar multiplication is multiplicative in the scalar") {
    WeierstrassModel m(0, 0, 1, -1, 0);
    RationalPoint p(Rat(0), Rat(0));
    for (long a = -5; a <= 5; ++a) {
        for (long b = -5; b <= 5; ++b) {
            RationalPoint lhs = scalar_mul(m, Int(a), scalar_mul(m, Int(b), p));
            RationalPoint rhs = scalar_mul(m, Int(a * b), p);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("division polynomial values detect torsion") {
    WeierstrassModel m(0, -1, 1, -10, -20);  // torsion point of order 5
    RationalPoint p(Rat(5), Rat(5));
    DivisionPolyEvaluator dp(m, p);
    CHECK(dp.psi(5) == 0);
    CHECK(dp.psi(2) != 0);
    CHECK(dp.psi(3) != 0);
    CHECK(dp.psi(7) != 0);
    CHECK(dp.psi(10) == 0);
}

TEST_CASE("coordinate change tracks invariants and the group law") {
    WeierstrassModel m(0, 0, 1, -1, 0);
    WeierstrassModel t = m.transformed(Int(1), Int(3), Int(-2), Int(5));
    CHECK(t.invariants().c4 == m.invariants().c4);
    CHECK(t.invariants().c6 == m.invariants().c6);
    CHECK(t.disc() == m.disc());
    RationalPoint p(Rat(0), Rat(0));
    REQUIRE(on_curve(m, p));
    RationalPoint pt = transform_point(p, Int(1), Int(3), Int(-2), Int(5));
    CHECK(on_curve(t, pt));
    RationalPoint two_t = transform_point(group_add(m, p, p), Int(1), Int(3), Int(-2), Int(5));
    CHECK(group_add(t, pt, pt) == two_t);
}
