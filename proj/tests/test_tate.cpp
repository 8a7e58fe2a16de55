#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ellh/tate.hpp"

using namespace ellh;

static PrecisionGuard g_test_precision(128);

TEST_CASE("37a1 reduction classification") {
    WeierstrassModel m(0, 0, 1, -1, 0);
    LocalReductionData d37 = tate_reduce(m, Int(37));
    CHECK((d37.kind == ReductionKind::multiplicative_split ||
           d37.kind == ReductionKind::multiplicative_nonsplit));
    CHECK(d37.N_v == 1);
    // 15 is a quadratic nonresidue mod 37, so the node is non-split
    CHECK(d37.kind == ReductionKind::multiplicative_nonsplit);
    LocalReductionData d2 = tate_reduce(m, Int(2));
    CHECK(d2.kind == ReductionKind::good);
    CHECK(d2.N_v == 0);
}

TEST_CASE("11a1 is split multiplicative with N_v = 5") {
    WeierstrassModel m(0, -1, 1, -10, -20);
    LocalReductionData d = tate_reduce(m, Int(11));
    CHECK(d.kind == ReductionKind::multiplicative_split);
    CHECK(d.N_v == 5);
    CHECK(d.local_minimal);
}

TEST_CASE("already minimal model survives minimalisation") {
    WeierstrassModel m(0, 0, 1, -1, 0);
    MinimalModelResult g = global_minimal_model(m);
    CHECK(g.u == 1);
    CHECK(g.disc_min == 37);
    CHECK(g.model.same_equation(m));
}

TEST_CASE("y^2 = x^3 + 64 rescales by u = 2 to disc 432") {
    WeierstrassModel m(0, 0, 0, 0, 64);
    MinimalModelResult g = global_minimal_model(m);
    CHECK(g.u == 2);
    CHECK(abs(g.disc_min) == 432);
    CHECK(g.model.invariants().c4 == 0);
    CHECK(g.model.invariants().c6 == m.invariants().c6 / 64);
}

TEST_CASE("N_E is the lcm of the multiplicative N_v") {
    std::vector<LocalReductionData> rs;
    LocalReductionData a;
    a.p = 2;
    a.kind = ReductionKind::multiplicative_split;
    a.N_v = 2;
    LocalReductionData b;
    b.p = 3;
    b.kind = ReductionKind::multiplicative_nonsplit;
    b.N_v = 3;
    rs = {a, b};
    CHECK(compute_NE(rs) == 6);
    a.N_v = 1;
    rs = {a};
    CHECK(compute_NE(rs) == 1);
    CHECK(compute_NE({}) == 1);
    CHECK(is_semistable({}));
}

TEST_CASE("semistability detection") {
    WeierstrassModel m37(0, 0, 1, -1, 0);
    CHECK(is_semistable(reduce_all(global_minimal_model(m37).model)));
    WeierstrassModel mj0(0, 0, 0, 0, 1);  // additive at 2 and 3
    auto rs = reduce_all(global_minimal_model(mj0).model);
    CHECK(!is_semistable(rs));
    for (const auto& d : rs)
        CHECK(d.kind == ReductionKind::additive);
}

TEST_CASE("11a1 torsion curve N_E from tate_reduce") {
    WeierstrassModel m(0, -1, 1, -10, -20);
    auto rs = reduce_all(global_minimal_model(m).model);
    CHECK(compute_NE(rs) == 5);
}

TEST_CASE("reduction data is invariant under admissible changes with u = 1") {
    WeierstrassModel m(0, -1, 1, -10, -20);
    for (long r : {-2L, 1L, 3L}) {
        for (long s : {-1L, 2L}) {
            WeierstrassModel t = m.transformed(Int(1), Int(r), Int(s), Int(r - s));
            LocalReductionData d = tate_reduce(t, Int(11));
            CHECK(d.kind == ReductionKind::multiplicative_split);
            CHECK(d.N_v == 5);
        }
    }
}

TEST_CASE("bad-place exponents multiply back to |disc_min|") {
    for (auto coeffs : std::vector<std::array<long, 5>>{
             {0, 0, 1, -1, 0}, {0, -1, 1, -10, -20}, {1, 0, 1, 4, -6}, {0, 0, 0, -4, 4}}) {
        WeierstrassModel m(coeffs[0], coeffs[1], coeffs[2], coeffs[3], coeffs[4]);
        MinimalModelResult g = global_minimal_model(m);
        Int prod = 1;
        for (const auto& d : reduce_all(g.model)) {
            for (long i = 0; i < d.N_v; ++i)
                prod *= d.p;
        }
        CHECK(prod == abs(g.disc_min));
    }
}

TEST_CASE("large-prime split test uses the polynomial gcd path") {
    // disc of [0,0,0,-1,10000] carries a nine-digit prime factor
    WeierstrassModel m(0, 0, 0, -1, 10000);
    auto rs = reduce_all(global_minimal_model(m).model);
    Int prod = 1;
    for (const auto& d : rs)
        for (long i = 0; i < d.N_v; ++i)
            prod *= d.p;
    CHECK(prod == abs(m.disc()));
}
