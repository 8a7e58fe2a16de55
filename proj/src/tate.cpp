#include "ellh/tate.hpp"

#include <algorithm>

namespace ellh {

namespace {

Int mod_pos(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0)
        r += m;
    return r;
}

Int pow_int(const Int& b, long e) {
    Int r = 1;
    for (long i = 0; i < e; ++i)
        r *= b;
    return r;
}

Int mod_inverse(const Int& a, const Int& p) {
    Int r;
    if (mpz_invert(r.backend().data(), a.backend().data(), p.backend().data()) == 0)
        throw Error("not invertible");
    return r;
}

bool is_qr(const Int& a, const Int& p) {
    // p odd prime, a not divisible by p
    Int b = mod_pos(a, p);
    return mpz_legendre(b.backend().data(), p.backend().data()) == 1;
}

// Kraus integrality conditions: (c4, c6) arises from an integral model.
bool kraus_ok(const Int& c4, const Int& c6) {
    // p = 3: ord_3(c6) != 2
    if (c6 != 0 && ord_p(c6, 3) == 2)
        return false;
    // p = 2: c6 = -1 (mod 4), or (c4 = 0 (mod 16) and c6 = 0 or 8 (mod 32))
    Int c6m4 = mod_pos(c6, 4);
    if (c6m4 == 3)
        return true;
    Int c4m16 = mod_pos(c4, 16);
    Int c6m32 = mod_pos(c6, 32);
    return c4m16 == 0 && (c6m32 == 0 || c6m32 == 8);
}

// Reconstruct an integral model with the given (valid) c-invariants.
WeierstrassModel model_from_c(const Int& c4, const Int& c6) {
    for (int cand = -5; cand <= 6; ++cand) {
        Int b2 = cand;
        if (mod_pos(b2, 4) > 1)
            continue;  // b2 = a1^2 + 4 a2 forces b2 in {0,1} mod 4
        Int t1 = b2 * b2 - c4;
        if (t1 % 24 != 0)
            continue;
        Int b4 = t1 / 24;
        Int t2 = -b2 * b2 * b2 + 36 * b2 * b4 - c6;
        if (t2 % 216 != 0)
            continue;
        Int b6 = t2 / 216;
        Int a1 = mod_pos(b2, 2);
        Int a3 = mod_pos(b6, 2);
        Int t3 = b2 - a1 * a1;
        Int t4 = b6 - a3 * a3;
        Int t5 = b4 - a1 * a3;
        if (t3 % 4 != 0 || t4 % 4 != 0 || t5 % 2 != 0)
            continue;
        Int a2 = t3 / 4, a6 = t4 / 4, a4 = t5 / 2;
        try {
            WeierstrassModel m(a1, a2, a3, a4, a6);
            if (m.invariants().c4 == c4 && m.invariants().c6 == c6)
                return m;
        } catch (const SingularModel&) {
        }
    }
    throw Error("no integral model for c-invariants (Kraus conditions violated?)");
}

// Largest admissible scaling exponent at p for (c4, c6, disc).
long scaling_exponent(const Invariants& v, const Int& p) {
    long e = ord_p(v.disc, p) / 12;
    if (v.c4 != 0)
        e = std::min(e, ord_p(v.c4, p) / 4);
    if (v.c6 != 0)
        e = std::min(e, ord_p(v.c6, p) / 6);
    if (e <= 0)
        return 0;
    if (p == 2 || p == 3) {
        while (e > 0) {
            Int c4s = v.c4 / pow_int(p, 4 * e);
            Int c6s = v.c6 / pow_int(p, 6 * e);
            if (kraus_ok(c4s, c6s))
                break;
            --e;
        }
    }
    return e;
}

// Singular point of the reduction mod p, as lifts in [0,p)^2.  Assumes p | disc.
std::pair<Int, Int> singular_point(const WeierstrassModel& m, const Int& p) {
    const Invariants& v = m.invariants();
    if (p < 1000) {
        for (Int x = 0; x < p; ++x) {
            for (Int y = 0; y < p; ++y) {
                Int f = y * y + m.a1() * x * y + m.a3() * y - x * x * x - m.a2() * x * x -
                        m.a4() * x - m.a6();
                if (mod_pos(f, p) != 0)
                    continue;
                Int fy = 2 * y + m.a1() * x + m.a3();
                Int fx = m.a1() * y - 3 * x * x - 2 * m.a2() * x - m.a4();
                if (mod_pos(fy, p) == 0 && mod_pos(fx, p) == 0)
                    return {x, y};
            }
        }
        throw Error("no singular point found mod " + p.str());
    }
    // p odd and large: complete the square; the double root of
    // f(x) = 4x^3 + b2 x^2 + 2 b4 x + b6 is a root of gcd(f, f').
    Int inv2 = mod_inverse(Int(2), p);
    Int A3 = mod_pos(Int(4), p), A2 = mod_pos(v.b2, p), A1 = mod_pos(2 * v.b4, p),
        A0 = mod_pos(v.b6, p);
    // f' = 12x^2 + 2 b2 x + 2 b4
    Int B2 = mod_pos(Int(12), p), B1 = mod_pos(2 * v.b2, p), B0 = mod_pos(2 * v.b4, p);
    // one Euclid step: r(x) = f - (q x + q0) f' has degree <= 1
    Int invB2 = mod_inverse(B2, p);
    Int q1 = mod_pos(A3 * invB2, p);
    Int q0 = mod_pos((A2 - q1 * B1) * invB2, p);
    Int r1 = mod_pos(A1 - q1 * B0 - q0 * B1, p);
    Int r0 = mod_pos(A0 - q0 * B0, p);
    Int x0;
    if (r1 == 0 && r0 == 0) {
        // f' | f: double root of f' (triple root of f)
        x0 = mod_pos(-B1 * mod_inverse(2 * B2, p), p);
    } else if (r1 != 0) {
        x0 = mod_pos(-r0 * mod_inverse(r1, p), p);
    } else {
        throw Error("gcd degenerate while locating singular point");
    }
    Int y0 = mod_pos(-(m.a1() * x0 + m.a3()) * inv2, p);
    return {x0, y0};
}

} // namespace

const char* reduction_kind_name(ReductionKind k) {
    switch (k) {
    case ReductionKind::good: return "good";
    case ReductionKind::multiplicative_split: return "multiplicative_split";
    case ReductionKind::multiplicative_nonsplit: return "multiplicative_nonsplit";
    case ReductionKind::additive: return "additive";
    }
    return "?";
}

MinimalModelResult global_minimal_model(const WeierstrassModel& m) {
    const Invariants& v = m.invariants();
    Int u = 1;
    // only primes with p^12 | disc can admit a rescaling
    for (const auto& [p, e] : factorize(v.disc)) {
        if (e >= 12) {
            long k = scaling_exponent(v, p);
            u *= pow_int(p, k);
        }
    }
    Int u4 = u * u * u * u, u6 = u4 * u * u;
    Int c4m = v.c4 / u4, c6m = v.c6 / u6;
    WeierstrassModel mm = model_from_c(c4m, c6m);

    // recover the composite transformation (u, r, s, t) from input to mm
    Int s2 = u * mm.a1() - m.a1();
    Int r3 = u * u * mm.a2() - m.a2();
    if (s2 % 2 != 0)
        throw Error("non-integral s in minimalisation");
    Int s = s2 / 2;
    Int rnum = r3 + s * m.a1() + s * s;
    if (rnum % 3 != 0)
        throw Error("non-integral r in minimalisation");
    Int r = rnum / 3;
    Int tnum = u * u * u * mm.a3() - m.a3() - r * m.a1();
    if (tnum % 2 != 0)
        throw Error("non-integral t in minimalisation");
    Int t = tnum / 2;
    if (!m.transformed(u, r, s, t).same_equation(mm))
        throw Error("minimal model transformation mismatch");

    MinimalModelResult out{mm, mm.disc(), u, r, s, t};
    return out;
}

LocalReductionData tate_reduce(const WeierstrassModel& m, const Int& p) {
    if (!is_prime(p))
        throw Error("tate_reduce needs a prime");
    MinimalModelResult g = global_minimal_model(m);
    const WeierstrassModel& mm = g.model;

    LocalReductionData d;
    d.p = p;
    d.N_v = (mm.disc() % p == 0) ? ord_p(mm.disc(), p) : 0;
    d.local_minimal = (g.u % p != 0);
    if (d.N_v == 0) {
        d.kind = ReductionKind::good;
        return d;
    }

    auto [x0, y0] = singular_point(mm, p);
    d.sing_x = x0;
    d.sing_y = y0;
    WeierstrassModel sh = mm.transformed(Int(1), x0, Int(0), y0);

    // node <=> the tangent quadratic T^2 + a1 T - a2 is nondegenerate mod p,
    // i.e. p does not divide b2 of the shifted model
    Int b2s = sh.invariants().b2;
    if (mod_pos(b2s, p) == 0) {
        d.kind = ReductionKind::additive;
        return d;
    }
    bool split;
    if (p == 2) {
        // T^2 + a1 T - a2 over F_2 with a1 odd: splits iff a2 even
        split = mod_pos(sh.a2(), p) == 0;
    } else {
        split = is_qr(b2s, p);
    }
    d.kind = split ? ReductionKind::multiplicative_split
                   : ReductionKind::multiplicative_nonsplit;
    return d;
}

std::vector<LocalReductionData> reduce_all(const WeierstrassModel& minimal_model) {
    std::vector<LocalReductionData> out;
    for (const auto& [p, e] : factorize(minimal_model.disc()))
        out.push_back(tate_reduce(minimal_model, p));
    return out;
}

Int compute_NE(const std::vector<LocalReductionData>& reductions) {
    Int ne = 1;
    for (const auto& d : reductions) {
        if (d.kind == ReductionKind::multiplicative_split ||
            d.kind == ReductionKind::multiplicative_nonsplit) {
            Int nv = d.N_v;
            Int l;
            mpz_lcm(l.backend().data(), ne.backend().data(), nv.backend().data());
            ne = l;
        }
    }
    return ne;
}

bool is_semistable(const std::vector<LocalReductionData>& reductions) {
    return std::none_of(reductions.begin(), reductions.end(), [](const auto& d) {
        return d.kind == ReductionKind::additive;
    });
}

} // namespace ellh
