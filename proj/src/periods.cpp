#include "ellh/periods.hpp"

#include <algorithm>

namespace ellh {

namespace {

Real eps_bits(long bits) {
    Real e = 1;
    return ldexp(e, -static_cast<long>(bits));
}

long work_bits() { return current_precision_bits() + kGuardBits; }

// Largest real root of the monic cubic x^3 + c2 x^2 + c1 x + c0 inside [lo, hi],
// by bisection followed by Newton.  f(lo) and f(hi) must have opposite signs.
Real real_root_in(const Real& c2, const Real& c1, const Real& c0, Real lo, Real hi) {
    auto f = [&](const Real& x) { return ((x + c2) * x + c1) * x + c0; };
    Real flo = f(lo);
    for (int i = 0; i < 64; ++i) {
        Real mid = (lo + hi) / 2;
        Real fm = f(mid);
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Real x = (lo + hi) / 2;
    for (int i = 0; i < 60; ++i) {
        Real fx = f(x);
        Real dfx = (3 * x + 2 * c2) * x + c1;
        if (dfx == 0)
            break;
        Real step = fx / dfx;
        x -= step;
        if (abs(step) <= abs(x) * eps_bits(work_bits() - 4))
            break;
    }
    return x;
}

} // namespace

Cplx agm(Cplx a, Cplx b) {
    const Real tol = eps_bits(work_bits() - 6);
    for (int it = 0; it < 1000; ++it) {
        Cplx am = (a + b) / Real(2);
        Cplx gm = sqrt_c(a * b);
        // optimal choice of square-root sign
        Real d_minus = norm2(am - gm);
        Real d_plus = norm2(am + gm);
        if (d_minus > d_plus) {
            gm = -gm;
        } else if (d_minus == d_plus && norm2(am) != 0) {
            Cplx ratio = gm / am;
            if (ratio.im <= 0)
                gm = -gm;
        }
        a = am;
        b = gm;
        if (abs_c(a - b) <= tol * abs_c(a))
            return a;
    }
    throw PrecisionExhausted("AGM failed to converge");
}

Cplx carlson_rf(Cplx x, Cplx y, Cplx z) {
    // duplication until nearly equal, then the degree-5 Taylor tail
    const long prec = work_bits();
    Real tol = eps_bits(prec / 6 + 4);
    Cplx mu;
    for (int it = 0;; ++it) {
        if (it > 400)
            throw PrecisionExhausted("R_F duplication stalled");
        mu = (x + y + z) / Real(3);
        Real scale = abs_c(mu);
        // mu can vanish exactly on the first pass (e.g. b2 = 0, x(P) = 0);
        // one duplication shifts all arguments positive
        if (scale > 0) {
            Real dev = rmax(rmax(abs_c(x - mu), abs_c(y - mu)), abs_c(z - mu));
            if (dev <= tol * scale)
                break;
        }
        Cplx sx = sqrt_c(x), sy = sqrt_c(y), sz = sqrt_c(z);
        Cplx lam = sx * sy + sy * sz + sz * sx;
        x = (x + lam) / Real(4);
        y = (y + lam) / Real(4);
        z = (z + lam) / Real(4);
    }
    Cplx X = (mu - x) / mu;
    Cplx Y = (mu - y) / mu;
    Cplx Z = -(X + Y);
    Cplx E2 = X * Y - Z * Z;
    Cplx E3 = X * Y * Z;
    Cplx one(Real(1));
    Cplx series = one - Real(1) / Real(10) * E2 + Real(1) / Real(14) * E3 +
                  Real(1) / Real(24) * (E2 * E2) - Real(3) / Real(44) * (E2 * E3);
    return series / sqrt_c(mu);
}

namespace {

// Roots of 4x^3 + b2 x^2 + 2 b4 x + b6 for a nonsingular real model.
// Ordering: disc > 0 -> e1 > e2 > e3 all real; disc < 0 -> e1 real,
// e2 with Im > 0, e3 = conj(e2).
std::array<Cplx, 3> cubic_roots(const WeierstrassModel& m, bool& three_real) {
    const Invariants& v = m.invariants();
    Real c2 = to_real(v.b2) / 4;
    Real c1 = to_real(v.b4) / 2;
    Real c0 = to_real(v.b6) / 4;
    // Cauchy bound for |roots|
    Real bound = 1 + rmax(rmax(abs(c2), abs(c1)), abs(c0));
    three_real = v.disc > 0;
    std::array<Cplx, 3> out;
    if (three_real) {
        // critical points of the monic cubic bracket the roots
        Real disc_q = sqrt(c2 * c2 - 3 * c1);
        Real r1 = (-c2 - disc_q) / 3;
        Real r2 = (-c2 + disc_q) / 3;
        Real e_hi = real_root_in(c2, c1, c0, r2, bound);
        Real e_mid = real_root_in(c2, c1, c0, r1, r2);
        Real e_lo = real_root_in(c2, c1, c0, -bound, r1);
        out[0] = Cplx(e_hi);
        out[1] = Cplx(e_mid);
        out[2] = Cplx(e_lo);
    } else {
        auto fmono = [&](const Real& x) { return ((x + c2) * x + c1) * x + c0; };
        // single real root: expand the bracket until a sign change appears
        Real lo = -bound, hi = bound;
        while ((fmono(lo) > 0) == (fmono(hi) > 0)) {
            lo *= 2;
            hi *= 2;
        }
        Real e1 = real_root_in(c2, c1, c0, lo, hi);
        // deflate: x^2 + B x + C
        Real B = c2 + e1;
        Real C = c1 + e1 * B;
        Real half = B / 2;
        Real rad = C - half * half;
        if (rad <= 0)
            throw PrecisionExhausted("conjugate pair collapsed to real roots");
        Real s = sqrt(rad);
        out[0] = Cplx(e1);
        out[1] = Cplx(-half, s);
        out[2] = Cplx(-half, -s);
    }
    return out;
}

} // namespace

PeriodData period_lattice(const WeierstrassModel& m, unsigned precision_bits) {
    PrecisionGuard guard(precision_bits);
    PeriodData pd;
    pd.precision_bits = precision_bits;
    pd.roots = cubic_roots(m, pd.three_real_roots);
    const Real pi = pi_value();

    Cplx w_re, w_im;
    if (pd.three_real_roots) {
        Real e1 = pd.roots[0].re, e2 = pd.roots[1].re, e3 = pd.roots[2].re;
        Real a = sqrt(e1 - e3), b = sqrt(e1 - e2), c = sqrt(e2 - e3);
        Real m_re = agm(Cplx(a), Cplx(b)).re;
        Real m_im = agm(Cplx(a), Cplx(c)).re;
        w_re = Cplx(pi / m_re);
        w_im = Cplx(Real(0), pi / m_im);
    } else {
        // u^2 = e1 - e3 has positive imaginary part; Re u, Im u > 0
        Cplx u = sqrt_c(pd.roots[0] - pd.roots[2]);
        Real m_re = agm(Cplx(u.re), Cplx(abs_c(u))).re;
        Real m_im = agm(Cplx(u.im), Cplx(abs_c(u))).re;
        Real omega_re = pi / m_re;
        Real omega_im = pi / m_im;
        w_re = Cplx(omega_re);
        w_im = Cplx(omega_re / 2, omega_im / 2);
    }
    pd.real_period = w_re.re;
    pd.imag_period = w_im;

    // reduce tau = w_im / w_re into the fundamental domain, tracking the basis
    Cplx w1 = w_re, w2 = w_im;
    Cplx tau = w2 / w1;
    const Real tol = eps_bits(work_bits() / 2);
    for (int it = 0; it < 10000; ++it) {
        Real n = round(tau.re);
        if (n != 0) {
            // tau -> tau - n
            Cplx shift = Cplx(n) * w1;
            w2 = w2 - shift;
            tau = w2 / w1;
        }
        if (norm2(tau) < 1 - tol) {
            // tau -> -1/tau
            Cplx ow1 = w1;
            w1 = w2;
            w2 = -ow1;
            tau = w2 / w1;
            continue;
        }
        break;
    }
    // canonical boundary representative: Re in (-1/2, 1/2]; Re >= 0 when |tau| = 1
    if (abs(tau.re + Real(1) / 2) <= tol) {
        w2 = w2 + w1;
        tau = w2 / w1;
    }
    if (abs(norm2(tau) - 1) <= tol && tau.re < -tol) {
        Cplx ow1 = w1;
        w1 = w2;
        w2 = -ow1;
        tau = w2 / w1;
    }
    if (tau.im <= 0)
        throw PrecisionExhausted("period basis lost orientation");

    pd.omega1 = w1;
    pd.omega2 = w2;
    pd.tau = tau;
    pd.q = exp_c(Cplx(Real(0), 2 * pi) * tau);

    // consistency: j from the q-expansion must recover the algebraic j
    Cplx jq = j_from_tau(tau);
    Real jalg = to_real(m.invariants().j);
    Real scale = rmax(Real(1), abs(jalg));
    if (abs_c(jq - Cplx(jalg)) > scale * eps_bits(precision_bits - 16))
        throw PrecisionExhausted("q-expansion j disagrees with algebraic j");
    return pd;
}

Real log_abs_eta24(const Cplx& q) {
    Real absq = abs_c(q);
    if (absq >= 1)
        throw PrecisionExhausted("|q| >= 1");
    const long prec = work_bits();
    Real acc = 0;
    Cplx qn(Real(1));
    Cplx one(Real(1));
    Real tail_tol = eps_bits(prec);
    for (int n = 1; n < 10000; ++n) {
        qn = qn * q;
        acc += log_abs(one - qn);
        // tail of sum log|1-q^k| is below |q|^{n+1}/(1-|q|)^2
        Real tail = pow(absq, n + 1) / ((1 - absq) * (1 - absq));
        if (tail < tail_tol)
            break;
    }
    return 24 * acc;
}

Cplx discriminant_tau(const Cplx& tau, unsigned precision_bits) {
    PrecisionGuard guard(precision_bits);
    const Real pi = pi_value();
    Cplx q = exp_c(Cplx(Real(0), 2 * pi) * tau);
    Real absq = abs_c(q);
    const long prec = work_bits();
    Cplx prod(Real(1));
    Cplx one(Real(1));
    Cplx qn(Real(1));
    for (int n = 1; n < 10000; ++n) {
        qn = qn * q;
        Cplx f = one - qn;
        // (1-q^n)^24
        Cplx f2 = f * f;
        Cplx f4 = f2 * f2;
        Cplx f8 = f4 * f4;
        Cplx f24 = f8 * f8 * f8;
        prod = prod * f24;
        Real tail = 25 * pow(absq, n + 1) / (1 - absq);
        if (tail < eps_bits(prec))
            break;
    }
    Real two_pi_12 = pow(2 * pi, 12);
    return two_pi_12 * (q * prod);
}

Cplx j_from_tau(const Cplx& tau) {
    const Real pi = pi_value();
    Cplx q = exp_c(Cplx(Real(0), 2 * pi) * tau);
    Real absq = abs_c(q);
    const long prec = work_bits();
    Cplx one(Real(1));
    // E4 = 1 + 240 sum n^3 q^n / (1 - q^n)
    Cplx e4(Real(1));
    Cplx qn(Real(1));
    for (long n = 1; n < 10000; ++n) {
        qn = qn * q;
        e4 = e4 + Real(240) * (Real(n * n * n) * qn / (one - qn));
        Real tail = 241 * pow(Real(n + 1), 4) * pow(absq, n + 1) / (1 - absq);
        if (tail < eps_bits(prec))
            break;
    }
    // Delta_normalised = q prod (1-q^n)^24
    Cplx prod(Real(1));
    qn = Cplx(Real(1));
    for (int n = 1; n < 10000; ++n) {
        qn = qn * q;
        Cplx f = one - qn;
        Cplx f2 = f * f;
        Cplx f4 = f2 * f2;
        Cplx f8 = f4 * f4;
        prod = prod * (f8 * f8 * f8);
        Real tail = 25 * pow(absq, n + 1) / (1 - absq);
        if (tail < eps_bits(prec))
            break;
    }
    Cplx delta = q * prod;
    return e4 * e4 * e4 / delta;
}

void weierstrass_xy(const WeierstrassModel& m, const PeriodData& pd, const Real& alpha,
                    const Real& beta, Cplx& x_out, Cplx& yy_out) {
    const Real pi = pi_value();
    Real a = alpha - floor(alpha);
    Real b = beta - floor(beta);
    if (b > Real(1) / 2) {  // fold to the fast-converging half
        a = a == 0 ? Real(0) : 1 - a;
        b = 1 - b;
        // p is even, p' odd; the fold negates p' which we undo below
    }
    bool folded = (beta - floor(beta)) > Real(1) / 2;
    const Cplx& q = pd.q;
    Cplx w = exp_c(Cplx(Real(0), 2 * pi) * (Cplx(a) + Cplx(b) * pd.tau));
    Cplx one(Real(1));

    Cplx pw = w / ((one - w) * (one - w));
    Cplx ppw = w * (one + w) / ((one - w) * (one - w) * (one - w));
    Real absq = abs_c(q);
    Real absw = abs_c(w);
    const long prec = work_bits();
    Cplx qn(Real(1));
    for (int n = 1; n < 10000; ++n) {
        qn = qn * q;
        Cplx t1 = qn * w, t2 = qn / w;
        pw = pw + t1 / ((one - t1) * (one - t1)) + t2 / ((one - t2) * (one - t2)) -
             Real(2) * (qn / ((one - qn) * (one - qn)));
        ppw = ppw + t1 * (one + t1) / ((one - t1) * (one - t1) * (one - t1)) -
              t2 * (one + t2) / ((one - t2) * (one - t2) * (one - t2));
        Real biggest = rmax(pow(absq, n + 1) * absw, pow(absq, n + 1) / absw);
        if (16 * biggest / (1 - absq) < eps_bits(prec))
            break;
    }
    Cplx twopii_w1 = Cplx(Real(0), 2 * pi) / pd.omega1;
    Cplx u2 = twopii_w1 * twopii_w1;
    Cplx u3 = u2 * twopii_w1;
    Cplx wp = u2 * (Cplx(Real(1) / 12) + pw);
    Cplx wpp = u3 * ppw;
    if (folded)
        wpp = -wpp;
    x_out = wp - Cplx(to_real(m.invariants().b2) / 12);
    yy_out = wpp;  // equals 2y + a1 x + a3
}

EllipticLogCoords elliptic_log(const WeierstrassModel& m, const RationalPoint& p,
                               const PeriodData& pd) {
    if (p.is_origin())
        throw PointIsOrigin();
    if (!on_curve(m, p))
        throw PointNotOnCurve();
    PrecisionGuard guard(pd.precision_bits);
    const Real a1 = to_real(m.a1()), a2r = to_real(m.a2()), a3 = to_real(m.a3());

    const Real x_orig = to_real(p.x());
    const Real y_orig = to_real(p.y());
    const Real tol = eps_bits(work_bits() / 2);

    bool egg = pd.three_real_roots && x_orig < pd.roots[0].re - tol;
    Cplx z;
    if (egg && abs(x_orig - pd.roots[2].re) <= tol * rmax(Real(1), abs(pd.roots[2].re))) {
        // the 2-torsion point over e3 itself
        z = Real(1) / 2 * pd.imag_period;
    } else {
        Real xq = x_orig, Yq = 2 * y_orig + a1 * x_orig + a3;
        if (egg) {
            // translate by the 2-torsion point over e3 onto the unbounded branch
            Real e3 = pd.roots[2].re;
            Real yT = (-a1 * e3 - a3) / 2;
            Real lam = (y_orig - yT) / (x_orig - e3);
            Real nu = y_orig - lam * x_orig;
            Real x3 = lam * lam + a1 * lam - a2r - x_orig - e3;
            Real y3 = -(lam + a1) * x3 - nu - a3;
            xq = x3;
            Yq = 2 * y3 + a1 * x3 + a3;
        }
        Cplx x(xq);
        Cplx z0 = carlson_rf(x - pd.roots[0], x - pd.roots[1], x - pd.roots[2]);
        // both square-root branches of the integral; resolved by matching p'
        Real cand[2];
        cand[0] = z0.re;
        cand[1] = pd.real_period - z0.re;
        bool matched = false;
        for (int k = 0; k < 2 && !matched; ++k) {
            Cplx zc = Cplx(cand[k]);
            Cplx zeta = zc / pd.omega1;
            Real braw = zeta.im / pd.tau.im;
            Real araw = zeta.re - braw * pd.tau.re;
            Cplx xs, ys;
            weierstrass_xy(m, pd, araw, braw, xs, ys);
            Real scale = rmax(Real(1), rmax(abs_c(xs), abs(Yq)));
            if (abs_c(xs - Cplx(xq)) < scale * eps_bits(work_bits() / 2) &&
                abs_c(ys - Cplx(Yq)) < scale * eps_bits(work_bits() / 2)) {
                z = egg ? zc + Real(1) / 2 * pd.imag_period : zc;
                matched = true;
            }
        }
        if (!matched)
            throw PrecisionExhausted("elliptic log branch selection failed");
    }

    EllipticLogCoords out;
    Cplx zeta = z / pd.omega1;
    Real braw = zeta.im / pd.tau.im;
    Real araw = zeta.re - braw * pd.tau.re;
    out.alpha = araw - floor(araw);
    out.beta = braw - floor(braw);
    out.z = Cplx(out.alpha) + Cplx(out.beta) * pd.tau;

    // final exp-map round trip at the normalised coordinates
    Cplx xs, ys;
    weierstrass_xy(m, pd, out.alpha, out.beta, xs, ys);
    Real x_exact = to_real(p.x());
    Real Y_exact = 2 * to_real(p.y()) + a1 * x_exact + a3;
    Real scale = rmax(Real(1), rmax(abs_c(xs), abs(Y_exact)));
    if (abs_c(xs - Cplx(x_exact)) > scale * eps_bits(pd.precision_bits - 8))
        throw PrecisionExhausted("exp-map round trip failed");
    return out;
}

} // namespace ellh
