#include "ellh/numeric.hpp"

#include <cmath>

namespace ellh {

namespace {
thread_local unsigned g_precision_bits = kDefaultPrecisionBits;

unsigned bits_to_digits10(unsigned bits) {
    return static_cast<unsigned>(std::ceil(bits * 0.30103)) + 2;
}
} // namespace

PrecisionGuard::PrecisionGuard(unsigned precision_bits) {
    saved_digits10_ = Real::default_precision();
    g_precision_bits = precision_bits;
    Real::default_precision(bits_to_digits10(precision_bits + kGuardBits));
}

PrecisionGuard::~PrecisionGuard() {
    Real::default_precision(saved_digits10_);
}

unsigned current_precision_bits() { return g_precision_bits; }

Real to_real(const Int& n) {
    Real r;
    mpfr_set_z(r.backend().data(), n.backend().data(), MPFR_RNDN);
    return r;
}

Real to_real(const Rat& q) {
    Real r;
    mpfr_set_q(r.backend().data(), q.backend().data(), MPFR_RNDN);
    return r;
}

Real pi_value() {
    Real r;
    mpfr_const_pi(r.backend().data(), MPFR_RNDN);
    return r;
}

Real log_real(const Real& x) { return log(x); }
Real exp_real(const Real& x) { return exp(x); }

Real log1(const Real& x) {
    if (x <= 0)
        return Real(1);
    Real l = log(x);
    return l < 1 ? Real(1) : l;
}

long ord_p(const Int& n, const Int& p) {
    if (n == 0)
        throw Error("ord_p of zero");
    Int rem;
    mp_bitcnt_t k = mpz_remove(rem.backend().data(), n.backend().data(),
                               p.backend().data());
    return static_cast<long>(k);
}

long ord_p(const Rat& q, const Int& p) {
    if (q == 0)
        throw Error("ord_p of zero");
    return ord_p(numerator(q), p) - ord_p(denominator(q), p);
}

Int isqrt_floor(const Int& n) {
    Int r;
    mpz_sqrt(r.backend().data(), n.backend().data());
    return r;
}

Int to_int_floor(const Real& x) {
    Int r;
    mpfr_get_z(r.backend().data(), x.backend().data(), MPFR_RNDD);
    return r;
}

Cplx operator+(const Cplx& a, const Cplx& b) { return {a.re + b.re, a.im + b.im}; }
Cplx operator-(const Cplx& a, const Cplx& b) { return {a.re - b.re, a.im - b.im}; }

Cplx operator*(const Cplx& a, const Cplx& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

Cplx operator/(const Cplx& a, const Cplx& b) {
    Real d = norm2(b);
    if (d == 0)
        throw PrecisionExhausted("complex division by zero");
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

Cplx operator*(const Real& a, const Cplx& b) { return {a * b.re, a * b.im}; }
Cplx operator/(const Cplx& a, const Real& b) { return {a.re / b, a.im / b}; }

Real norm2(const Cplx& z) { return z.re * z.re + z.im * z.im; }
Real abs_c(const Cplx& z) { return sqrt(norm2(z)); }
Real arg_c(const Cplx& z) { return atan2(z.im, z.re); }

Cplx sqrt_c(const Cplx& z) {
    Real r = abs_c(z);
    if (r == 0)
        return Cplx(Real(0), Real(0));
    // stable half-angle form
    Real re = sqrt((r + z.re) / 2);
    Real im_abs = sqrt((r - z.re) / 2);
    if (z.im >= 0)
        return {re, im_abs};
    return {re, -im_abs};
}

Cplx exp_c(const Cplx& z) {
    Real m = exp(z.re);
    return {m * cos(z.im), m * sin(z.im)};
}

Real log_abs(const Cplx& z) {
    Real n2 = norm2(z);
    if (n2 == 0)
        throw PrecisionExhausted("log of zero modulus");
    return log(n2) / 2;
}

std::string real_str(const Real& x, unsigned digits) {
    return x.str(digits, std::ios_base::scientific);
}

} // namespace ellh
