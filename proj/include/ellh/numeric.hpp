#ifndef ELLH_NUMERIC_HPP
#define ELLH_NUMERIC_HPP

// Arbitrary-precision number types shared by the whole toolkit.
//
// Exact arithmetic uses GMP (mpz/mpq); transcendental evaluation uses MPFR
// at a runtime-selected precision.  Every floating computation runs at the
// requested precision plus a fixed number of guard bits.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <cstdint>
#include <string>

#include "ellh/errors.hpp"

namespace ellh {

namespace mp = boost::multiprecision;

using Int  = mp::mpz_int;
using Rat  = mp::mpq_rational;
using Real = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;

constexpr unsigned kDefaultPrecisionBits = 128;
constexpr unsigned kGuardBits = 32;

/// Sets the MPFR working precision (bits + guard) for the current thread,
/// restoring the previous value on scope exit.
class PrecisionGuard {
public:
    explicit PrecisionGuard(unsigned precision_bits);
    ~PrecisionGuard();
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    unsigned saved_digits10_;
};

unsigned current_precision_bits();

// ---- conversions ----------------------------------------------------------

Real to_real(const Int& n);
Real to_real(const Rat& q);

/// Materialises gmp expression templates before conversion.
template <class Tag, class A1, class A2, class A3, class A4>
Real to_real(const mp::detail::expression<Tag, A1, A2, A3, A4>& e) {
    typename mp::detail::expression<Tag, A1, A2, A3, A4>::result_type v(e);
    return to_real(v);
}

// ---- constants and elementary helpers -------------------------------------

Real pi_value();

inline Real rmax(const Real& a, const Real& b) { return a < b ? b : a; }
inline Real rmin(const Real& a, const Real& b) { return a < b ? a : b; }
Real log_real(const Real& x);
Real exp_real(const Real& x);

/// max{1, log x}; the paper's truncated logarithm.  x <= 0 maps to 1.
Real log1(const Real& x);

/// p-adic valuation of a nonzero integer.
long ord_p(const Int& n, const Int& p);
/// p-adic valuation of a nonzero rational.
long ord_p(const Rat& q, const Int& p);

Int isqrt_floor(const Int& n);
Int to_int_floor(const Real& x);

// ---- complex numbers over Real ---------------------------------------------

struct Cplx {
    Real re, im;

    Cplx() : re(0), im(0) {}
    Cplx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    explicit Cplx(Real r) : re(std::move(r)), im(0) {}
    explicit Cplx(long r) : re(r), im(0) {}

    Cplx operator-() const { return {-re, -im}; }
    Cplx conj() const { return {re, -im}; }
};

Cplx operator+(const Cplx& a, const Cplx& b);
Cplx operator-(const Cplx& a, const Cplx& b);
Cplx operator*(const Cplx& a, const Cplx& b);
Cplx operator/(const Cplx& a, const Cplx& b);
Cplx operator*(const Real& a, const Cplx& b);
Cplx operator/(const Cplx& a, const Real& b);

Real norm2(const Cplx& z);           // |z|^2
Real abs_c(const Cplx& z);
Real arg_c(const Cplx& z);           // atan2(im, re)
Cplx sqrt_c(const Cplx& z);          // principal branch
Cplx exp_c(const Cplx& z);
Real log_abs(const Cplx& z);

std::string real_str(const Real& x, unsigned digits = 25);

} // namespace ellh

#endif
