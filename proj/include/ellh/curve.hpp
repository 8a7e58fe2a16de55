#ifndef ELLH_CURVE_HPP
#define ELLH_CURVE_HPP

#include <map>
#include <optional>
#include <string>

#include "ellh/numeric.hpp"

namespace ellh {

struct Invariants {
    Int b2, b4, b6, b8;
    Int c4, c6;
    Int disc;   // nonzero
    Rat j;
};

/// Integral long Weierstrass model  y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6.
/// The constructor rejects singular equations (disc = 0).
class WeierstrassModel {
public:
    WeierstrassModel(Int a1, Int a2, Int a3, Int a4, Int a6);

    /// Clears denominators of a rational quintuple ((u,r,s,t)=(1/d,0,0,0))
    /// before admission.
    static WeierstrassModel from_rational(const Rat& a1, const Rat& a2, const Rat& a3,
                                          const Rat& a4, const Rat& a6);

    const Int& a1() const { return a1_; }
    const Int& a2() const { return a2_; }
    const Int& a3() const { return a3_; }
    const Int& a4() const { return a4_; }
    const Int& a6() const { return a6_; }

    const Invariants& invariants() const { return inv_; }
    const Int& disc() const { return inv_.disc; }

    /// Model obtained by the admissible change (x,y) = (u^2 x' + r, u^3 y' + s u^2 x' + t).
    WeierstrassModel transformed(const Int& u, const Int& r, const Int& s, const Int& t) const;

    bool same_equation(const WeierstrassModel& o) const;

    std::string str() const;

private:
    Int a1_, a2_, a3_, a4_, a6_;
    Invariants inv_;
};

Invariants compute_invariants(const Int& a1, const Int& a2, const Int& a3,
                              const Int& a4, const Int& a6);

/// Point with exact rational coordinates, or the point at infinity.
class RationalPoint {
public:
    RationalPoint() : infinity_(true) {}
    RationalPoint(Rat x, Rat y) : infinity_(false), x_(std::move(x)), y_(std::move(y)) {}

    static RationalPoint origin() { return RationalPoint(); }

    bool is_origin() const { return infinity_; }
    const Rat& x() const;
    const Rat& y() const;

    bool operator==(const RationalPoint& o) const;
    bool operator!=(const RationalPoint& o) const { return !(*this == o); }

    std::string str() const;

private:
    bool infinity_;
    Rat x_, y_;
};

bool on_curve(const WeierstrassModel& m, const RationalPoint& p);

RationalPoint negate(const WeierstrassModel& m, const RationalPoint& p);
RationalPoint group_add(const WeierstrassModel& m, const RationalPoint& p,
                        const RationalPoint& q);
RationalPoint scalar_mul(const WeierstrassModel& m, const Int& n, const RationalPoint& p);

/// Maps a point of the source model to the model `transformed(u,r,s,t)` produced
/// from it:  x' = (x - r)/u^2,  y' = (y - s(x - r) - t)/u^3.
RationalPoint transform_point(const RationalPoint& p, const Int& u, const Int& r,
                              const Int& s, const Int& t);

/// Evaluates division polynomials psi_n at a point (memoised per call site).
class DivisionPolyEvaluator {
public:
    DivisionPolyEvaluator(const WeierstrassModel& m, const RationalPoint& p);

    /// psi_n(P); zero exactly when [n]P = O.
    const Rat& psi(long n);

private:
    std::map<long, Rat> memo_;
    Rat x_, y_;
    Rat psi2_, psi3_, psi4_;
};

/// Absolute logarithmic height of a rational number, log max(|num|, |den|).
Real rational_height(const Rat& q);

} // namespace ellh

#endif
