#include "ellh/curve.hpp"

#include <sstream>

namespace ellh {

Invariants compute_invariants(const Int& a1, const Int& a2, const Int& a3,
                              const Int& a4, const Int& a6) {
    Invariants v;
    v.b2 = a1 * a1 + 4 * a2;
    v.b4 = 2 * a4 + a1 * a3;
    v.b6 = a3 * a3 + 4 * a6;
    v.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    v.c4 = v.b2 * v.b2 - 24 * v.b4;
    v.c6 = -v.b2 * v.b2 * v.b2 + 36 * v.b2 * v.b4 - 216 * v.b6;
    v.disc = -v.b2 * v.b2 * v.b8 - 8 * v.b4 * v.b4 * v.b4 - 27 * v.b6 * v.b6 +
             9 * v.b2 * v.b4 * v.b6;
    if (v.disc != 0)
        v.j = Rat(v.c4 * v.c4 * v.c4, v.disc);
    return v;
}

WeierstrassModel::WeierstrassModel(Int a1, Int a2, Int a3, Int a4, Int a6)
    : a1_(std::move(a1)), a2_(std::move(a2)), a3_(std::move(a3)),
      a4_(std::move(a4)), a6_(std::move(a6)) {
    inv_ = compute_invariants(a1_, a2_, a3_, a4_, a6_);
    if (inv_.disc == 0)
        throw SingularModel("discriminant is zero");
}

WeierstrassModel WeierstrassModel::from_rational(const Rat& a1, const Rat& a2,
                                                 const Rat& a3, const Rat& a4,
                                                 const Rat& a6) {
    Int d = 1;
    for (const Rat* a : {&a1, &a2, &a3, &a4, &a6}) {
        Int den = denominator(*a);
        Int g;
        mpz_lcm(g.backend().data(), d.backend().data(), den.backend().data());
        d = g;
    }
    // scale by u = 1/d: a_i -> a_i d^i
    auto scale = [&](const Rat& a, int i) {
        Int di = 1;
        for (int k = 0; k < i; ++k)
            di *= d;
        Rat s = a * di;
        return numerator(s);  // integral by construction of d
    };
    return WeierstrassModel(scale(a1, 1), scale(a2, 2), scale(a3, 3), scale(a4, 4),
                            scale(a6, 6));
}

WeierstrassModel WeierstrassModel::transformed(const Int& u, const Int& r,
                                               const Int& s, const Int& t) const {
    if (u == 0)
        throw Error("transformation with u = 0");
    Int u2 = u * u, u3 = u2 * u, u4 = u2 * u2, u6 = u3 * u3;
    Int n1 = a1_ + 2 * s;
    Int n2 = a2_ - s * a1_ + 3 * r - s * s;
    Int n3 = a3_ + r * a1_ + 2 * t;
    Int n4 = a4_ - s * a3_ + 2 * r * a2_ - (t + r * s) * a1_ + 3 * r * r - 2 * s * t;
    Int n6 = a6_ + r * a4_ + r * r * a2_ + r * r * r - t * a3_ - t * t - r * t * a1_;
    if (n1 % u != 0 || n2 % u2 != 0 || n3 % u3 != 0 || n4 % u4 != 0 || n6 % u6 != 0)
        throw Error("transformation does not preserve integrality");
    return WeierstrassModel(n1 / u, n2 / u2, n3 / u3, n4 / u4, n6 / u6);
}

bool WeierstrassModel::same_equation(const WeierstrassModel& o) const {
    return a1_ == o.a1_ && a2_ == o.a2_ && a3_ == o.a3_ && a4_ == o.a4_ && a6_ == o.a6_;
}

std::string WeierstrassModel::str() const {
    std::ostringstream os;
    os << "[" << a1_ << "," << a2_ << "," << a3_ << "," << a4_ << "," << a6_ << "]";
    return os.str();
}

const Rat& RationalPoint::x() const {
    if (infinity_)
        throw PointIsOrigin();
    return x_;
}

const Rat& RationalPoint::y() const {
    if (infinity_)
        throw PointIsOrigin();
    return y_;
}

bool RationalPoint::operator==(const RationalPoint& o) const {
    if (infinity_ || o.infinity_)
        return infinity_ == o.infinity_;
    return x_ == o.x_ && y_ == o.y_;
}

std::string RationalPoint::str() const {
    if (infinity_)
        return "O";
    std::ostringstream os;
    os << "(" << x_ << "," << y_ << ")";
    return os.str();
}

bool on_curve(const WeierstrassModel& m, const RationalPoint& p) {
    if (p.is_origin())
        return true;
    const Rat& x = p.x();
    const Rat& y = p.y();
    Rat lhs = y * y + Rat(m.a1()) * x * y + Rat(m.a3()) * y;
    Rat rhs = x * x * x + Rat(m.a2()) * x * x + Rat(m.a4()) * x + Rat(m.a6());
    return lhs == rhs;
}

RationalPoint negate(const WeierstrassModel& m, const RationalPoint& p) {
    if (p.is_origin())
        return p;
    return RationalPoint(p.x(), -p.y() - Rat(m.a1()) * p.x() - Rat(m.a3()));
}

RationalPoint group_add(const WeierstrassModel& m, const RationalPoint& p,
                        const RationalPoint& q) {
    if (!on_curve(m, p) || !on_curve(m, q))
        throw PointNotOnCurve();
    if (p.is_origin())
        return q;
    if (q.is_origin())
        return p;

    const Rat a1(m.a1()), a2(m.a2()), a3(m.a3()), a4(m.a4());
    const Rat &x1 = p.x(), &y1 = p.y(), &x2 = q.x(), &y2 = q.y();

    Rat lambda, nu;
    if (x1 == x2) {
        // vertical line <=> q = -p
        if (y1 + y2 + a1 * x2 + a3 == 0)
            return RationalPoint::origin();
        Rat denom = 2 * y1 + a1 * x1 + a3;
        lambda = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / denom;
        nu = y1 - lambda * x1;
    } else {
        lambda = (y2 - y1) / (x2 - x1);
        nu = y1 - lambda * x1;
    }
    Rat x3 = lambda * lambda + a1 * lambda - a2 - x1 - x2;
    Rat y3 = -(lambda + a1) * x3 - nu - a3;
    return RationalPoint(x3, y3);
}

RationalPoint scalar_mul(const WeierstrassModel& m, const Int& n, const RationalPoint& p) {
    if (!on_curve(m, p))
        throw PointNotOnCurve();
    Int k = n;
    RationalPoint base = p;
    if (k < 0) {
        k = -k;
        base = negate(m, p);
    }
    RationalPoint acc = RationalPoint::origin();
    RationalPoint pow2 = base;
    while (k > 0) {
        if (k % 2 == 1)
            acc = group_add(m, acc, pow2);
        k /= 2;
        if (k > 0)
            pow2 = group_add(m, pow2, pow2);
    }
    return acc;
}

RationalPoint transform_point(const RationalPoint& p, const Int& u, const Int& r,
                              const Int& s, const Int& t) {
    if (p.is_origin())
        return p;
    Rat u2(u * u), u3(u * u * u);
    Rat xr = p.x() - r;
    Rat xn = xr / u2;
    Rat yn = (p.y() - Rat(s) * xr - t) / u3;
    return RationalPoint(xn, yn);
}

DivisionPolyEvaluator::DivisionPolyEvaluator(const WeierstrassModel& m,
                                             const RationalPoint& p)
    : x_(p.x()), y_(p.y()) {
    const Invariants& v = m.invariants();
    Rat b2(v.b2), b4(v.b4), b6(v.b6), b8(v.b8);
    Rat x = x_, x2 = x * x, x3 = x2 * x, x4 = x2 * x2;
    psi2_ = 2 * y_ + Rat(m.a1()) * x_ + Rat(m.a3());
    psi3_ = 3 * x4 + b2 * x3 + 3 * b4 * x2 + 3 * b6 * x + b8;
    Rat x5 = x4 * x, x6 = x3 * x3;
    psi4_ = psi2_ * (2 * x6 + b2 * x5 + 5 * b4 * x4 + 10 * b6 * x3 + 10 * b8 * x2 +
                     (b2 * b8 - b4 * b6) * x + (b4 * b8 - b6 * b6));
    memo_[0] = Rat(0);
    memo_[1] = Rat(1);
    memo_[2] = psi2_;
    memo_[3] = psi3_;
    memo_[4] = psi4_;
}

const Rat& DivisionPolyEvaluator::psi(long n) {
    if (n < 0)
        throw Error("psi index must be nonnegative");
    auto it = memo_.find(n);
    if (it != memo_.end())
        return it->second;
    long k = n / 2;
    Rat val;
    if (n % 2 == 1) {
        // psi_{2k+1} = psi_{k+2} psi_k^3 - psi_{k-1} psi_{k+1}^3
        val = psi(k + 2) * psi(k) * psi(k) * psi(k) -
              psi(k - 1) * psi(k + 1) * psi(k + 1) * psi(k + 1);
    } else {
        // psi_{2k} psi_2 = psi_k (psi_{k+2} psi_{k-1}^2 - psi_{k-2} psi_{k+1}^2)
        if (psi2_ == 0)
            throw Error("even psi at a 2-torsion point");
        val = psi(k) *
              (psi(k + 2) * psi(k - 1) * psi(k - 1) - psi(k - 2) * psi(k + 1) * psi(k + 1)) /
              psi2_;
    }
    return memo_.emplace(n, std::move(val)).first->second;
}

Real rational_height(const Rat& q) {
    Int n = numerator(q), d = denominator(q);
    if (n < 0)
        n = -n;
    Int m = n > d ? n : d;
    if (m <= 1)
        return Real(0);
    return log_real(to_real(m));
}

} // namespace ellh
