#include "ellh/arch_height.hpp"

#include <set>

#include "ellh/tate.hpp"

namespace ellh {

namespace {

Real eps_bits(long bits) {
    Real e = 1;
    return ldexp(e, -bits);
}

Real frac(const Real& x) { return x - floor(x); }

// distance to the nearest integer
Real dist01(const Real& x) {
    Real f = frac(x);
    return rmin(f, 1 - f);
}

Real b2_poly(const Real& t) { return t * t - t + Real(1) / 6; }

} // namespace

Real arch_local_height_coords(const PeriodData& pd, const Real& alpha, const Real& beta) {
    PrecisionGuard guard(pd.precision_bits);
    const Real pi = pi_value();
    Real a = frac(alpha);
    Real b = frac(beta);
    if (b > Real(1) / 2) {  // lambda(P) = lambda(-P); fold for convergence
        a = a == 0 ? Real(0) : 1 - a;
        b = 1 - b;
    }
    if (a == 0 && b == 0)
        throw PointIsOrigin("local height at the lattice origin");

    const Cplx& q = pd.q;
    Cplx w = exp_c(Cplx(Real(0), 2 * pi) * (Cplx(a) + Cplx(b) * pd.tau));
    Cplx one(Real(1));
    Real log_theta = log_abs(one - w);
    Real absq = abs_c(q);
    Real absw = abs_c(w);
    const long prec = current_precision_bits() + kGuardBits;
    Cplx qn(Real(1));
    for (int n = 1; n < 10000; ++n) {
        qn = qn * q;
        log_theta += log_abs(one - qn * w) + log_abs(one - qn / w);
        Real biggest = rmax(pow(absq, n + 1) * absw, pow(absq, n + 1) / absw);
        if (4 * biggest / (1 - absq) < eps_bits(prec))
            break;
    }
    return b2_poly(b) / 2 * (2 * pi * pd.tau.im) - log_theta;
}

Real arch_local_height(const WeierstrassModel& m, const RationalPoint& p,
                       const PeriodData& pd) {
    if (p.is_origin())
        throw PointIsOrigin();
    EllipticLogCoords c = elliptic_log(m, p, pd);
    return arch_local_height_coords(pd, c.alpha, c.beta);
}

ElkiesCheck elkies_bound_check_coords(const PeriodData& pd, const Real& abs_j,
                                      const std::vector<std::pair<Real, Real>>& coords) {
    const size_t n = coords.size();
    Real lhs = 0;
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            if (i == j)
                continue;
            Real da = coords[i].first - coords[j].first;
            Real db = coords[i].second - coords[j].second;
            lhs += arch_local_height_coords(pd, frac(da), frac(db));
        }
    }
    Real N(static_cast<long>(n));
    Real rhs = -(N * log_real(N)) / 2 - N / 12 * log1(abs_j) - Real(16) / 5 * N;
    return {lhs, rhs, lhs >= rhs};
}

ElkiesCheck elkies_bound_check(const WeierstrassModel& m,
                               const std::vector<RationalPoint>& pts,
                               const PeriodData& pd) {
    for (size_t i = 0; i < pts.size(); ++i) {
        if (pts[i].is_origin())
            throw PointIsOrigin("Elkies configuration contains O");
        for (size_t j = i + 1; j < pts.size(); ++j)
            if (pts[i] == pts[j])
                throw DuplicatePoints();
    }
    std::vector<std::pair<Real, Real>> coords;
    coords.reserve(pts.size());
    for (const auto& p : pts) {
        EllipticLogCoords c = elliptic_log(m, p, pd);
        coords.emplace_back(c.alpha, c.beta);
    }
    Real abs_j = abs(to_real(m.invariants().j));
    return elkies_bound_check_coords(pd, abs_j, coords);
}

bool bp_check(const Real& abs_j, const Cplx& tau) {
    return log1(abs_j) + 6 >= 2 * pi_value() * tau.im;
}

std::pair<Real, Real> hs_bound(const PeriodData& pd, const Real& abs_j, const Real& eps,
                               const Real& alpha, const Real& beta) {
    Real da = dist01(alpha), db = dist01(beta);
    if (rmax(da, db) > eps / 23)
        throw PreconditionViolated("point outside the HS square");
    Real lambda = arch_local_height_coords(pd, alpha, beta);
    Real bound = (1 - eps) / 12 * log1(abs_j);
    return {lambda, bound};
}

FaltingsResult faltings_height(const WeierstrassModel& minimal_model, const PeriodData& pd) {
    MinimalModelResult g = global_minimal_model(minimal_model);
    if (g.u != 1)
        throw NotMinimalModel();

    PrecisionGuard guard(pd.precision_bits);
    const Real pi = pi_value();
    FaltingsResult r;
    r.im_tau = pd.tau.im;
    r.log_disc_min = log_real(abs(to_real(minimal_model.disc())));
    Real log_q_abs = -2 * pi * pd.tau.im;
    Real log_eta24 = log_abs_eta24(pd.q);
    Real log_disc_norm = log_q_abs + log_eta24;  // log|q prod(1-q^n)^24|
    r.h_F = (r.log_disc_min - 12 * log_real(2 * pi) - log_disc_norm -
             6 * log_real(pd.tau.im)) /
            12;

    // comparison bound: constant recomputed from its own ingredients
    // (-log 2pi + 0.104927/12 + 0.863046/12); the printed value 2.7572 is
    // reported alongside because it fails near the hexagonal corner.
    r.falt_const_recomputed =
        log_real(2 * pi) - (Real("0.104927") + Real("0.863046")) / 12;
    Real rhs_base = (r.log_disc_min + 2 * pi * pd.tau.im) / 12;
    r.bound_holds_recomputed = r.h_F <= rhs_base - r.falt_const_recomputed;
    r.bound_holds_printed = r.h_F <= rhs_base - Real("2.7572");
    return r;
}

} // namespace ellh
