#include "ellh/factor.hpp"

#include <algorithm>

namespace ellh {

namespace {

Int gcd_int(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.backend().data(), a.backend().data(), b.backend().data());
    return g;
}

// Pollard-Brent rho; returns a nontrivial factor of composite n, or 0 on
// iteration-budget exhaustion.
Int pollard_brent(const Int& n, unsigned long c0, long budget) {
    Int y = 2, r = 1, q = 1, g = 1, x, ys;
    const Int c = c0;
    while (g == 1 && budget > 0) {
        x = y;
        for (Int i = 0; i < r; ++i)
            y = (y * y + c) % n;
        Int k = 0;
        while (k < r && g == 1) {
            ys = y;
            Int lim = std::min(Int(128), Int(r - k));
            for (Int i = 0; i < lim; ++i) {
                y = (y * y + c) % n;
                Int d = x - y;
                if (d < 0) d = -d;
                q = q * d % n;
            }
            g = gcd_int(q, n);
            k += 128;
            budget -= 128;
        }
        r *= 2;
    }
    if (g == n) {
        // backtrack one step at a time
        do {
            ys = (ys * ys + c) % n;
            Int d = x - ys;
            if (d < 0) d = -d;
            g = gcd_int(d, n);
        } while (g == 1);
    }
    if (g == 1 || g == n)
        return 0;
    return g;
}

void factor_rec(Int n, Factorization& out) {
    if (n == 1)
        return;
    if (is_prime(n)) {
        out[n] += 1;
        return;
    }
    Int f = 0;
    for (unsigned long c = 1; c < 32 && f == 0; ++c)
        f = pollard_brent(n, c, 3'000'000);
    if (f == 0)
        throw FactorizationFailed("rho gave up on " + n.str());
    factor_rec(f, out);
    factor_rec(n / f, out);
}

} // namespace

bool is_prime(const Int& n) {
    if (n < 2)
        return false;
    return mpz_probab_prime_p(n.backend().data(), 40) != 0;
}

Factorization factorize(Int n) {
    Factorization out;
    if (n < 0)
        n = -n;
    if (n <= 1)
        return out;
    for (unsigned long p = 2; p < 1'000'000 && Int(p) * p <= n; p = (p == 2 ? 3 : p + 2)) {
        while (n % p == 0) {
            out[Int(p)] += 1;
            n /= p;
        }
    }
    if (n > 1)
        factor_rec(n, out);
    return out;
}

std::vector<Int> prime_divisors(const Int& n) {
    std::vector<Int> ps;
    for (const auto& [p, e] : factorize(n))
        ps.push_back(p);
    return ps;
}

} // namespace ellh
