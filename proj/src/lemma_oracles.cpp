#include "ellh/lemma_oracles.hpp"

#include <algorithm>
#include <numeric>

namespace ellh {

namespace {

// sum over ordered pairs of squared differences = 2 * (n * sum m_i^2 - (sum m_i)^2) / ...
// computed directly for clarity at these sizes
Int pair_square_sum(const std::vector<long>& ms) {
    Int s = 0, s2 = 0;
    for (long m : ms) {
        s += m;
        s2 += Int(m) * m;
    }
    long n = static_cast<long>(ms.size());
    return 2 * (Int(n) * s2 - s * s);
}

void subsets_rec(long N, long n, long start, std::vector<long>& cur, Int& best) {
    if (static_cast<long>(cur.size()) == n) {
        best = std::max(best, pair_square_sum(cur));
        return;
    }
    long need = n - static_cast<long>(cur.size());
    for (long m = start; m + need - 1 <= N; ++m) {
        cur.push_back(m);
        subsets_rec(N, n, m + 1, cur, best);
        cur.pop_back();
    }
}

Rat measure(const CombiInstance& inst, const std::vector<int>& idx, const Rat& total) {
    Rat s = 0;
    for (int v : idx)
        s += inst.weights[v];
    return s / total;
}

std::vector<int> intersect_sorted(std::vector<int> a, std::vector<int> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

} // namespace

Int fmax_split_value(long N, long n, long k) {
    std::vector<long> ms;
    for (long i = 1; i <= k; ++i)
        ms.push_back(i);
    for (long i = k + 1; i <= n; ++i)
        ms.push_back(N - n + i);
    return pair_square_sum(ms);
}

FmaxInstance fmax_bruteforce(long N, long n) {
    if (n > 8 || N > 14 || n < 1 || N < n)
        throw InstanceTooLarge("fmax brute force capped at n <= 8, N <= 14");
    FmaxInstance inst;
    inst.N = N;
    inst.n = n;
    Int best = 0;
    std::vector<long> cur;
    subsets_rec(N, n, 1, cur, best);
    inst.value_bruteforce = best;
    inst.bound = Rat(Int(n + 1) * (n + 1) * Int(N + 1) * (N + 1), 2);
    if (Rat(best) > inst.bound)
        throw Error("fmax bound violated");
    if (n % 2 == 0) {
        // n^2 (N+1)^2 / 2 * (1 - (n+2)/(N+1) + (n+1)(n+2) / (3 (N+1)^2))
        Rat N1(N + 1);
        Rat lead = Rat(Int(n) * n) * N1 * N1 / 2;
        Rat paren = Rat(1) - Rat(n + 2) / N1 + Rat(Int(n + 1) * (n + 2)) / (3 * N1 * N1);
        inst.closedform = lead * paren;
    }
    return inst;
}

std::optional<CombiSelection> combi_select(const CombiInstance& inst) {
    const long n = static_cast<long>(inst.subsets.size());
    if (Rat(n) < inst.l * Rat(inst.Z + 1))
        throw PreconditionViolated("combi needs n >= l (Z+1)");
    Rat total = 0;
    for (const Rat& w : inst.weights) {
        if (w < 0)
            throw PreconditionViolated("negative weight");
        total += w;
    }
    if (total == 0)
        throw PreconditionViolated("zero total weight");
    for (long i = 0; i < n; ++i) {
        if (measure(inst, inst.subsets[i], total) * inst.l < 1)
            throw PreconditionViolated("subset below the 1/l admissibility floor");
    }
    Rat threshold = 2 / (inst.l * inst.l * (inst.l + 1));

    // iterative elimination: pick a set; either it has Z heavy partners, or
    // discard it and keep only candidates light against every pick so far
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    while (!pool.empty()) {
        int i0 = pool.front();
        std::vector<int> partners;
        for (long j = 0; j < n; ++j) {
            if (j == i0)
                continue;
            Rat mu = measure(inst, intersect_sorted(inst.subsets[i0], inst.subsets[j]), total);
            if (mu >= threshold)
                partners.push_back(static_cast<int>(j));
        }
        if (static_cast<long>(partners.size()) >= inst.Z) {
            partners.resize(inst.Z);
            // independent re-validation of the witness
            for (int j : partners) {
                Rat mu =
                    measure(inst, intersect_sorted(inst.subsets[i0], inst.subsets[j]), total);
                if (mu < threshold)
                    throw Error("combi witness failed re-validation");
            }
            return CombiSelection{i0, partners, threshold};
        }
        std::vector<int> next;
        for (int c : pool) {
            if (c == i0)
                continue;
            Rat mu = measure(inst, intersect_sorted(inst.subsets[i0], inst.subsets[c]), total);
            if (mu < threshold)
                next.push_back(c);
        }
        pool = std::move(next);
    }
    return std::nullopt;
}

NeBoundCheck ne_bound_check(const Factorization& f) {
    PrecisionGuard guard(current_precision_bits());
    if (f.empty())
        throw PreconditionViolated("|disc| >= 2 required");
    NeBoundCheck c;
    Int ne = 1;
    Real logdisc = 0;
    for (const auto& [p, e] : f) {
        Int ee(e);
        Int l;
        mpz_lcm(l.backend().data(), ne.backend().data(), ee.backend().data());
        ne = l;
        logdisc += Real(e) * log_real(to_real(p));
    }
    c.N_E = ne;
    c.margin = Real("0.54") * logdisc - log_real(to_real(ne));
    c.holds = c.margin >= 0;
    return c;
}

} // namespace ellh
