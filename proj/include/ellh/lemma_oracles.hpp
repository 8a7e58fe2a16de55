#ifndef ELLH_LEMMA_ORACLES_HPP
#define ELLH_LEMMA_ORACLES_HPP

#include <optional>
#include <vector>

#include "ellh/factor.hpp"
#include "ellh/numeric.hpp"

namespace ellh {

struct FmaxInstance {
    long N, n;
    Int value_bruteforce;               // max of sum_{i!=j} (m_i - m_j)^2
    Rat bound;                          // (n+1)^2 (N+1)^2 / 2
    std::optional<Rat> closedform;      // even n only
};

/// Exhaustive maximum of sum_{i != j} (m_i - m_j)^2 over n distinct values
/// in [1, N]; checks the bound, and for even n the appendix closed form.
FmaxInstance fmax_bruteforce(long N, long n);

/// F^k value for the split {1..k} u {N-(n-k)+1..N} (appendix notation).
Int fmax_split_value(long N, long n, long k);

struct CombiInstance {
    std::vector<Rat> weights;              // r_v >= 0
    std::vector<std::vector<int>> subsets; // index sets into weights
    Rat l;                                 // every subset has measure >= 1/l
    long Z;
};

struct CombiSelection {
    int i0;
    std::vector<int> partners;  // Z indices, mu(S_{i0} cap S_{i_j}) >= threshold
    Rat threshold;              // 2 / (l^2 (l+1))
};

/// Iterative-elimination selection from the combinatorial lemma; verifies the
/// returned witness by direct measure computation.  nullopt would falsify
/// the lemma on an admissible instance.
std::optional<CombiSelection> combi_select(const CombiInstance& inst);

struct NeBoundCheck {
    Int N_E;
    Real margin;   // 0.54 log|disc| - log N_E
    bool holds;
};

/// N_E <= |disc|^{0.54} from a factorisation of the minimal discriminant.
NeBoundCheck ne_bound_check(const Factorization& disc_factorization);

} // namespace ellh

#endif
