#ifndef ELLH_TATE_HPP
#define ELLH_TATE_HPP

#include <optional>
#include <vector>

#include "ellh/curve.hpp"
#include "ellh/factor.hpp"

namespace ellh {

enum class ReductionKind {
    good,
    multiplicative_split,
    multiplicative_nonsplit,
    additive,
};

const char* reduction_kind_name(ReductionKind k);

struct LocalReductionData {
    Int p;
    ReductionKind kind = ReductionKind::good;
    long N_v = 0;              // ord_p of the locally minimal discriminant
    bool local_minimal = true; // whether the input model was already p-minimal
    // singular point of the p-minimal model, translated lift in [0,p)^2
    // (only meaningful for bad reduction)
    Int sing_x, sing_y;
};

struct MinimalModelResult {
    WeierstrassModel model;
    Int disc_min;
    // composite transformation input -> minimal
    Int u, r, s, t;
};

/// Laska-Kraus-Connell global minimal model over Q.
MinimalModelResult global_minimal_model(const WeierstrassModel& m);

/// Classifies reduction of `m` at p on a p-minimal model (the model is
/// minimalised internally first; `local_minimal` records whether the input
/// already was).
LocalReductionData tate_reduce(const WeierstrassModel& m, const Int& p);

/// Reduction data at every prime dividing the minimal discriminant,
/// ascending by p.  The model must be globally minimal.
std::vector<LocalReductionData> reduce_all(const WeierstrassModel& minimal_model);

/// lcm of N_v over multiplicative places (all bad places when semi-stable);
/// 1 when the bad set is empty.
Int compute_NE(const std::vector<LocalReductionData>& reductions);

bool is_semistable(const std::vector<LocalReductionData>& reductions);

} // namespace ellh

#endif
