#ifndef ELLH_FACTOR_HPP
#define ELLH_FACTOR_HPP

#include <map>
#include <vector>

#include "ellh/numeric.hpp"

namespace ellh {

/// prime -> exponent map of |n|, ascending by prime.
using Factorization = std::map<Int, long>;

bool is_prime(const Int& n);

/// Trial division up to 10^6, then Miller-Rabin + Pollard-Brent rho.
/// Throws FactorizationFailed if a composite cofactor survives the
/// iteration budget (desk scale only).
Factorization factorize(Int n);

std::vector<Int> prime_divisors(const Int& n);

} // namespace ellh

#endif
