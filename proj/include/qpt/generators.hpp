#pragma once
#include <cstdint>
#include <vector>

#include "qpt/oracle.hpp"
#include "qpt/rng.hpp"

namespace qpt {

// Uniform random bijection on [n]; the induced distribution is exactly
// uniform. Requires m = n implicitly.
OracleFunction gen_permutation(std::int64_t n, Rng& rng);

// Uniform random 2-to-1 function on [n] (n even): every non-empty preimage
// has size exactly 2, so the induced distribution has l1 distance 1 from
// uniform.
OracleFunction gen_two_to_one(std::int64_t n, Rng& rng);

// Near-uniform instance inside the sup-norm acceptance ball: preimage
// counts deviate from n/m by at most floor(eps*n/(4m)) on a fraction of
// coordinates (balanced +/- pairs, total preserved), so
// linf(P_f, U) <= eps/(4m) by construction. Requires m | n and
// floor(eps*n/(4m)) >= 1.
OracleFunction gen_linf_perturbed_uniform(std::int64_t n, std::int64_t m, double epsilon, Rng& rng,
                                          double perturb_fraction = 0.125);

struct PeriodicInstance {
    OracleFunction f;
    std::int64_t p;
};

// Positive periodicity instance: uniform prime period p in [r/2, r], a
// uniformly chosen injective first period [p] -> [m], repeated until the
// domain is full. Requires m >= n and a prime in the window.
PeriodicInstance gen_periodic_dp(std::int64_t n, std::int64_t m, std::int64_t r, Rng& rng);

// Lower bound on the relative Hamming distance from f to the set of
// 1-1-p-periodic functions: one minus an upper bound on the best possible
// agreement, obtained by scoring each residue class by its most frequent
// value (the injectivity constraint could only lower the agreement).
double periodic_distance_lower_bound(const OracleFunction& f, std::int64_t p);

// Negative periodicity instance: uniform f : [n] -> [m], redrawn until the
// white-box certificate shows distance >= eps from every period in
// [q_lo, r_hi]; throws after 100 redraws. Requires m >= n.
OracleFunction gen_random_dn(std::int64_t n, std::int64_t m, std::int64_t q_lo, std::int64_t r_hi,
                             double epsilon, Rng& rng);

std::vector<std::int64_t> primes_in_range(std::int64_t lo, std::int64_t hi);

} // namespace qpt
