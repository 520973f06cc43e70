#pragma once
#include <cstdint>
#include <numbers>
#include <vector>

#include "qpt/bucketing.hpp"
#include "qpt/distribution.hpp"
#include "qpt/oracle.hpp"
#include "qpt/rng.hpp"
#include "qpt/transcript.hpp"

namespace qpt {

// Every tunable constant of the testers lives here and is echoed into
// transcripts and CSV reports.
struct TesterConfig {
    double c_qestimate = 8.0 * std::numbers::pi; // Grover iterations = ceil(c * m^(1/3) / delta)
    double ell = 4.0;                            // confidence parameter of the counting step
    int amp_a = 9;                               // amplification rounds = ceil(a * log2 log2 m) + b,
    int amp_b = 3;                               //   rounded up to the next odd integer
    // Per-run query cap C * m^(1/3) log2^2 m log2 log2 m / eps^5. The default
    // covers the built-in instance suite over the whole supported (m, eps)
    // range; the cap's eps and log m exponents are looser than the realized
    // cost of the two-sided conditional estimates, so a tight C would have
    // to be configured per experiment.
    double closeness_cap_c = 524288.0;
    double cond_budget_factor = 10.0;            // conditional sampling budget = factor * t * k / eps
    double coarse_sample_factor = 48.0;          // coarse-test samples = ceil(factor * k / eps^2)
};

// ceil(m^(1/3)) computed exactly on integers.
std::int64_t cbrt_ceil(std::int64_t m);

// Estimate of p = P_f(S) = |f^-1(S)|/n with error at most
// delta sqrt(p)/m^(1/3) + delta^2/m^(2/3), probability >= 5/6.
// Uses q = ceil(c m^(1/3)/delta) Grover iterations through the membership
// oracle, charging 2q raw quantum queries. Requires delta in (0,1] and a
// power-of-two domain.
double qestimate(OracleFunction& f, const std::vector<std::int64_t>& value_set, double delta,
                 const TesterConfig& cfg, Rng& rng);

// Tolerant uniformity tester. Draws t = ceil(m^(1/3)) distinct indices,
// rejects on any image collision, then accepts iff the counting estimate of
// the image-set mass is within 32*delta*t/m of t/m, delta = eps^2/320.
// Requires eps in (0,1] and m >= 8.
TestVerdict test_uniformity(OracleFunction& f, double epsilon, const TesterConfig& cfg, Rng& rng);

// Majority vote over an odd number R of independent repetitions.
TestVerdict test_uniformity_amplified(OracleFunction& f, double epsilon, const TesterConfig& cfg,
                                      Rng& rng);
int amplification_rounds(std::int64_t m, const TesterConfig& cfg);

// Tester for closeness to an explicitly known distribution g: buckets g at
// parameter eps/4, runs the amplified uniformity test on the conditional
// distribution of every bucket with g-mass >= eps/k, then checks the
// coarse distributions classically. Distinguishes l1 distance 0 from > 5 eps.
TestVerdict test_known_closeness(OracleFunction& f, const Distribution& g, double epsilon,
                                 const TesterConfig& cfg, Rng& rng);

// Per-run ceilings asserted by the experiment harness.
QueryCeiling uniformity_query_ceiling(std::int64_t m, double epsilon, const TesterConfig& cfg);
QueryCeiling amplified_uniformity_query_ceiling(std::int64_t m, double epsilon, const TesterConfig& cfg);
double closeness_query_ceiling(std::int64_t m, double epsilon, const TesterConfig& cfg);

} // namespace qpt
