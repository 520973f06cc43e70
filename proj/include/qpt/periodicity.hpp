#pragma once
#include <cstdint>
#include <optional>
#include <vector>

#include "qpt/oracle.hpp"
#include "qpt/rng.hpp"
#include "qpt/statevector.hpp"
#include "qpt/transcript.hpp"

namespace qpt {

struct Fraction {
    std::int64_t num = 0;
    std::int64_t den = 1;
    bool operator==(const Fraction&) const = default;
};

// White-box exact check of the promise f(i) = f(j) iff i = j (mod p):
// injective on the first p points and repeating with period p afterwards.
bool is_1_1_periodic(const OracleFunction& f, std::int64_t p);

// One period-sampling round: query once in superposition, measure the value
// register, Fourier-transform the collapsed index register and measure.
// Outcome y in [0, n); charges 1 quantum query. Domain must be a power of 2.
std::int64_t shor_sample(OracleFunction& f, Rng& rng, Exec exec = Exec::parallel);

// Outcome law of the index-register measurement given that the value
// register collapsed onto the preimage set `support` (ascending domain
// points). Closed-form squared geometric sum when the support is an
// arithmetic progression; exact transform of the indicator otherwise.
std::vector<double> collapsed_outcome_distribution(std::int64_t n,
                                                   const std::vector<std::int64_t>& support,
                                                   Exec exec = Exec::parallel);

// Unique reduced fraction c/p with p <= denom_bound and |y/n - c/p| < 2/n,
// found among the continued-fraction convergents of y/n; nullopt if no
// convergent qualifies. Unique whenever denom_bound <= sqrt(n)/2, since two
// distinct fractions with denominators <= sqrt(n)/2 are at least 4/n apart.
std::optional<Fraction> cfe_recover(std::int64_t y, std::int64_t n, std::int64_t denom_bound);

struct PeriodCandidate {
    std::int64_t p = 0;              // least common multiple of the denominators
    std::vector<Fraction> fractions; // reduced fractions recovered per round
    int runs = 0;                    // sampling rounds performed
};

// LCM of denominators, capped; nullopt if empty or the LCM exceeds the cap.
std::optional<std::int64_t> combine_denominators(const std::vector<std::int64_t>& dens,
                                                 std::int64_t cap);

// k_runs rounds of shor_sample + cfe_recover (denominator bound
// floor(sqrt(n)/2)), discarding failed rounds; returns the capped LCM.
std::optional<PeriodCandidate> find_period(OracleFunction& f, int k_runs, Rng& rng);

// Spot-checks a purported period: repetition checks f(i) = f(i + kp) for
// random i in [p] and random k, plus injectivity checks f(i) != f(j) for
// random i != j in [p]; the budget is split evenly between the two kinds.
// Charges 2 classical queries per check. Requires 1 <= p <= n/2.
bool verify_period(OracleFunction& f, std::int64_t p, int trials, Rng& rng);

struct PeriodicityConfig {
    int k_runs = 12;
    int verify_trials = 60;
};

// Constant-query tester for having a 1-1 period in [sqrt(n)/4, sqrt(n)/2]:
// find a candidate period, reject if none or out of range, else accept iff
// the spot-check passes.
TestVerdict test_periodicity(OracleFunction& f, double epsilon, const PeriodicityConfig& cfg,
                             Rng& rng);

// Bounds of the tested period range for domain size n.
std::int64_t period_range_lo(std::int64_t n);
std::int64_t period_range_hi(std::int64_t n);

QueryCeiling periodicity_query_ceiling(const PeriodicityConfig& cfg);

std::int64_t gcd_i64(std::int64_t a, std::int64_t b);

} // namespace qpt
