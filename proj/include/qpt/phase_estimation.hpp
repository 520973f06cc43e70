#pragma once
#include <cstdint>
#include <vector>

#include "qpt/rng.hpp"
#include "qpt/statevector.hpp"

namespace qpt {

// Result of approximate counting: an estimate t' of t = |h^{-1}(1)| for a
// Boolean function on a domain of size n, produced with q Grover iterations
// and confidence parameter ell > 1.
struct CountEstimate {
    double t_prime = 0;
    std::int64_t q = 0;
    double ell = 0;
};

// Smallest power of two >= q; the size of the phase register.
std::int64_t phase_register_size(std::int64_t q);

// Squared Dirichlet-kernel mass of an M-point phase measurement at distance
// d (in units of a full turn) from the true phase: sin^2(pi M d) / (M sin(pi d))^2,
// with value 1 at d = 0 (mod 1). Sums to 1 over y/M - phase, y = 0..M-1.
double phase_kernel(std::int64_t M, double d);

// Exact outcome law of phase estimation on the Grover iterate for amplitude
// a = t/n: a fair mixture of the kernel at phase +omega and -omega, where
// omega = arcsin(sqrt(a))/pi. The estimate decoded from outcome y is
// n * sin^2(pi y / M).
class AmplitudeOutcome {
public:
    AmplitudeOutcome(std::int64_t n, std::int64_t t, std::int64_t q);

    std::int64_t M() const { return M_; }
    double omega() const { return omega_; }

    double prob(std::int64_t y) const;
    double estimate_from(std::int64_t y) const;

    // Inverse-CDF draw visiting outcomes in order of distance from the
    // branch peak; expected O(log M) kernel evaluations.
    std::int64_t sample(Rng& rng) const;

    // Full M-point law; O(M), used by tests and the benchmark.
    std::vector<double> materialize(Exec exec = Exec::parallel) const;

private:
    std::int64_t n_, t_, M_;
    double omega_;

    std::int64_t sample_branch(double phase, Rng& rng) const;
};

// Draws one counting estimate from the exact outcome law. The caller owns
// query accounting (an oracle-backed caller charges 2q raw queries when the
// iterate is driven through a membership oracle).
CountEstimate amplitude_estimate(std::int64_t n, std::int64_t t, std::int64_t q, double ell, Rng& rng);

// Error envelope 2 pi ell sqrt(t(n-t))/q + pi^2 ell^2 n / q^2, met with
// probability at least 1 - 1/(2(ell-1)).
double count_error_bound(std::int64_t n, std::int64_t t, std::int64_t q, double ell);

} // namespace qpt
