#pragma once
#include <complex>
#include <cstdint>
#include <vector>

#include "qpt/oracle.hpp"

namespace qpt {

using cd = std::complex<double>;

// Kernel execution mode. Parallel kernels compute each output element
// independently, so both modes produce the same values up to floating-point
// contraction differences; the serial path is the reference for tests and
// the benchmark.
enum class Exec { serial, parallel };

// Dense amplitude vector over a power-of-2 dimension, norm 1 within 1e-9.
struct Statevector {
    std::vector<cd> a;

    Statevector() = default;
    explicit Statevector(std::vector<cd> amplitudes); // validates

    std::int64_t dim() const { return static_cast<std::int64_t>(a.size()); }

    static Statevector basis(std::int64_t dim, std::int64_t index);
    static Statevector uniform(std::int64_t dim);

    double norm_sq() const;
};

// Discrete Fourier transform of the amplitude vector with 1/sqrt(dim)
// normalization; forward map sends |x> to sum_y e^{+2 pi i x y / dim}|y>.
// Radix-2 in-place; dim must be a power of two.
void qft_inplace(std::vector<cd>& a, bool inverse, Exec exec = Exec::parallel);
Statevector qft(const Statevector& s, Exec exec = Exec::parallel);
Statevector inverse_qft(const Statevector& s, Exec exec = Exec::parallel);

// Two-register basis permutation |x>|b> -> |x>|b xor enc(f(x))> where
// enc(v) is the 0-based value in ceil(log2 m) bits. dim must equal
// n * 2^ceil(log2 m) and n must be a power of two. Charges 1 quantum query.
Statevector apply_oracle(OracleFunction& f, const Statevector& s);

// Flag-qubit flip |x>|b> -> |x>|b xor [f(x) in S]> on dim = 2n (b is the
// low bit). Charges 2 quantum queries.
Statevector membership_oracle(OracleFunction& f, const std::vector<std::int64_t>& value_set,
                              const Statevector& s);

} // namespace qpt
