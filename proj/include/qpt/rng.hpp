#pragma once
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace qpt {

// Seeded generator used everywhere. All draws go through this wrapper so that
// experiment output is reproducible for a fixed seed regardless of platform
// defaults for std distribution objects.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform integer in [lo, hi], inclusive. Unbiased via rejection.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        if (lo > hi) throw std::invalid_argument("uniform_int: empty range");
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return static_cast<std::int64_t>(next_u64()); // full 64-bit range
        const std::uint64_t reject_above = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t x = next_u64();
        while (x >= reject_above) x = next_u64();
        return lo + static_cast<std::int64_t>(x % span);
    }

    // Uniform double in [0, 1), 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 eng_;
};

// splitmix64 finalizer; used to derive independent per-trial seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Documented seed-splitting rule: sub-seed for trial i of a run with master
// seed s is splitmix64(s ^ splitmix64(i + 1)).
inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(seed ^ splitmix64(stream + 1));
}

template <typename T>
void shuffle_in_place(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i) - 1));
        std::swap(v[i - 1], v[j]);
    }
}

// t distinct values from [0, n), in draw order.
std::vector<std::int64_t> sample_distinct(std::int64_t n, std::int64_t t, Rng& rng);

} // namespace qpt
