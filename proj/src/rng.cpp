#include "qpt/rng.hpp"

#include <unordered_set>

namespace qpt {

std::vector<std::int64_t> sample_distinct(std::int64_t n, std::int64_t t, Rng& rng) {
    if (t < 0 || t > n) throw std::invalid_argument("sample_distinct: need 0 <= t <= n");
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(t));
    if (t > n / 2) {
        // dense case: partial Fisher-Yates
        std::vector<std::int64_t> pool(static_cast<std::size_t>(n));
        for (std::int64_t i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
        for (std::int64_t i = 0; i < t; ++i) {
            const auto j = rng.uniform_int(i, n - 1);
            std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
            out.push_back(pool[static_cast<std::size_t>(i)]);
        }
        return out;
    }
    std::unordered_set<std::int64_t> seen;
    seen.reserve(static_cast<std::size_t>(t) * 2);
    while (static_cast<std::int64_t>(out.size()) < t) {
        const auto x = rng.uniform_int(0, n - 1);
        if (seen.insert(x).second) out.push_back(x);
    }
    return out;
}

} // namespace qpt
