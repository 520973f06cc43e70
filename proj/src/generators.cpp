#include "qpt/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "qpt/distribution.hpp"
#include "qpt/periodicity.hpp"

namespace qpt {

OracleFunction gen_permutation(std::int64_t n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("gen_permutation: n >= 1");
    std::vector<std::uint32_t> values(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(i);
    shuffle_in_place(values, rng);
    return OracleFunction(n, std::move(values));
}

OracleFunction gen_two_to_one(std::int64_t n, Rng& rng) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("gen_two_to_one: n must be even");
    std::vector<std::int64_t> domain(static_cast<std::size_t>(n)), image(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        domain[static_cast<std::size_t>(i)] = i;
        image[static_cast<std::size_t>(i)] = i;
    }
    shuffle_in_place(domain, rng); // uniform pairing of domain points
    shuffle_in_place(image, rng);  // uniform image set + assignment
    std::vector<std::uint32_t> values(static_cast<std::size_t>(n));
    for (std::int64_t pair = 0; pair < n / 2; ++pair) {
        const auto v = static_cast<std::uint32_t>(image[static_cast<std::size_t>(pair)]);
        values[static_cast<std::size_t>(domain[static_cast<std::size_t>(2 * pair)])] = v;
        values[static_cast<std::size_t>(domain[static_cast<std::size_t>(2 * pair + 1)])] = v;
    }
    return OracleFunction(n, std::move(values));
}

OracleFunction gen_linf_perturbed_uniform(std::int64_t n, std::int64_t m, double epsilon, Rng& rng,
                                          double perturb_fraction) {
    if (m < 1 || n < 1 || n % m != 0)
        throw std::invalid_argument("gen_linf_perturbed_uniform: need m | n");
    if (!(epsilon > 0 && epsilon <= 1))
        throw std::invalid_argument("gen_linf_perturbed_uniform: epsilon in (0,1]");
    const auto dev = static_cast<std::int64_t>(
        std::floor(epsilon * static_cast<double>(n) / (4.0 * static_cast<double>(m))));
    if (dev < 1)
        throw std::invalid_argument(
            "gen_linf_perturbed_uniform: infeasible, one count step exceeds the sup-norm budget");
    if (!(perturb_fraction >= 0 && perturb_fraction <= 1))
        throw std::invalid_argument("gen_linf_perturbed_uniform: perturb_fraction in [0,1]");

    const std::int64_t base = n / m;
    std::vector<std::int64_t> counts(static_cast<std::size_t>(m), base);
    const auto pairs = static_cast<std::int64_t>(perturb_fraction * static_cast<double>(m) / 2.0);
    if (pairs > 0) {
        std::vector<std::int64_t> coords(static_cast<std::size_t>(m));
        for (std::int64_t j = 0; j < m; ++j) coords[static_cast<std::size_t>(j)] = j;
        shuffle_in_place(coords, rng);
        for (std::int64_t i = 0; i < pairs; ++i) {
            counts[static_cast<std::size_t>(coords[static_cast<std::size_t>(2 * i)])] += dev;
            counts[static_cast<std::size_t>(coords[static_cast<std::size_t>(2 * i + 1)])] -= dev;
        }
    }

    std::vector<std::uint32_t> values;
    values.reserve(static_cast<std::size_t>(n));
    for (std::int64_t j = 0; j < m; ++j)
        for (std::int64_t c = 0; c < counts[static_cast<std::size_t>(j)]; ++c)
            values.push_back(static_cast<std::uint32_t>(j));
    shuffle_in_place(values, rng);
    OracleFunction f(m, std::move(values));

    // membership check: inside the sup-norm ball by construction
    const double bound = epsilon / (4.0 * static_cast<double>(m));
    if (linf_distance(distribution_of(f), Distribution::uniform(m)) > bound + 1e-15)
        throw std::logic_error("gen_linf_perturbed_uniform: constructed instance violates its bound");
    return f;
}

std::vector<std::int64_t> primes_in_range(std::int64_t lo, std::int64_t hi) {
    std::vector<std::int64_t> out;
    if (hi < 2) return out;
    std::vector<char> composite(static_cast<std::size_t>(hi + 1), 0);
    for (std::int64_t i = 2; i * i <= hi; ++i)
        if (!composite[static_cast<std::size_t>(i)])
            for (std::int64_t j = i * i; j <= hi; j += i) composite[static_cast<std::size_t>(j)] = 1;
    for (std::int64_t p = std::max<std::int64_t>(2, lo); p <= hi; ++p)
        if (!composite[static_cast<std::size_t>(p)]) out.push_back(p);
    return out;
}

PeriodicInstance gen_periodic_dp(std::int64_t n, std::int64_t m, std::int64_t r, Rng& rng) {
    if (m < n) throw std::invalid_argument("gen_periodic_dp: need m >= n");
    if (r < 2 || r >= n / 2) throw std::invalid_argument("gen_periodic_dp: need 2 <= r < n/2");
    const auto primes = primes_in_range((r + 1) / 2, r);
    if (primes.empty()) throw std::invalid_argument("gen_periodic_dp: no prime in [r/2, r]");
    const std::int64_t p = primes[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(primes.size()) - 1))];

    // injective first period: p distinct values from [m]
    std::unordered_set<std::int64_t> used;
    std::vector<std::uint32_t> period;
    period.reserve(static_cast<std::size_t>(p));
    while (static_cast<std::int64_t>(period.size()) < p) {
        const std::int64_t v = rng.uniform_int(0, m - 1);
        if (used.insert(v).second) period.push_back(static_cast<std::uint32_t>(v));
    }

    std::vector<std::uint32_t> values(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i)
        values[static_cast<std::size_t>(i)] = period[static_cast<std::size_t>(i % p)];
    PeriodicInstance inst{OracleFunction(m, std::move(values)), p};
    if (!is_1_1_periodic(inst.f, p))
        throw std::logic_error("gen_periodic_dp: constructed instance fails its membership check");
    return inst;
}

double periodic_distance_lower_bound(const OracleFunction& f, std::int64_t p) {
    const std::int64_t n = f.domain_size();
    if (p < 1 || p > n) throw std::invalid_argument("periodic_distance_lower_bound: need 1 <= p <= n");
    std::int64_t agreement_upper = 0;
    std::vector<std::int64_t> cls;
    for (std::int64_t s = 0; s < p; ++s) {
        cls.clear();
        for (std::int64_t i = s; i < n; i += p) cls.push_back(f.peek(i));
        std::sort(cls.begin(), cls.end());
        // most frequent value in the residue class
        std::int64_t best = 0, run = 0;
        for (std::size_t i = 0; i < cls.size(); ++i) {
            run = (i > 0 && cls[i] == cls[i - 1]) ? run + 1 : 1;
            best = std::max(best, run);
        }
        agreement_upper += best;
    }
    return 1.0 - static_cast<double>(agreement_upper) / static_cast<double>(n);
}

OracleFunction gen_random_dn(std::int64_t n, std::int64_t m, std::int64_t q_lo, std::int64_t r_hi,
                             double epsilon, Rng& rng) {
    if (m < n) throw std::invalid_argument("gen_random_dn: need m >= n");
    if (q_lo < 1 || q_lo > r_hi) throw std::invalid_argument("gen_random_dn: bad period window");
    for (int attempt = 0; attempt < 100; ++attempt) {
        std::vector<std::uint32_t> values(static_cast<std::size_t>(n));
        for (auto& v : values) v = static_cast<std::uint32_t>(rng.uniform_int(0, m - 1));
        OracleFunction f(m, std::move(values));
        double min_dist = 1.0;
        for (std::int64_t p = q_lo; p <= r_hi; ++p)
            min_dist = std::min(min_dist, periodic_distance_lower_bound(f, p));
        if (min_dist >= epsilon) return f;
    }
    throw std::runtime_error("gen_random_dn: could not certify farness after 100 redraws");
}

} // namespace qpt
