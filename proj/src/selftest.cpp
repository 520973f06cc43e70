#include <cmath>
#include <cstdio>
#include <numeric>

#include "qpt/bucketing.hpp"
#include "qpt/experiments.hpp"
#include "qpt/generators.hpp"
#include "qpt/periodicity.hpp"
#include "qpt/phase_estimation.hpp"
#include "qpt/statevector.hpp"

namespace qpt {

namespace {

int check(bool ok, const char* name, bool verbose) {
    if (verbose || !ok) std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", name);
    return ok ? 0 : 1;
}

Distribution random_distribution(std::int64_t m, Rng& rng) {
    std::vector<double> w(static_cast<std::size_t>(m));
    double sum = 0;
    for (auto& x : w) {
        x = -std::log(1.0 - rng.uniform01());
        sum += x;
    }
    for (auto& x : w) x /= sum;
    double s2 = 0;
    for (double x : w) s2 += x;
    w[0] += 1.0 - s2;
    return Distribution(std::move(w));
}

} // namespace

int selftest(bool verbose) {
    int failures = 0;
    Rng rng(20272027);

    // bucket structure: low-mass tail bounded, conditionals near uniform
    {
        bool ok = true;
        for (int it = 0; it < 50 && ok; ++it) {
            const auto p = random_distribution(64, rng);
            const double eps = 0.25 + 0.75 * rng.uniform01();
            const auto part = bucket(p, eps);
            const double log2m = std::log2(64.0);
            double tail = 0;
            for (auto j : part.buckets[0]) tail += p.w[static_cast<std::size_t>(j)];
            if (tail > 1.0 / log2m + 1e-12) ok = false;
            for (std::int64_t i = 1; i <= part.k && ok; ++i) {
                const auto& mem = part.buckets[static_cast<std::size_t>(i)];
                if (mem.empty()) continue;
                const auto cond = restrict_to(p, mem);
                const auto uni = Distribution::uniform(static_cast<std::int64_t>(mem.size()));
                if (l1_distance(cond, uni) > eps + 1e-12) ok = false;
            }
        }
        failures += check(ok, "bucket decomposition bounds", verbose);
    }

    // transform round trip
    {
        std::vector<cd> a(1024, cd{0, 0});
        for (int i = 0; i < 1024; ++i) a[static_cast<std::size_t>(i)] = cd{rng.uniform01(), rng.uniform01()};
        double norm = 0;
        for (auto& z : a) norm += std::norm(z);
        for (auto& z : a) z /= std::sqrt(norm);
        auto b = a;
        qft_inplace(b, false);
        qft_inplace(b, true);
        double err = 0;
        for (std::size_t i = 0; i < a.size(); ++i) err = std::max(err, std::abs(b[i] - a[i]));
        failures += check(err < 1e-9, "transform round trip", verbose);
    }

    // fraction recovery equals exhaustive search at a small size
    {
        bool ok = true;
        const std::int64_t n = 256, bound = 8;
        for (std::int64_t y = 0; y < n && ok; ++y) {
            const auto got = cfe_recover(y, n, bound);
            // exhaustive oracle
            bool found = false;
            Fraction best{0, 1};
            for (std::int64_t den = 1; den <= bound && !found; ++den)
                for (std::int64_t num = 0; num <= den; ++num) {
                    if (gcd_i64(num, den) != 1) continue;
                    if (std::abs(static_cast<double>(y) / n - static_cast<double>(num) / den) <
                        2.0 / n) {
                        best = Fraction{num, den};
                        found = true;
                        break;
                    }
                }
            if (found != got.has_value()) ok = false;
            else if (found && !(got->num == best.num && got->den == best.den)) ok = false;
        }
        failures += check(ok, "fraction recovery vs exhaustive search", verbose);
    }

    // counting outcome law is a distribution
    {
        const AmplitudeOutcome law(64, 16, 32);
        const auto p = law.materialize();
        const double sum = std::accumulate(p.begin(), p.end(), 0.0);
        failures += check(std::abs(sum - 1.0) < 1e-9, "counting outcome law normalization", verbose);
    }

    // query accounting reconciles with transcripts
    {
        auto f = gen_permutation(4096, rng);
        const auto before = f.counters();
        const auto v = test_uniformity(f, 0.5, TesterConfig{}, rng);
        const bool ok = v.classical_used == f.counters().classical - before.classical &&
                        v.quantum_used == f.counters().quantum - before.quantum;
        failures += check(ok, "query accounting", verbose);
    }

    return failures;
}

} // namespace qpt
