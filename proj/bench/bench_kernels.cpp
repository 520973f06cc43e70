// Serial-vs-parallel comparison of the simulation kernels: the transform,
// the collapsed period-sampling law, the counting outcome law and a batch
// of tester trials. Prints one line per kernel with timings and the largest
// divergence between the two paths.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "qpt/generators.hpp"
#include "qpt/periodicity.hpp"
#include "qpt/phase_estimation.hpp"
#include "qpt/statevector.hpp"
#include "qpt/testers.hpp"

using namespace qpt;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms, double max_diff) {
    std::printf("%-28s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx   max|diff| %.3g\n",
                name, serial_ms, parallel_ms, serial_ms / parallel_ms, max_diff);
}

} // namespace

int main() {
    Rng rng(7);

    {
        const std::int64_t dim = 1 << 20;
        std::vector<cd> a(static_cast<std::size_t>(dim));
        for (auto& z : a) z = cd{rng.uniform01() - 0.5, rng.uniform01() - 0.5};
        double norm = 0;
        for (auto& z : a) norm += std::norm(z);
        for (auto& z : a) z /= std::sqrt(norm);

        auto s = a;
        auto t0 = std::chrono::steady_clock::now();
        qft_inplace(s, false, Exec::serial);
        const double ts = ms_since(t0);

        auto p = a;
        t0 = std::chrono::steady_clock::now();
        qft_inplace(p, false, Exec::parallel);
        const double tp = ms_since(t0);

        double diff = 0;
        for (std::size_t i = 0; i < s.size(); ++i) diff = std::max(diff, std::abs(s[i] - p[i]));
        report("transform (dim 2^20)", ts, tp, diff);
    }

    {
        const std::int64_t n = 1 << 22, p = 37, s0 = 5;
        std::vector<std::int64_t> support;
        for (std::int64_t x = s0; x < n; x += p) support.push_back(x);

        auto t0 = std::chrono::steady_clock::now();
        const auto ser = collapsed_outcome_distribution(n, support, Exec::serial);
        const double ts = ms_since(t0);
        t0 = std::chrono::steady_clock::now();
        const auto par = collapsed_outcome_distribution(n, support, Exec::parallel);
        const double tp = ms_since(t0);

        double diff = 0;
        for (std::size_t i = 0; i < ser.size(); ++i) diff = std::max(diff, std::abs(ser[i] - par[i]));
        report("period-sampling law (2^22)", ts, tp, diff);
    }

    {
        const AmplitudeOutcome law(1 << 22, 1 << 19, 1 << 22);
        auto t0 = std::chrono::steady_clock::now();
        const auto ser = law.materialize(Exec::serial);
        const double ts = ms_since(t0);
        t0 = std::chrono::steady_clock::now();
        const auto par = law.materialize(Exec::parallel);
        const double tp = ms_since(t0);
        double diff = 0;
        for (std::size_t i = 0; i < ser.size(); ++i) diff = std::max(diff, std::abs(ser[i] - par[i]));
        report("counting outcome law (2^22)", ts, tp, diff);
    }

    {
        // trial batch: per-trial generators and testers, parallelized over
        // trials by the harness idiom
        const int trials = 64;
        const std::int64_t n = 4096;
        std::vector<int> accept_serial(trials), accept_parallel(trials);

        auto t0 = std::chrono::steady_clock::now();
        for (int i = 0; i < trials; ++i) {
            Rng r(split_seed(99, static_cast<std::uint64_t>(i)));
            auto f = gen_permutation(n, r);
            accept_serial[static_cast<std::size_t>(i)] =
                test_uniformity(f, 0.5, TesterConfig{}, r).decision == Decision::accept;
        }
        const double ts = ms_since(t0);

        t0 = std::chrono::steady_clock::now();
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < trials; ++i) {
            Rng r(split_seed(99, static_cast<std::uint64_t>(i)));
            auto f = gen_permutation(n, r);
            accept_parallel[static_cast<std::size_t>(i)] =
                test_uniformity(f, 0.5, TesterConfig{}, r).decision == Decision::accept;
        }
        const double tp = ms_since(t0);

        double diff = 0;
        for (int i = 0; i < trials; ++i)
            diff = std::max(diff, std::abs(static_cast<double>(accept_serial[static_cast<std::size_t>(i)] -
                                                               accept_parallel[static_cast<std::size_t>(i)])));
        report("uniformity trial batch (64)", ts, tp, diff);
    }

    return 0;
}
