// Acceptance suite: one pass/fail line per criterion, exit code equals the
// number of failures. Criterion 10 drives the CLI binary, whose path is
// argv[1].

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <vector>

#include "qpt/baselines.hpp"
#include "qpt/bucketing.hpp"
#include "qpt/experiments.hpp"
#include "qpt/generators.hpp"
#include "qpt/periodicity.hpp"
#include "qpt/phase_estimation.hpp"
#include "qpt/testers.hpp"
#include "reference.hpp"

using namespace qpt;
using qpt_test::random_sparse_distribution;

namespace {

int g_failures = 0;

void criterion(int number, const char* name, const std::function<bool(std::string&)>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] criterion %d: %s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", number, name, sec,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

BucketPartition random_partition(std::int64_t m, Rng& rng) {
    BucketPartition part;
    part.m = m;
    part.epsilon = 0;
    part.k = 1 + rng.uniform_int(0, 7);
    part.buckets.assign(static_cast<std::size_t>(part.k + 1), {});
    part.bucket_of.resize(static_cast<std::size_t>(m));
    for (std::int64_t j = 0; j < m; ++j) {
        const auto b = static_cast<std::int32_t>(rng.uniform_int(0, part.k));
        part.bucket_of[static_cast<std::size_t>(j)] = b;
        part.buckets[static_cast<std::size_t>(b)].push_back(j);
    }
    return part;
}

double max_conditional_l1(const Distribution& p, const Distribution& q, const BucketPartition& part,
                          bool include_tail, double mass_floor_on_p) {
    double worst = 0;
    for (std::int64_t i = include_tail ? 0 : 1; i <= part.k; ++i) {
        const auto& mem = part.buckets[static_cast<std::size_t>(i)];
        if (mem.empty()) continue;
        const double pm = p.mass(mem), qm = q.mass(mem);
        if (i != 0 && pm < mass_floor_on_p) continue;
        if (pm <= 0 || qm <= 0) continue;
        worst = std::max(worst, l1_distance(restrict_to(p, mem), restrict_to(q, mem)));
    }
    return worst;
}

} // namespace

int main(int argc, char** argv) {
    const std::string cli_path = argc > 1 ? argv[1] : "";

    criterion(1, "bucket decomposition bounds, zero violations", [](std::string& detail) {
        Rng rng(1001);
        std::int64_t checked = 0;
        for (const std::int64_t m : {16, 256, 4096}) {
            for (const double eps : {0.25, 0.5, 1.0}) {
                for (int it = 0; it < 1000; ++it) {
                    const auto p = random_sparse_distribution(m, it % 3 == 0 ? 0.3 : 0.0, rng);
                    const auto part = bucket(p, eps);
                    if (p.mass(part.buckets[0]) > 1.0 / std::log2(static_cast<double>(m)) + 1e-12)
                        return false;
                    for (std::int64_t i = 1; i <= part.k; ++i) {
                        const auto& mem = part.buckets[static_cast<std::size_t>(i)];
                        if (mem.empty()) continue;
                        const auto cond = restrict_to(p, mem);
                        const auto u = Distribution::uniform(static_cast<std::int64_t>(mem.size()));
                        if (l1_distance(cond, u) > eps + 1e-12) return false;
                    }
                    ++checked;
                }
            }
        }
        detail = std::to_string(checked) + " partitions";
        return true;
    });

    criterion(2, "conditional+coarse decomposition bounds, brute force", [](std::string& detail) {
        Rng rng(1002);
        const int triples = 10000;
        for (int it = 0; it < triples; ++it) {
            const std::int64_t m = 4 + rng.uniform_int(0, 60);
            const auto p = random_sparse_distribution(m, 0.25, rng);
            const auto q = random_sparse_distribution(m, 0.25, rng);
            const auto part = it % 2 == 0
                                  ? random_partition(m, rng)
                                  : bucket(random_sparse_distribution(m, 0.25, rng),
                                           0.25 + 0.75 * rng.uniform01());
            const double eps2 = l1_distance(coarsen(p, part), coarsen(q, part));
            const double total = l1_distance(p, q);

            // plain bound: conditionals over every bucket with two-sided mass
            const double eps1_all = max_conditional_l1(p, q, part, true, 0.0);
            if (total > eps1_all + eps2 + 1e-9) return false;

            // exempted bound: banded buckets below eps3/k drop their hypothesis
            const double eps3 = 0.05 + 0.5 * rng.uniform01();
            double eps1 = max_conditional_l1(p, q, part, false, eps3 / static_cast<double>(part.k));
            const auto& tail = part.buckets[0];
            if (!tail.empty() && p.mass(tail) > 0 && q.mass(tail) > 0)
                eps1 = std::max(eps1, l1_distance(restrict_to(p, tail), restrict_to(q, tail)));
            if (total > 2.0 * (eps1 + eps2 + eps3) + 1e-9) return false;
        }
        detail = std::to_string(triples) + " triples";
        return true;
    });

    criterion(3, "counting error envelope grid + statevector cross-check", [](std::string& detail) {
        const int samples = 10000;
        double worst_margin = 1e9;
        for (const std::int64_t n : {64, 256, 1024}) {
            for (const int num : {0, 1, 2, 4}) { // t/n in {0, 1/8, 1/4, 1/2}
                const std::int64_t t = n * num / 8;
                for (const std::int64_t q : {32, 128}) {
                    for (const double ell : {2.0, 4.0}) {
                        Rng rng(static_cast<std::uint64_t>(1003 + n + t + q) +
                                static_cast<std::uint64_t>(ell));
                        const double bound = count_error_bound(n, t, q, ell);
                        int violations = 0;
                        for (int s = 0; s < samples; ++s) {
                            const auto est = amplitude_estimate(n, t, q, ell, rng);
                            if (std::abs(est.t_prime - static_cast<double>(t)) > bound) ++violations;
                        }
                        const double rate = static_cast<double>(violations) / samples;
                        const double budget = 1.0 / (2.0 * (ell - 1.0)) + 0.02;
                        worst_margin = std::min(worst_margin, budget - rate);
                        if (rate > budget) return false;
                    }
                }
            }
        }
        for (const std::int64_t t : {0, 8, 16, 32, 64}) {
            const AmplitudeOutcome law(64, t, 32);
            const auto analytic = law.materialize();
            const auto reference = qpt_test::qpe_reference_distribution(64, t, law.M());
            if (qpt_test::total_variation(analytic, reference) > 1e-6) return false;
        }
        std::ostringstream os;
        os << "48 cells, min rate margin " << worst_margin;
        detail = os.str();
        return true;
    });

    criterion(4, "set-mass estimation contract", [](std::string& detail) {
        const int runs = 10000;
        const double floor_rate = 5.0 / 6.0 - 0.03;
        double worst = 1.0;

        struct Cell {
            std::int64_t n, m, t_set; // t_set values of an identity-like table
            double delta, p;
        };
        const Cell cells[] = {
            {64, 64, 16, 0.1, 0.25},
            {4096, 4096, 512, 0.05, 0.125},
            {4096, 4096, 2048, 0.05, 0.5},
        };
        const TesterConfig cfg;
        for (const auto& cell : cells) {
            Rng rng(static_cast<std::uint64_t>(1004 + cell.n + cell.t_set));
            const double envelope =
                cell.delta * std::sqrt(cell.p) / std::cbrt(static_cast<double>(cell.m)) +
                cell.delta * cell.delta / std::pow(static_cast<double>(cell.m), 2.0 / 3.0);
            std::vector<std::int64_t> set(static_cast<std::size_t>(cell.t_set));
            for (std::int64_t i = 0; i < cell.t_set; ++i) set[static_cast<std::size_t>(i)] = i;
            std::vector<std::uint32_t> idvals(static_cast<std::size_t>(cell.n));
            for (std::int64_t i = 0; i < cell.n; ++i)
                idvals[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(i % cell.m);
            int good = 0;
            for (int r = 0; r < runs; ++r) {
                OracleFunction f(cell.m, idvals);
                const double p_prime = qestimate(f, set, cell.delta, cfg, rng);
                if (std::abs(p_prime - cell.p) <= envelope) ++good;
            }
            const double rate = static_cast<double>(good) / runs;
            worst = std::min(worst, rate);
            if (rate < floor_rate) return false;
        }
        std::ostringstream os;
        os << "worst success rate " << worst << " vs floor " << floor_rate;
        detail = os.str();
        return true;
    });

    criterion(5, "tolerant uniformity tester behavior at m = 4096", [](std::string& detail) {
        const std::int64_t m = 4096;
        const double eps = 0.5;
        const TesterConfig cfg;
        const auto ceiling = uniformity_query_ceiling(m, eps, cfg);
        const int trials = 200;
        int acc_perm = 0, rej_two = 0, acc_tol = 0, within_ceiling = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : acc_perm, rej_two, acc_tol, within_ceiling)
        for (int it = 0; it < trials; ++it) {
            Rng rng(split_seed(1005, static_cast<std::uint64_t>(it)));
            bool fits = true;
            {
                auto f = gen_permutation(m, rng);
                const auto v = test_uniformity(f, eps, cfg, rng);
                fits &= v.classical_used <= ceiling.classical && v.quantum_used <= ceiling.quantum;
                acc_perm += v.decision == Decision::accept ? 1 : 0;
            }
            {
                auto f = gen_two_to_one(m, rng);
                const auto v = test_uniformity(f, eps, cfg, rng);
                fits &= v.classical_used <= ceiling.classical && v.quantum_used <= ceiling.quantum;
                rej_two += v.decision == Decision::reject ? 1 : 0;
            }
            {
                auto f = gen_linf_perturbed_uniform(8 * m, m, eps, rng);
                const auto v = test_uniformity(f, eps, cfg, rng);
                fits &= v.classical_used <= ceiling.classical && v.quantum_used <= ceiling.quantum;
                acc_tol += v.decision == Decision::accept ? 1 : 0;
            }
            within_ceiling += fits ? 1 : 0;
        }
        std::ostringstream os;
        os << "accept(uniform)=" << acc_perm / 200.0 << " accept(tolerant)=" << acc_tol / 200.0
           << " reject(2to1)=" << rej_two / 200.0;
        detail = os.str();
        return acc_perm >= 120 && acc_tol >= 120 && rej_two >= 120 && within_ceiling == trials;
    });

    criterion(6, "known-distribution closeness tester behavior at m = 4096", [](std::string& detail) {
        const std::int64_t m = 4096, n = 4096;
        const double eps = 0.19;
        const TesterConfig cfg;
        const double cap = closeness_query_ceiling(m, eps, cfg);
        const int trials = 100;

        // exact-match positives against a three-level known distribution
        std::vector<double> w(static_cast<std::size_t>(m), 0.0);
        for (std::int64_t j = 0; j < m / 4; ++j) w[static_cast<std::size_t>(j)] = 2.0 / static_cast<double>(m);
        for (std::int64_t j = m / 4; j < 3 * m / 4; ++j) w[static_cast<std::size_t>(j)] = 1.0 / static_cast<double>(m);
        const Distribution g_levels(w);
        const Distribution g_uniform = Distribution::uniform(m);

        int accepts = 0, rejects = 0;
        double max_queries = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : accepts, rejects) reduction(max : max_queries)
        for (int it = 0; it < trials; ++it) {
            Rng rng(split_seed(1006, static_cast<std::uint64_t>(it)));
            {
                std::vector<std::uint32_t> values;
                values.reserve(static_cast<std::size_t>(n));
                for (std::int64_t j = 0; j < m; ++j) {
                    const auto c = static_cast<std::int64_t>(
                        std::llround(g_levels.w[static_cast<std::size_t>(j)] * static_cast<double>(n)));
                    for (std::int64_t i = 0; i < c; ++i) values.push_back(static_cast<std::uint32_t>(j));
                }
                shuffle_in_place(values, rng);
                OracleFunction f(m, std::move(values));
                const auto v = test_known_closeness(f, g_levels, eps, cfg, rng);
                max_queries = std::max(max_queries, static_cast<double>(v.classical_used + v.quantum_used));
                accepts += v.decision == Decision::accept ? 1 : 0;
            }
            {
                auto f = gen_two_to_one(n, rng);
                const auto v = test_known_closeness(f, g_uniform, eps, cfg, rng);
                max_queries = std::max(max_queries, static_cast<double>(v.classical_used + v.quantum_used));
                rejects += v.decision == Decision::reject ? 1 : 0;
            }
        }
        std::ostringstream os;
        os << "accept(match)=" << accepts / 100.0 << " reject(far)=" << rejects / 100.0
           << " max_queries=" << max_queries << " cap=" << cap;
        detail = os.str();
        return accepts >= 60 && rejects >= 60 && max_queries <= cap;
    });

    criterion(7, "constant-query periodicity tester behavior", [](std::string& detail) {
        const PeriodicityConfig pcfg;
        const auto ceiling = periodicity_query_ceiling(pcfg);
        const std::int64_t m = std::int64_t{1} << 20;
        const double eps = 0.1;

        int accepts = 0, rejects = 0, within_ceiling = 0;
        const int trials = 200;
#pragma omp parallel for schedule(dynamic) reduction(+ : accepts, rejects, within_ceiling)
        for (int it = 0; it < trials; ++it) {
            Rng rng(split_seed(1007, static_cast<std::uint64_t>(it)));
            const std::int64_t n = 4096;
            bool fits = true;
            {
                auto inst = gen_periodic_dp(n, m, period_range_hi(n), rng);
                const auto v = test_periodicity(inst.f, eps, pcfg, rng);
                fits &= v.classical_used <= ceiling.classical && v.quantum_used <= ceiling.quantum;
                accepts += v.decision == Decision::accept ? 1 : 0;
            }
            {
                auto f = gen_random_dn(n, m, period_range_lo(n), period_range_hi(n), eps, rng);
                const auto v = test_periodicity(f, eps, pcfg, rng);
                fits &= v.classical_used <= ceiling.classical && v.quantum_used <= ceiling.quantum;
                rejects += v.decision == Decision::reject ? 1 : 0;
            }
            within_ceiling += fits ? 1 : 0;
        }

        // fixed configuration: accepted runs spend the identical budget at
        // every domain size
        bool constant_ok = true;
        for (const std::int64_t n : {1024, 4096, 16384}) {
            Rng rng(static_cast<std::uint64_t>(10070 + n));
            for (int it = 0; it < 30; ++it) {
                auto inst = gen_periodic_dp(n, m, period_range_hi(n), rng);
                const auto v = test_periodicity(inst.f, eps, pcfg, rng);
                if (v.classical_used > ceiling.classical || v.quantum_used > ceiling.quantum)
                    constant_ok = false;
                if (v.decision == Decision::accept &&
                    (v.quantum_used != static_cast<std::uint64_t>(pcfg.k_runs) ||
                     v.classical_used != 2ULL * static_cast<std::uint64_t>(pcfg.verify_trials)))
                    constant_ok = false;
            }
        }
        std::ostringstream os;
        os << "accept(periodic)=" << accepts / 200.0 << " reject(random)=" << rejects / 200.0
           << " constant_budget=" << (constant_ok ? "yes" : "no");
        detail = os.str();
        return accepts >= 134 && rejects >= 134 && constant_ok && within_ceiling == trials;
    });

    criterion(8, "fraction recovery equals exhaustive search at n = 4096", [](std::string& detail) {
        const std::int64_t n = 4096, bound = 32;
        for (std::int64_t y = 0; y < n; ++y) {
            const auto got = cfe_recover(y, n, bound);
            const auto want = qpt_test::exhaustive_fraction_search(y, n, bound);
            if (got.has_value() != want.has_value()) return false;
            if (got && (got->num != want->num || got->den != want->den)) return false;
        }
        detail = "4096 outcomes, zero mismatches";
        return true;
    });

    criterion(9, "sampling reconstruction error bounds", [](std::string& detail) {
        double worst_slack = 1e9;
        for (const std::int64_t m : {16, 64, 256}) {
            for (const std::int64_t factor : {1, 16, 10000}) {
                const std::int64_t n_samples = m * factor;
                const double bound = std::sqrt(static_cast<double>(m) / static_cast<double>(n_samples));
                const auto p = Distribution::uniform(m);
                const int reps = 500;
                double mean = 0;
                int within_tenth = 0;
#pragma omp parallel for schedule(static) reduction(+ : mean, within_tenth)
                for (int rep = 0; rep < reps; ++rep) {
                    Rng rng(split_seed(static_cast<std::uint64_t>(1009 + m + factor),
                                       static_cast<std::uint64_t>(rep)));
                    const auto rec = empirical_reconstruction(p, n_samples, rng);
                    const double err = l1_distance(rec.p_tilde, p);
                    mean += err;
                    within_tenth += err <= 0.1 ? 1 : 0;
                }
                mean /= reps;
                worst_slack = std::min(worst_slack, bound - mean);
                if (mean > bound) return false;
                if (factor == 10000 && within_tenth < 435) return false; // 0.87 * 500
            }
        }
        std::ostringstream os;
        os << "min bound slack " << worst_slack;
        detail = os.str();
        return true;
    });

    criterion(10, "CLI reruns are byte-identical", [&](std::string& detail) {
        if (cli_path.empty()) {
            detail = "no CLI path passed";
            return false;
        }
        const auto dir = std::filesystem::temp_directory_path();
        const auto out1 = (dir / "qpt_accept_a.csv").string();
        const auto out2 = (dir / "qpt_accept_b.csv").string();
        const auto read = [](const std::string& path) {
            std::ifstream in(path, std::ios::binary);
            std::ostringstream ss;
            ss << in.rdbuf();
            return ss.str();
        };
        const std::string cmds[] = {
            " uniformity --n 512 --m 512 --epsilon 0.5 --trials 8 --seed 424242 --out ",
            " periodicity --n 1024 --m 1048576 --trials 6 --seed 17 --out ",
        };
        for (const auto& c : cmds) {
            for (const auto& out : {out1, out2}) {
                const std::string cmd = cli_path + c + out + " >/dev/null 2>&1";
                if (std::system(cmd.c_str()) != 0) {
                    detail = "CLI run failed: " + cmd;
                    return false;
                }
            }
            const auto a = read(out1), b = read(out2);
            if (a.empty() || a != b) {
                detail = "outputs differ for" + c;
                return false;
            }
        }
        std::filesystem::remove(out1);
        std::filesystem::remove(out2);
        detail = "2 experiments, byte-identical reruns";
        return true;
    });

    std::printf("%d of 10 criteria passed\n", 10 - g_failures);
    return g_failures;
}
