#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qpt/baselines.hpp"
#include "qpt/generators.hpp"
#include "reference.hpp"

using namespace qpt;

TEST_CASE("sampler is exact on point masses and respects zero weights") {
    Rng rng(3);
    DistributionSampler point(Distribution::point_mass(8, 5));
    for (int it = 0; it < 100; ++it) CHECK(point(rng) == 5);

    Distribution holes({0.0, 0.5, 0.0, 0.5});
    DistributionSampler s(holes);
    for (int it = 0; it < 200; ++it) {
        const auto j = s(rng);
        const bool ok = j == 1 || j == 3;
        CHECK(ok);
    }
}

TEST_CASE("collision baseline never rejects injective functions") {
    Rng rng(5);
    for (int it = 0; it < 30; ++it) {
        auto f = gen_permutation(1024, rng);
        CHECK(classical_uniformity_collision(f, 256, rng).decision == Decision::accept);
    }
}

TEST_CASE("collision baseline catches 2-to-1 instances at birthday scale") {
    Rng rng(7);
    const std::int64_t m = 4096;
    const auto budget = static_cast<std::int64_t>(std::ceil(4.0 * std::sqrt(static_cast<double>(m))));
    int rejects = 0;
    const int trials = 200;
    for (int it = 0; it < trials; ++it) {
        auto f = gen_two_to_one(m, rng);
        rejects += classical_uniformity_collision(f, budget, rng).decision == Decision::reject ? 1 : 0;
    }
    CHECK(static_cast<double>(rejects) / trials >= 0.95);
}

TEST_CASE("collision baseline with a two-point budget almost never fires") {
    Rng rng(11);
    const std::int64_t m = 4096;
    int rejects = 0;
    const int trials = 2000;
    for (int it = 0; it < trials; ++it) {
        auto f = gen_two_to_one(m, rng);
        rejects += classical_uniformity_collision(f, 2, rng).decision == Decision::reject ? 1 : 0;
    }
    // per-trial rejection probability is about 1/(m-1)
    CHECK(static_cast<double>(rejects) / trials <= 0.01);
}

TEST_CASE("reconstruction of a point mass is exact") {
    Rng rng(13);
    const auto rec = empirical_reconstruction(Distribution::point_mass(16, 9), 64, rng);
    CHECK(l1_distance(rec.p_tilde, Distribution::point_mass(16, 9)) == 0.0);
    CHECK_FALSE(rec.undersampled);
}

TEST_CASE("reconstruction flags undersampled tables") {
    Rng rng(17);
    const auto rec = empirical_reconstruction(Distribution::uniform(64), 16, rng);
    CHECK(rec.undersampled);
    CHECK(rec.f.domain_size() == 16);
}

TEST_CASE("reconstruction error meets the mean bound on a mid-size cell") {
    Rng rng(19);
    const std::int64_t m = 64, n_samples = 4096;
    const auto p = Distribution::uniform(m);
    double mean = 0;
    const int reps = 500;
    for (int it = 0; it < reps; ++it)
        mean += l1_distance(empirical_reconstruction(p, n_samples, rng).p_tilde, p);
    mean /= reps;
    CHECK(mean <= std::sqrt(static_cast<double>(m) / static_cast<double>(n_samples)));
}

TEST_CASE("reconstruction error bound also holds for random shapes") {
    Rng rng(23);
    const std::int64_t m = 32, n_samples = 512;
    for (int rep = 0; rep < 5; ++rep) {
        const auto p = qpt_test::random_distribution(m, rng);
        double mean = 0;
        const int reps = 300;
        for (int it = 0; it < reps; ++it)
            mean += l1_distance(empirical_reconstruction(p, n_samples, rng).p_tilde, p);
        mean /= reps;
        CHECK(mean <= std::sqrt(static_cast<double>(m) / static_cast<double>(n_samples)));
    }
}

TEST_CASE("coarse check accepts matching coarse masses") {
    Rng rng(29);
    const TesterConfig cfg;
    const std::int64_t m = 256;
    // three-level known distribution so several buckets carry mass
    std::vector<double> w(static_cast<std::size_t>(m), 0.0);
    for (std::int64_t j = 0; j < m / 4; ++j) w[static_cast<std::size_t>(j)] = 2.0 / static_cast<double>(m);
    for (std::int64_t j = m / 4; j < 3 * m / 4; ++j) w[static_cast<std::size_t>(j)] = 1.0 / static_cast<double>(m);
    const Distribution g(w);
    const auto part = bucket(g, 0.19 / 4.0);

    int good = 0;
    const int trials = 60;
    for (int it = 0; it < trials; ++it) {
        // exact match: counts n*g(j) over a domain of size m
        std::vector<std::uint32_t> values;
        for (std::int64_t j = 0; j < m; ++j) {
            const auto c = static_cast<std::int64_t>(std::llround(g.w[static_cast<std::size_t>(j)] * m));
            for (std::int64_t i = 0; i < c; ++i) values.push_back(static_cast<std::uint32_t>(j));
        }
        shuffle_in_place(values, rng);
        OracleFunction f(m, std::move(values));
        if (classical_coarse_l1_test(f, g, part, 0.19, cfg, rng)) ++good;
    }
    CHECK(static_cast<double>(good) / trials >= 0.95);
}

TEST_CASE("coarse check rejects disjoint coarse masses") {
    Rng rng(30);
    const TesterConfig cfg;
    const std::int64_t m = 256;
    // hand-built two-band partition; g lives entirely in band 1, f maps the
    // whole domain into band 2, so the coarse distance is 2
    BucketPartition part;
    part.m = m;
    part.epsilon = 0;
    part.k = 2;
    part.buckets.assign(3, {});
    part.bucket_of.resize(static_cast<std::size_t>(m));
    for (std::int64_t j = 0; j < m; ++j) {
        const std::int32_t b = j < m / 2 ? 1 : 2;
        part.bucket_of[static_cast<std::size_t>(j)] = b;
        part.buckets[static_cast<std::size_t>(b)].push_back(j);
    }
    std::vector<double> w(static_cast<std::size_t>(m), 0.0);
    for (std::int64_t j = 0; j < m / 2; ++j) w[static_cast<std::size_t>(j)] = 2.0 / static_cast<double>(m);
    const Distribution g(w);

    int bad = 0;
    const int trials = 60;
    for (int it = 0; it < trials; ++it) {
        std::vector<std::uint32_t> values(static_cast<std::size_t>(m));
        for (std::int64_t i = 0; i < m; ++i)
            values[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(m / 2 + (i % (m / 2)));
        OracleFunction f(m, std::move(values));
        double observed = 0;
        if (!classical_coarse_l1_test(f, g, part, 0.19, cfg, rng, &observed)) ++bad;
        CHECK(observed == doctest::Approx(2.0));
    }
    CHECK(static_cast<double>(bad) / trials >= 0.99);
}

TEST_CASE("coarse check is trivially true on a single-band partition") {
    Rng rng(31);
    const TesterConfig cfg;
    // epsilon = 1 on a uniform distribution: every element in one band
    const std::int64_t m = 64;
    const auto g = Distribution::uniform(m);
    const auto part = bucket(g, 1.0);
    std::size_t nonempty = 0;
    for (const auto& b : part.buckets) nonempty += b.empty() ? 0 : 1;
    CHECK(nonempty == 1);
    for (int it = 0; it < 20; ++it) {
        auto f = gen_two_to_one(m, rng); // support halves, but the band is shared
        double observed = 0;
        CHECK(classical_coarse_l1_test(f, g, part, 1.0, cfg, rng, &observed));
        CHECK(observed == doctest::Approx(0.0));
    }
}
