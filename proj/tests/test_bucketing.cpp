#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "qpt/bucketing.hpp"
#include "reference.hpp"

using namespace qpt;
using qpt_test::random_sparse_distribution;

TEST_CASE("uniform over 8 at eps=1: single band, index computed from the ladder") {
    // thresholds are 2^(i-1)/24; 1/8 = 3/24 sits in [2/24, 4/24), band 2
    auto u = Distribution::uniform(8);
    auto part = bucket(u, 1.0);
    CHECK(part.k == 6); // ceil(2*3/1)
    CHECK(part.buckets[0].empty());
    CHECK(part.buckets[2].size() == 8);
    for (auto b : part.bucket_of) CHECK(b == 2);
}

TEST_CASE("point mass over 8 at eps=1: atom in band 5, rest in the tail") {
    // 2^4/24 <= 1 < 2^5/24
    auto p = Distribution::point_mass(8, 0);
    auto part = bucket(p, 1.0);
    CHECK(part.k == 6);
    CHECK(part.bucket_of[0] == 5);
    CHECK(part.buckets[0].size() == 7);
    CHECK(part.buckets[5].size() == 1);
}

TEST_CASE("buckets partition the range for arbitrary inputs") {
    Rng rng(41);
    for (int it = 0; it < 300; ++it) {
        const std::int64_t m = 2 + rng.uniform_int(0, 126);
        const double eps = 0.1 + 0.9 * rng.uniform01();
        auto p = random_sparse_distribution(m, 0.3, rng);
        auto part = bucket(p, eps);
        CHECK(part.k == bucket_count(m, eps));
        std::vector<int> seen(static_cast<std::size_t>(m), 0);
        for (const auto& b : part.buckets)
            for (auto j : b) ++seen[static_cast<std::size_t>(j)];
        for (auto c : seen) CHECK(c == 1); // disjoint and covering
    }
}

TEST_CASE("tail-bucket mass is at most 1/log2(m)") {
    Rng rng(43);
    for (int it = 0; it < 300; ++it) {
        const std::int64_t m = 2 + rng.uniform_int(0, 254);
        auto p = random_sparse_distribution(m, 0.4, rng);
        auto part = bucket(p, 0.5);
        CHECK(p.mass(part.buckets[0]) <= 1.0 / std::log2(static_cast<double>(m)) + 1e-12);
    }
}

TEST_CASE("banded conditionals are eps-close to uniform in l1 and eps/|M| in sup norm") {
    Rng rng(47);
    for (int it = 0; it < 200; ++it) {
        const std::int64_t m = 4 + rng.uniform_int(0, 124);
        const double eps = 0.1 + 0.9 * rng.uniform01();
        auto p = random_sparse_distribution(m, 0.3, rng);
        auto part = bucket(p, eps);
        for (std::int64_t i = 1; i <= part.k; ++i) {
            const auto& mem = part.buckets[static_cast<std::size_t>(i)];
            if (mem.empty()) continue;
            const auto cond = restrict_to(p, mem);
            const auto u = Distribution::uniform(static_cast<std::int64_t>(mem.size()));
            CHECK(l1_distance(cond, u) <= eps + 1e-12);
            CHECK(linf_distance(cond, u) <= eps / static_cast<double>(mem.size()) + 1e-12);
        }
    }
}

TEST_CASE("bucket is deterministic in its inputs") {
    Rng rng(53);
    auto p = random_sparse_distribution(64, 0.2, rng);
    auto a = bucket(p, 0.37);
    auto b = bucket(p, 0.37);
    CHECK(a.bucket_of == b.bucket_of);
    CHECK(a.k == b.k);
}

TEST_CASE("boundary weights land in the higher band") {
    // m = 4: base threshold 1/(4*2) = 1/8 is exactly representable, so
    // weights sitting on the ladder exercise the left-closed convention
    Distribution p({0.125, 0.125, 0.25, 0.5});
    auto part = bucket(p, 1.0);
    CHECK(part.k == 4);
    CHECK(part.bucket_of[0] == 1); // 1/8 = base*(1+1)^0: first band, not the tail
    CHECK(part.bucket_of[1] == 1);
    CHECK(part.bucket_of[2] == 2); // 2/8 = base*2^1
    CHECK(part.bucket_of[3] == 3); // 4/8 = base*2^2
}

TEST_CASE("top of the ladder clears probability one") {
    // the highest threshold must exceed 1 so no element is unassigned
    for (std::int64_t m : {2, 8, 64, 4096}) {
        for (double eps : {0.25, 0.5, 1.0}) {
            const auto k = bucket_count(m, eps);
            const double top = std::pow(1.0 + eps, static_cast<double>(k)) /
                               (static_cast<double>(m) * std::log2(static_cast<double>(m)));
            CHECK(top > 1.0);
        }
    }
}

TEST_CASE("parameter validation") {
    auto u = Distribution::uniform(4);
    CHECK_THROWS_AS(bucket(u, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(bucket(u, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(bucket(Distribution::uniform(1), 0.5), std::invalid_argument);
}

TEST_CASE("partition csv dump") {
    auto part = bucket(Distribution::uniform(8), 1.0);
    const auto path = (std::filesystem::temp_directory_path() / "qpt_part_test.csv").string();
    save_partition_csv(path, part);
    std::ifstream in(path);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "bucket_index,member");
    int rows = 0;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 8); // one row per element
    in.close();
    std::filesystem::remove(path);
}
