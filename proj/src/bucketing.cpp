#include "qpt/bucketing.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace qpt {

std::int64_t bucket_count(std::int64_t m, double epsilon) {
    if (m < 2) throw std::invalid_argument("bucket_count: m must be at least 2");
    if (!(epsilon > 0 && epsilon <= 1)) throw std::invalid_argument("bucket_count: epsilon must be in (0,1]");
    return static_cast<std::int64_t>(std::ceil(2.0 * std::log2(static_cast<double>(m)) / std::log2(1.0 + epsilon)));
}

namespace {

// Threshold ladder: bucket i covers [base*(1+eps)^(i-1), base*(1+eps)^i)
// for i in [1..k], bucket 0 everything below base. A weight exactly at a
// threshold lands in the higher bucket.
std::int32_t bucket_index_of(double pj, double base, double one_plus_eps, std::int64_t k) {
    if (pj < base) return 0;
    const double ratio = pj / base; // >= 1
    auto idx = static_cast<std::int64_t>(std::floor(std::log(ratio) / std::log(one_plus_eps))) + 1;
    if (idx < 1) idx = 1;
    if (idx > k) idx = k;
    // fix up log rounding against the actual ladder values
    while (idx > 1 && pj < base * std::pow(one_plus_eps, static_cast<double>(idx - 1))) --idx;
    while (idx < k && pj >= base * std::pow(one_plus_eps, static_cast<double>(idx))) ++idx;
    return static_cast<std::int32_t>(idx);
}

} // namespace

BucketPartition bucket(const Distribution& p, double epsilon) {
    const std::int64_t m = p.m;
    const std::int64_t k = bucket_count(m, epsilon); // validates m, epsilon
    const double base = 1.0 / (static_cast<double>(m) * std::log2(static_cast<double>(m)));

    BucketPartition part;
    part.m = m;
    part.epsilon = epsilon;
    part.k = k;
    part.buckets.assign(static_cast<std::size_t>(k + 1), {});
    part.bucket_of.resize(static_cast<std::size_t>(m));
    for (std::int64_t j = 0; j < m; ++j) {
        const auto idx = bucket_index_of(p.w[static_cast<std::size_t>(j)], base, 1.0 + epsilon, k);
        part.bucket_of[static_cast<std::size_t>(j)] = idx;
        part.buckets[static_cast<std::size_t>(idx)].push_back(j);
    }
    return part;
}

Distribution coarsen(const Distribution& p, const BucketPartition& part) {
    if (p.m != part.m) throw std::invalid_argument("coarsen: size mismatch");
    std::vector<double> w(static_cast<std::size_t>(part.k + 1), 0.0);
    for (std::int64_t j = 0; j < p.m; ++j)
        w[static_cast<std::size_t>(part.bucket_of[static_cast<std::size_t>(j)])] +=
            p.w[static_cast<std::size_t>(j)];
    // exact-sum cleanup as in restrict_to
    double sum = 0;
    for (double x : w) sum += x;
    std::size_t arg = 0;
    for (std::size_t i = 1; i < w.size(); ++i)
        if (w[i] > w[arg]) arg = i;
    w[arg] += 1.0 - sum;
    return Distribution(std::move(w));
}

void save_partition_csv(const std::string& path, const BucketPartition& part) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "bucket_index,member\n";
    for (std::size_t i = 0; i < part.buckets.size(); ++i)
        for (auto j : part.buckets[i]) out << i << ',' << (j + 1) << '\n';
}

} // namespace qpt
