#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "qpt/distribution.hpp"

namespace qpt {

// Partition of {0,...,m-1} into k+1 disjoint index sets by probability
// magnitude. Bucket 0 holds the low-mass tail (weights below 1/(m*log2 m));
// bucket i in [1..k] holds weights in
//   [ (1+eps)^(i-1) / (m log2 m), (1+eps)^i / (m log2 m) ).
// Boundaries are left-closed, so a weight exactly at a threshold lands in
// the higher bucket. Empty buckets are retained so indices are stable
// across distributions with the same (m, eps).
struct BucketPartition {
    std::int64_t m = 0;
    double epsilon = 0;
    std::int64_t k = 0;
    std::vector<std::vector<std::int64_t>> buckets; // size k+1
    std::vector<std::int32_t> bucket_of;            // size m
};

// k = ceil(2*log2(m) / log2(1+eps)); all logs base 2.
std::int64_t bucket_count(std::int64_t m, double epsilon);

// Requires eps in (0,1] and m >= 2; pure function of (p, eps).
BucketPartition bucket(const Distribution& p, double epsilon);

// Distribution over bucket indices {0..k} with value p(M_i) at i.
Distribution coarsen(const Distribution& p, const BucketPartition& part);

void save_partition_csv(const std::string& path, const BucketPartition& part);

} // namespace qpt
