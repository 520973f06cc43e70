#pragma once
#include <cstdint>
#include <vector>

#include "qpt/bucketing.hpp"
#include "qpt/distribution.hpp"
#include "qpt/oracle.hpp"
#include "qpt/rng.hpp"
#include "qpt/testers.hpp"
#include "qpt/transcript.hpp"

namespace qpt {

// Inverse-CDF sampler over an explicit distribution; boundary draws resolve
// toward the lower index, deterministic given the generator stream.
class DistributionSampler {
public:
    explicit DistributionSampler(const Distribution& p);
    std::int64_t operator()(Rng& rng) const;

private:
    std::vector<double> cum_;
};

// Classical birthday-bound baseline: queries `budget` uniform domain points
// and rejects iff any two share an image.
TestVerdict classical_uniformity_collision(OracleFunction& f, std::int64_t budget, Rng& rng);

struct ReconstructionResult {
    OracleFunction f;            // f(j) = j-th sampled outcome
    Distribution p_tilde;        // empirical distribution of the sample
    bool undersampled = false;   // n_samples < m: the table cannot represent all of p
};

// Builds an oracle-function representation of p from n_samples i.i.d.
// draws; the expected l1 error of p_tilde is at most sqrt(m / n_samples).
ReconstructionResult empirical_reconstruction(const Distribution& p, std::int64_t n_samples, Rng& rng);

// Plug-in coarse-distribution check shared with the closeness tester:
// draws ceil(coarse_sample_factor * k / eps^2) classical samples of f,
// maps them through the partition and accepts iff the empirical coarse l1
// distance to the coarse g is at most eps/8.
bool classical_coarse_l1_test(OracleFunction& f, const Distribution& g, const BucketPartition& part,
                              double epsilon, const TesterConfig& cfg, Rng& rng,
                              double* observed_distance = nullptr);

std::int64_t coarse_test_sample_count(std::int64_t k, double epsilon, const TesterConfig& cfg);

} // namespace qpt
