#include "qpt/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace qpt {

DistributionSampler::DistributionSampler(const Distribution& p) : cum_(p.w.size()) {
    double run = 0;
    for (std::size_t j = 0; j < p.w.size(); ++j) {
        run += p.w[j];
        cum_[j] = run;
    }
    cum_.back() = 1.0;
}

std::int64_t DistributionSampler::operator()(Rng& rng) const {
    const double u = 1.0 - rng.uniform01(); // (0, 1]: zero-weight prefixes are never hit
    const auto it = std::lower_bound(cum_.begin(), cum_.end(), u);
    return std::min<std::int64_t>(static_cast<std::int64_t>(it - cum_.begin()),
                                  static_cast<std::int64_t>(cum_.size()) - 1);
}

TestVerdict classical_uniformity_collision(OracleFunction& f, std::int64_t budget, Rng& rng) {
    if (budget < 2) throw std::invalid_argument("classical_uniformity_collision: budget >= 2");
    const std::int64_t n = f.domain_size();

    TranscriptBuilder tb(f);
    auto& step = tb.begin("birthday_scan");
    std::unordered_map<std::int64_t, std::int64_t> first_seen_at; // image -> domain point
    bool collided = false;
    for (std::int64_t d = 0; d < budget; ++d) {
        const std::int64_t x = rng.uniform_int(0, n - 1);
        const std::int64_t v = f.eval(x);
        const auto [it, inserted] = first_seen_at.emplace(v, x);
        if (!inserted && it->second != x) { // repeated domain points are not collisions
            collided = true;
            break;
        }
    }
    step.notes.emplace_back("budget", static_cast<double>(budget));
    step.sub_accept = !collided;
    tb.end();
    return tb.finish(collided ? Decision::reject : Decision::accept, 0);
}

ReconstructionResult empirical_reconstruction(const Distribution& p, std::int64_t n_samples, Rng& rng) {
    if (n_samples < 1) throw std::invalid_argument("empirical_reconstruction: n_samples >= 1");
    const DistributionSampler sampler(p);
    std::vector<std::uint32_t> values(static_cast<std::size_t>(n_samples));
    for (auto& v : values) v = static_cast<std::uint32_t>(sampler(rng));
    OracleFunction f(p.m, std::move(values));
    Distribution p_tilde = distribution_of(f);
    return ReconstructionResult{std::move(f), std::move(p_tilde), n_samples < p.m};
}

std::int64_t coarse_test_sample_count(std::int64_t k, double epsilon, const TesterConfig& cfg) {
    return static_cast<std::int64_t>(
        std::ceil(cfg.coarse_sample_factor * static_cast<double>(k) / (epsilon * epsilon)));
}

bool classical_coarse_l1_test(OracleFunction& f, const Distribution& g, const BucketPartition& part,
                              double epsilon, const TesterConfig& cfg, Rng& rng,
                              double* observed_distance) {
    if (g.m != part.m || f.range_size() != part.m)
        throw std::invalid_argument("classical_coarse_l1_test: size mismatch");
    const std::int64_t n = f.domain_size();
    const std::int64_t samples = coarse_test_sample_count(part.k, epsilon, cfg);

    std::vector<std::int64_t> counts(static_cast<std::size_t>(part.k + 1), 0);
    for (std::int64_t s = 0; s < samples; ++s) {
        const std::int64_t x = rng.uniform_int(0, n - 1);
        const std::int64_t v = f.eval(x);
        ++counts[static_cast<std::size_t>(part.bucket_of[static_cast<std::size_t>(v)])];
    }

    const Distribution coarse_g = coarsen(g, part);
    double dist = 0;
    for (std::size_t i = 0; i < counts.size(); ++i)
        dist += std::abs(static_cast<double>(counts[i]) / static_cast<double>(samples) - coarse_g.w[i]);
    if (observed_distance) *observed_distance = dist;
    return dist <= epsilon / 8.0;
}

} // namespace qpt
