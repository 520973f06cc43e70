#include "qpt/testers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "qpt/baselines.hpp"
#include "qpt/phase_estimation.hpp"

namespace qpt {

std::int64_t cbrt_ceil(std::int64_t m) {
    if (m < 1) throw std::invalid_argument("cbrt_ceil: m must be positive");
    auto t = static_cast<std::int64_t>(std::llround(std::cbrt(static_cast<double>(m))));
    while (t * t * t < m) ++t;
    while (t > 1 && (t - 1) * (t - 1) * (t - 1) >= m) --t;
    return t;
}

namespace {

std::int64_t qestimate_iterations(std::int64_t m, double delta, const TesterConfig& cfg) {
    return static_cast<std::int64_t>(
        std::ceil(cfg.c_qestimate * std::cbrt(static_cast<double>(m)) / delta));
}

std::vector<std::int64_t> distinct_sorted(std::vector<std::int64_t> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

} // namespace

double qestimate(OracleFunction& f, const std::vector<std::int64_t>& value_set, double delta,
                 const TesterConfig& cfg, Rng& rng) {
    if (!(delta > 0 && delta <= 1)) throw std::invalid_argument("qestimate: delta must be in (0,1]");
    f.require_power_of_two_domain();
    const std::int64_t n = f.domain_size();
    const std::int64_t q = qestimate_iterations(f.range_size(), delta, cfg);
    const std::int64_t t_true = f.preimage_count(value_set);
    const CountEstimate est = amplitude_estimate(n, t_true, q, cfg.ell, rng);
    f.charge_quantum(2 * static_cast<std::uint64_t>(q)); // membership oracle: 2 raw queries per iteration
    return est.t_prime / static_cast<double>(n);
}

TestVerdict test_uniformity(OracleFunction& f, double epsilon, const TesterConfig& cfg, Rng& rng) {
    if (!(epsilon > 0 && epsilon <= 1)) throw std::invalid_argument("test_uniformity: epsilon in (0,1]");
    const std::int64_t m = f.range_size();
    const std::int64_t n = f.domain_size();
    if (m < 8) throw std::invalid_argument("test_uniformity: m must be at least 8");
    f.require_power_of_two_domain();
    const std::int64_t t = cbrt_ceil(m);
    if (t > n) throw std::invalid_argument("test_uniformity: domain too small for the index sample");

    TranscriptBuilder tb(f);

    auto& draw = tb.begin("index_sample");
    const auto indices = sample_distinct(n, t, rng);
    std::vector<std::int64_t> images;
    images.reserve(indices.size());
    for (auto i : indices) images.push_back(f.eval(i));
    draw.notes.emplace_back("t", static_cast<double>(t));
    tb.end();

    auto& coll = tb.begin("collision_check");
    const auto image_set = distinct_sorted(images);
    const bool collided = image_set.size() < images.size();
    coll.sub_accept = !collided;
    tb.end();
    if (collided) return tb.finish(Decision::reject, 0);

    auto& est = tb.begin("mass_estimate");
    const double delta = epsilon * epsilon / 320.0;
    const double p_prime = qestimate(f, image_set, delta, cfg, rng);
    const double target = static_cast<double>(t) / static_cast<double>(m);
    const double threshold = 32.0 * delta * target;
    const bool within = std::abs(p_prime - target) <= threshold;
    est.notes.emplace_back("delta", delta);
    est.notes.emplace_back("p_prime", p_prime);
    est.notes.emplace_back("target", target);
    est.notes.emplace_back("threshold", threshold);
    est.sub_accept = within;
    tb.end();

    return tb.finish(within ? Decision::accept : Decision::reject, 0);
}

int amplification_rounds(std::int64_t m, const TesterConfig& cfg) {
    const double loglog = std::log2(std::log2(static_cast<double>(m)));
    int r = static_cast<int>(std::ceil(cfg.amp_a * loglog)) + cfg.amp_b;
    if (r < 1) r = 1;
    if (r % 2 == 0) ++r; // majority must be defined
    return r;
}

TestVerdict test_uniformity_amplified(OracleFunction& f, double epsilon, const TesterConfig& cfg,
                                      Rng& rng) {
    const int rounds = amplification_rounds(f.range_size(), cfg);
    TranscriptBuilder tb(f);
    int accepts = 0;
    for (int r = 0; r < rounds; ++r) {
        auto& step = tb.begin("repetition_" + std::to_string(r));
        const TestVerdict v = test_uniformity(f, epsilon, cfg, rng);
        const bool ok = v.decision == Decision::accept;
        accepts += ok ? 1 : 0;
        step.sub_accept = ok;
        tb.end();
    }
    const bool majority = 2 * accepts > rounds;
    return tb.finish(majority ? Decision::accept : Decision::reject, 0);
}

namespace {

// One round of the uniformity tester instantiated on the conditional
// distribution of f over one bucket. Domain points are rejection-sampled
// until t = ceil(|bucket|^(1/3)) distinct hits arrive; an exhausted budget
// accepts and leaves the bucket to the coarse check, which owns large mass
// gaps. The two counting estimates compare the unconditioned image-set mass
// against its share of the unconditioned bucket mass.
bool conditional_uniformity_once(OracleFunction& f, const std::vector<std::int64_t>& members,
                                 const std::vector<char>& in_bucket, std::int64_t k, double epsilon,
                                 const TesterConfig& cfg, Rng& rng) {
    const std::int64_t n = f.domain_size();
    const auto bucket_size = static_cast<std::int64_t>(members.size());
    const std::int64_t t = cbrt_ceil(bucket_size);
    const auto budget = static_cast<std::int64_t>(
        std::ceil(cfg.cond_budget_factor * static_cast<double>(t) * static_cast<double>(k) / epsilon));

    std::unordered_set<std::int64_t> domain_hits;
    std::vector<std::int64_t> images;
    for (std::int64_t d = 0; d < budget && static_cast<std::int64_t>(domain_hits.size()) < t; ++d) {
        const std::int64_t x = rng.uniform_int(0, n - 1);
        const std::int64_t v = f.eval(x);
        if (in_bucket[static_cast<std::size_t>(v)] && domain_hits.insert(x).second)
            images.push_back(v);
    }
    if (static_cast<std::int64_t>(domain_hits.size()) < t) return true;

    const auto image_set = distinct_sorted(images);
    if (image_set.size() < images.size()) return false; // collision inside the bucket

    const double delta = epsilon * epsilon / 320.0;
    const double delta_cond = delta * std::sqrt(epsilon / static_cast<double>(k));
    const double p1 = qestimate(f, image_set, delta_cond, cfg, rng);
    const double p2 = qestimate(f, members, delta_cond, cfg, rng);
    const double scale = static_cast<double>(t) / static_cast<double>(bucket_size);
    return std::abs(p1 - scale * p2) <= 32.0 * delta * scale * p2;
}

} // namespace

TestVerdict test_known_closeness(OracleFunction& f, const Distribution& g, double epsilon,
                                 const TesterConfig& cfg, Rng& rng) {
    if (!(epsilon > 0 && epsilon <= 1))
        throw std::invalid_argument("test_known_closeness: epsilon in (0,1]");
    if (g.m != f.range_size()) throw std::invalid_argument("test_known_closeness: range mismatch");
    f.require_power_of_two_domain();
    const std::int64_t m = f.range_size();

    TranscriptBuilder tb(f);
    if (m == 1) {
        // single-point range: every distribution is the same
        auto& s = tb.begin("degenerate_range");
        s.sub_accept = true;
        tb.end();
        return tb.finish(Decision::accept, 0);
    }

    auto& bstep = tb.begin("bucket_known");
    const BucketPartition part = bucket(g, epsilon / 4.0);
    const std::int64_t k = part.k;
    const Distribution coarse_g = coarsen(g, part);
    bstep.notes.emplace_back("k", static_cast<double>(k));
    tb.end();

    const double mass_threshold = epsilon / static_cast<double>(k);
    const int rounds = amplification_rounds(m, cfg);

    for (std::int64_t i = 1; i <= k; ++i) {
        const auto& members = part.buckets[static_cast<std::size_t>(i)];
        const double g_mass = coarse_g.w[static_cast<std::size_t>(i)];
        if (members.empty() || g_mass < mass_threshold) continue;

        std::vector<char> in_bucket(static_cast<std::size_t>(m), 0);
        for (auto j : members) in_bucket[static_cast<std::size_t>(j)] = 1;

        auto& step = tb.begin("conditional_uniformity_bucket_" + std::to_string(i));
        int accepts = 0;
        for (int r = 0; r < rounds; ++r)
            accepts += conditional_uniformity_once(f, members, in_bucket, k, epsilon, cfg, rng) ? 1 : 0;
        const bool majority = 2 * accepts > rounds;
        step.notes.emplace_back("g_mass", g_mass);
        step.notes.emplace_back("rounds", static_cast<double>(rounds));
        step.notes.emplace_back("accepts", static_cast<double>(accepts));
        step.sub_accept = majority;
        tb.end();
        if (!majority) return tb.finish(Decision::reject, 0);
    }

    auto& cstep = tb.begin("coarse_compare");
    double observed = 0;
    const bool coarse_ok = classical_coarse_l1_test(f, g, part, epsilon, cfg, rng, &observed);
    cstep.notes.emplace_back("observed_l1", observed);
    cstep.notes.emplace_back("threshold", epsilon / 8.0);
    cstep.sub_accept = coarse_ok;
    tb.end();

    return tb.finish(coarse_ok ? Decision::accept : Decision::reject, 0);
}

QueryCeiling uniformity_query_ceiling(std::int64_t m, double epsilon, const TesterConfig& cfg) {
    QueryCeiling c;
    c.classical = static_cast<std::uint64_t>(cbrt_ceil(m));
    const double delta = epsilon * epsilon / 320.0;
    c.quantum = 2 * static_cast<std::uint64_t>(qestimate_iterations(m, delta, cfg));
    return c;
}

QueryCeiling amplified_uniformity_query_ceiling(std::int64_t m, double epsilon,
                                                const TesterConfig& cfg) {
    const auto single = uniformity_query_ceiling(m, epsilon, cfg);
    const auto rounds = static_cast<std::uint64_t>(amplification_rounds(m, cfg));
    return QueryCeiling{single.classical * rounds, single.quantum * rounds};
}

double closeness_query_ceiling(std::int64_t m, double epsilon, const TesterConfig& cfg) {
    const double log2m = std::log2(static_cast<double>(m));
    return cfg.closeness_cap_c * std::cbrt(static_cast<double>(m)) * log2m * log2m *
           std::log2(log2m) / std::pow(epsilon, 5.0);
}

} // namespace qpt
