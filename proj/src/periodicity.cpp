#include "qpt/periodicity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace qpt {

namespace {
constexpr double kPi = std::numbers::pi;
} // namespace

std::int64_t gcd_i64(std::int64_t a, std::int64_t b) {
    while (b != 0) {
        const std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a < 0 ? -a : a;
}

bool is_1_1_periodic(const OracleFunction& f, std::int64_t p) {
    const std::int64_t n = f.domain_size();
    if (p < 1 || p > n) throw std::invalid_argument("is_1_1_periodic: need 1 <= p <= n");
    // injective on the first period
    std::vector<std::int64_t> first(static_cast<std::size_t>(p));
    for (std::int64_t i = 0; i < p; ++i) first[static_cast<std::size_t>(i)] = f.peek(i);
    auto sorted = first;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    // repeats with period p
    for (std::int64_t i = p; i < n; ++i)
        if (f.peek(i) != first[static_cast<std::size_t>(i % p)]) return false;
    return true;
}

std::vector<double> collapsed_outcome_distribution(std::int64_t n,
                                                   const std::vector<std::int64_t>& support,
                                                   Exec exec) {
    if (!is_power_of_two(n)) throw std::invalid_argument("collapsed_outcome_distribution: n must be a power of 2");
    if (support.empty()) throw std::invalid_argument("collapsed_outcome_distribution: empty support");
    const auto K = static_cast<std::int64_t>(support.size());
    std::vector<double> prob(static_cast<std::size_t>(n));

    // arithmetic progression? (always the case for 1-1-periodic functions)
    bool progression = true;
    const std::int64_t step = K > 1 ? support[1] - support[0] : 1;
    for (std::size_t i = 1; i + 1 < support.size(); ++i)
        if (support[i + 1] - support[i] != step) {
            progression = false;
            break;
        }

    if (progression) {
        // |sum_j e^{2 pi i y * step * j / n}|^2 / (n K), the squared
        // geometric sum; exactly K/n on multiples of n/gcd(step,n) and the
        // partial last period is handled by K itself.
        const auto body = [&](std::int64_t y) {
            const double phase = static_cast<double>((y * step) % n) / static_cast<double>(n);
            const double s = std::sin(kPi * phase);
            double mag2;
            if (s == 0.0) {
                mag2 = static_cast<double>(K) * static_cast<double>(K);
            } else {
                const double top = std::sin(kPi * static_cast<double>(K) * phase);
                mag2 = (top * top) / (s * s);
            }
            prob[static_cast<std::size_t>(y)] =
                mag2 / (static_cast<double>(n) * static_cast<double>(K));
        };
        if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
            for (std::int64_t y = 0; y < n; ++y) body(y);
        } else {
            for (std::int64_t y = 0; y < n; ++y) body(y);
        }
        return prob;
    }

    // general support: transform the normalized indicator exactly
    std::vector<cd> amps(static_cast<std::size_t>(n), cd{0, 0});
    const double amp = 1.0 / std::sqrt(static_cast<double>(K));
    for (auto x : support) amps[static_cast<std::size_t>(x)] = cd{amp, 0};
    qft_inplace(amps, false, exec);
    for (std::int64_t y = 0; y < n; ++y) prob[static_cast<std::size_t>(y)] = std::norm(amps[static_cast<std::size_t>(y)]);
    return prob;
}

std::int64_t shor_sample(OracleFunction& f, Rng& rng, Exec exec) {
    f.require_power_of_two_domain();
    const std::int64_t n = f.domain_size();
    f.charge_quantum(1);

    // measuring the value register = drawing a uniform domain point and
    // collapsing onto the preimage of its value
    const std::int64_t x0 = rng.uniform_int(0, n - 1);
    const std::int64_t v = f.peek(x0);
    std::vector<std::int64_t> support;
    for (std::int64_t x = 0; x < n; ++x)
        if (f.peek(x) == v) support.push_back(x);

    if (support.size() == 1) return rng.uniform_int(0, n - 1); // flat transform of a single point

    const auto prob = collapsed_outcome_distribution(n, support, exec);
    double u = rng.uniform01();
    for (std::int64_t y = 0; y < n; ++y) {
        u -= prob[static_cast<std::size_t>(y)];
        if (u < 0) return y;
    }
    return n - 1;
}

std::optional<Fraction> cfe_recover(std::int64_t y, std::int64_t n, std::int64_t denom_bound) {
    if (n < 1 || y < 0 || y >= n) throw std::invalid_argument("cfe_recover: need 0 <= y < n");
    if (denom_bound < 1) throw std::invalid_argument("cfe_recover: denom_bound must be positive");
    const double target = static_cast<double>(y) / static_cast<double>(n);
    const double tol = 2.0 / static_cast<double>(n);

    // convergents h_i/k_i of y/n via the Euclidean quotients
    std::int64_t a = y, b = n;
    std::int64_t h_prev = 1, h = 0; // h_{-1}, h_0 for value 0 = floor(y/n)
    std::int64_t k_prev = 0, k = 1;
    while (true) {
        if (k <= denom_bound) {
            const double err = std::abs(target - static_cast<double>(h) / static_cast<double>(k));
            if (err < tol) {
                const std::int64_t g = h == 0 ? k : gcd_i64(h, k);
                return Fraction{h / g, k / g}; // convergents are already reduced; 0 maps to 0/1
            }
        } else {
            break;
        }
        if (a == 0) break; // expansion exhausted
        const std::int64_t q = b / a;
        const std::int64_t r = b % a;
        const std::int64_t h_next = q * h + h_prev;
        const std::int64_t k_next = q * k + k_prev;
        h_prev = h;
        k_prev = k;
        h = h_next;
        k = k_next;
        b = a;
        a = r;
    }
    return std::nullopt;
}

std::optional<std::int64_t> combine_denominators(const std::vector<std::int64_t>& dens,
                                                 std::int64_t cap) {
    if (dens.empty()) return std::nullopt;
    std::int64_t l = 1;
    for (auto d : dens) {
        l = l / gcd_i64(l, d) * d;
        if (l > cap) return std::nullopt;
    }
    return l;
}

std::optional<PeriodCandidate> find_period(OracleFunction& f, int k_runs, Rng& rng) {
    if (k_runs < 1) throw std::invalid_argument("find_period: k_runs must be positive");
    f.require_power_of_two_domain();
    const std::int64_t n = f.domain_size();
    const auto bound = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)) / 2.0);

    PeriodCandidate cand;
    cand.runs = k_runs;
    std::vector<std::int64_t> dens;
    for (int run = 0; run < k_runs; ++run) {
        const std::int64_t y = shor_sample(f, rng);
        const auto frac = cfe_recover(y, n, bound);
        if (!frac) continue;
        cand.fractions.push_back(*frac);
        dens.push_back(frac->den);
    }
    const auto lcm = combine_denominators(dens, bound);
    if (!lcm) return std::nullopt;
    cand.p = *lcm;
    return cand;
}

bool verify_period(OracleFunction& f, std::int64_t p, int trials, Rng& rng) {
    const std::int64_t n = f.domain_size();
    if (p < 1 || p > n / 2) throw std::invalid_argument("verify_period: need 1 <= p <= n/2");
    if (trials < 1) throw std::invalid_argument("verify_period: trials must be positive");

    const int repetition_checks = trials / 2;
    const int injectivity_checks = trials - repetition_checks;

    for (int c = 0; c < repetition_checks; ++c) {
        const std::int64_t i = rng.uniform_int(0, p - 1);
        const std::int64_t k_max = (n - 1 - i) / p; // largest k with i + kp < n
        const std::int64_t k = rng.uniform_int(1, std::max<std::int64_t>(1, k_max));
        if (f.eval(i) != f.eval(i + k * p)) return false;
    }
    if (p >= 2) {
        for (int c = 0; c < injectivity_checks; ++c) {
            const std::int64_t i = rng.uniform_int(0, p - 1);
            std::int64_t j = rng.uniform_int(0, p - 2);
            if (j >= i) ++j;
            if (f.eval(i) == f.eval(j)) return false;
        }
    }
    return true;
}

std::int64_t period_range_lo(std::int64_t n) {
    const double lo = std::sqrt(static_cast<double>(n)) / 4.0;
    auto v = static_cast<std::int64_t>(std::ceil(lo));
    while (static_cast<double>(v - 1) >= lo) --v; // guard against sqrt rounding
    return v;
}

std::int64_t period_range_hi(std::int64_t n) {
    const double hi = std::sqrt(static_cast<double>(n)) / 2.0;
    auto v = static_cast<std::int64_t>(std::floor(hi));
    while (static_cast<double>(v + 1) <= hi) ++v;
    return v;
}

QueryCeiling periodicity_query_ceiling(const PeriodicityConfig& cfg) {
    QueryCeiling c;
    c.quantum = static_cast<std::uint64_t>(cfg.k_runs);
    c.classical = 2ULL * static_cast<std::uint64_t>(cfg.verify_trials);
    return c;
}

TestVerdict test_periodicity(OracleFunction& f, double epsilon, const PeriodicityConfig& cfg,
                             Rng& rng) {
    if (!(epsilon > 0 && epsilon < 1)) throw std::invalid_argument("test_periodicity: epsilon in (0,1)");
    f.require_power_of_two_domain();
    const std::int64_t n = f.domain_size();
    const std::int64_t lo = period_range_lo(n), hi = period_range_hi(n);

    TranscriptBuilder tb(f);
    auto& sampling = tb.begin("period_sampling");
    const auto cand = find_period(f, cfg.k_runs, rng);
    sampling.notes.emplace_back("rounds", static_cast<double>(cfg.k_runs));
    sampling.notes.emplace_back("recovered_fractions",
                                cand ? static_cast<double>(cand->fractions.size()) : 0.0);
    sampling.notes.emplace_back("candidate", cand ? static_cast<double>(cand->p) : -1.0);
    tb.end();

    auto& gate = tb.begin("range_gate");
    const bool in_range = cand && cand->p >= lo && cand->p <= hi;
    gate.notes.emplace_back("range_lo", static_cast<double>(lo));
    gate.notes.emplace_back("range_hi", static_cast<double>(hi));
    gate.sub_accept = in_range;
    tb.end();
    if (!in_range) return tb.finish(Decision::reject, 0);

    auto& verify = tb.begin("verification");
    const bool ok = verify_period(f, cand->p, cfg.verify_trials, rng);
    verify.notes.emplace_back("epsilon", epsilon);
    verify.sub_accept = ok;
    tb.end();
    return tb.finish(ok ? Decision::accept : Decision::reject, 0);
}

} // namespace qpt
