#include "qpt/phase_estimation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qpt {

namespace {
constexpr double kPi = std::numbers::pi;

double wrap_half(double d) {
    // nearest-integer remainder, in [-1/2, 1/2]
    return d - std::nearbyint(d);
}
} // namespace

std::int64_t phase_register_size(std::int64_t q) {
    if (q < 1) throw std::invalid_argument("phase_register_size: q must be positive");
    std::int64_t M = 1;
    while (M < q) M <<= 1;
    return M;
}

double phase_kernel(std::int64_t M, double d) {
    const double dw = wrap_half(d);
    if (dw == 0.0) return 1.0;
    const double num = std::sin(kPi * static_cast<double>(M) * dw);
    const double den = static_cast<double>(M) * std::sin(kPi * dw);
    const double r = num / den;
    return r * r;
}

AmplitudeOutcome::AmplitudeOutcome(std::int64_t n, std::int64_t t, std::int64_t q)
    : n_(n), t_(t), M_(phase_register_size(q)) {
    if (n < 1) throw std::invalid_argument("AmplitudeOutcome: n must be positive");
    if (t < 0 || t > n) throw std::invalid_argument("AmplitudeOutcome: need 0 <= t <= n");
    double a = static_cast<double>(t) / static_cast<double>(n);
    a = std::min(1.0, std::max(0.0, a));
    omega_ = std::asin(std::sqrt(a)) / kPi; // in [0, 1/2]
}

double AmplitudeOutcome::prob(std::int64_t y) const {
    const double pos = phase_kernel(M_, static_cast<double>(y) / static_cast<double>(M_) - omega_);
    const double neg = phase_kernel(M_, static_cast<double>(y) / static_cast<double>(M_) + omega_);
    return 0.5 * (pos + neg);
}

double AmplitudeOutcome::estimate_from(std::int64_t y) const {
    const double s = std::sin(kPi * static_cast<double>(y) / static_cast<double>(M_));
    return static_cast<double>(n_) * s * s;
}

std::int64_t AmplitudeOutcome::sample_branch(double phase, Rng& rng) const {
    // Inverse-CDF walk over the kernel centred at this branch's phase,
    // visiting outcomes by distance from the peak. The kernel sums to 1
    // exactly, so the walk terminates; the final fallback only mops up
    // floating-point residue.
    const std::int64_t peak =
        ((static_cast<std::int64_t>(std::llround(phase * static_cast<double>(M_))) % M_) + M_) % M_;
    double u = rng.uniform01();
    const auto kern = [&](std::int64_t y) {
        return phase_kernel(M_, static_cast<double>(y) / static_cast<double>(M_) - phase);
    };
    u -= kern(peak);
    if (u < 0) return peak;
    for (std::int64_t d = 1; d <= M_ / 2; ++d) {
        std::int64_t y = (peak + d) % M_;
        u -= kern(y);
        if (u < 0) return y;
        if (d * 2 == M_) break; // antipode already visited
        y = (peak - d + M_) % M_;
        u -= kern(y);
        if (u < 0) return y;
    }
    return peak;
}

std::int64_t AmplitudeOutcome::sample(Rng& rng) const {
    const double phase = rng.uniform_int(0, 1) == 0 ? omega_ : -omega_;
    return sample_branch(phase, rng);
}

std::vector<double> AmplitudeOutcome::materialize(Exec exec) const {
    std::vector<double> p(static_cast<std::size_t>(M_));
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t y = 0; y < M_; ++y) p[static_cast<std::size_t>(y)] = prob(y);
    } else {
        for (std::int64_t y = 0; y < M_; ++y) p[static_cast<std::size_t>(y)] = prob(y);
    }
    return p;
}

CountEstimate amplitude_estimate(std::int64_t n, std::int64_t t, std::int64_t q, double ell, Rng& rng) {
    if (q < 1) throw std::invalid_argument("amplitude_estimate: q must be positive");
    if (!(ell > 1)) throw std::invalid_argument("amplitude_estimate: ell must exceed 1");
    const AmplitudeOutcome law(n, t, q);
    const std::int64_t y = law.sample(rng);
    return CountEstimate{law.estimate_from(y), q, ell};
}

double count_error_bound(std::int64_t n, std::int64_t t, std::int64_t q, double ell) {
    const double nn = static_cast<double>(n), tt = static_cast<double>(t), qq = static_cast<double>(q);
    return 2.0 * kPi * ell * std::sqrt(tt * (nn - tt)) / qq + kPi * kPi * ell * ell * nn / (qq * qq);
}

} // namespace qpt
