#include "qpt/statevector.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qpt {

namespace {
constexpr double kNormTolerance = 1e-9;
constexpr std::int64_t kParallelCutoff = 1 << 12;

std::int64_t ceil_log2(std::int64_t x) {
    std::int64_t b = 0;
    while ((std::int64_t{1} << b) < x) ++b;
    return b;
}
} // namespace

Statevector::Statevector(std::vector<cd> amplitudes) : a(std::move(amplitudes)) {
    if (!is_power_of_two(dim())) throw std::invalid_argument("Statevector: dim must be a power of 2");
    if (std::abs(norm_sq() - 1.0) > kNormTolerance)
        throw std::invalid_argument("Statevector: not normalized");
}

double Statevector::norm_sq() const {
    double s = 0;
    for (const auto& z : a) s += std::norm(z);
    return s;
}

Statevector Statevector::basis(std::int64_t dim, std::int64_t index) {
    if (index < 0 || index >= dim) throw std::invalid_argument("basis: index out of range");
    std::vector<cd> a(static_cast<std::size_t>(dim), cd{0, 0});
    a[static_cast<std::size_t>(index)] = cd{1, 0};
    return Statevector(std::move(a));
}

Statevector Statevector::uniform(std::int64_t dim) {
    const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
    return Statevector(std::vector<cd>(static_cast<std::size_t>(dim), cd{amp, 0}));
}

void qft_inplace(std::vector<cd>& a, bool inverse, Exec exec) {
    const auto n = static_cast<std::int64_t>(a.size());
    if (!is_power_of_two(n)) throw std::invalid_argument("qft: dim must be a power of 2");
    const bool par = exec == Exec::parallel && n >= kParallelCutoff;

    // bit reversal
    const std::int64_t bits = ceil_log2(n);
    if (par) {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) {
            std::int64_t j = 0;
            for (std::int64_t b = 0; b < bits; ++b) j |= ((i >> b) & 1) << (bits - 1 - b);
            if (i < j) std::swap(a[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(j)]);
        }
    } else {
        for (std::int64_t i = 0; i < n; ++i) {
            std::int64_t j = 0;
            for (std::int64_t b = 0; b < bits; ++b) j |= ((i >> b) & 1) << (bits - 1 - b);
            if (i < j) std::swap(a[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(j)]);
        }
    }

    // butterfly stages; forward transform uses e^{+2 pi i / len}
    const double sign = inverse ? -1.0 : 1.0;
    for (std::int64_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        const std::int64_t half = len >> 1;
        const std::int64_t blocks = n / len;
        if (par) {
#pragma omp parallel for schedule(static)
            for (std::int64_t blk = 0; blk < blocks; ++blk) {
                const std::int64_t base = blk * len;
                for (std::int64_t j = 0; j < half; ++j) {
                    const cd w = std::polar(1.0, ang * static_cast<double>(j));
                    const cd u = a[static_cast<std::size_t>(base + j)];
                    const cd v = a[static_cast<std::size_t>(base + j + half)] * w;
                    a[static_cast<std::size_t>(base + j)] = u + v;
                    a[static_cast<std::size_t>(base + j + half)] = u - v;
                }
            }
        } else {
            for (std::int64_t blk = 0; blk < blocks; ++blk) {
                const std::int64_t base = blk * len;
                for (std::int64_t j = 0; j < half; ++j) {
                    const cd w = std::polar(1.0, ang * static_cast<double>(j));
                    const cd u = a[static_cast<std::size_t>(base + j)];
                    const cd v = a[static_cast<std::size_t>(base + j + half)] * w;
                    a[static_cast<std::size_t>(base + j)] = u + v;
                    a[static_cast<std::size_t>(base + j + half)] = u - v;
                }
            }
        }
    }

    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    if (par) {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) a[static_cast<std::size_t>(i)] *= scale;
    } else {
        for (auto& z : a) z *= scale;
    }
}

Statevector qft(const Statevector& s, Exec exec) {
    auto a = s.a;
    qft_inplace(a, false, exec);
    Statevector out;
    out.a = std::move(a); // unitary: skip revalidation
    return out;
}

Statevector inverse_qft(const Statevector& s, Exec exec) {
    auto a = s.a;
    qft_inplace(a, true, exec);
    Statevector out;
    out.a = std::move(a);
    return out;
}

Statevector apply_oracle(OracleFunction& f, const Statevector& s) {
    f.require_power_of_two_domain();
    const std::int64_t n = f.domain_size();
    const std::int64_t value_bits = ceil_log2(f.range_size());
    const std::int64_t reg = std::int64_t{1} << value_bits;
    if (s.dim() != n * reg) throw std::invalid_argument("apply_oracle: dimension mismatch");

    f.charge_quantum(1);
    std::vector<cd> out(s.a.size());
    for (std::int64_t x = 0; x < n; ++x) {
        const auto fx = static_cast<std::int64_t>(f.table()[static_cast<std::size_t>(x)]); // 0-based enc
        for (std::int64_t b = 0; b < reg; ++b)
            out[static_cast<std::size_t>(x * reg + (b ^ fx))] = s.a[static_cast<std::size_t>(x * reg + b)];
    }
    Statevector r;
    r.a = std::move(out);
    return r;
}

Statevector membership_oracle(OracleFunction& f, const std::vector<std::int64_t>& value_set,
                              const Statevector& s) {
    f.require_power_of_two_domain();
    const std::int64_t n = f.domain_size();
    if (s.dim() != 2 * n) throw std::invalid_argument("membership_oracle: dimension mismatch");

    std::vector<char> in_set(static_cast<std::size_t>(f.range_size()), 0);
    for (auto v : value_set) {
        if (v < 0 || v >= f.range_size()) throw std::invalid_argument("membership_oracle: value out of range");
        in_set[static_cast<std::size_t>(v)] = 1;
    }

    f.charge_quantum(2); // compute + uncompute
    auto out = s.a;
    for (std::int64_t x = 0; x < n; ++x)
        if (in_set[f.table()[static_cast<std::size_t>(x)]])
            std::swap(out[static_cast<std::size_t>(2 * x)], out[static_cast<std::size_t>(2 * x + 1)]);
    Statevector r;
    r.a = std::move(out);
    return r;
}

} // namespace qpt
