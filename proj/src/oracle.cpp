#include "qpt/oracle.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qpt {

bool is_power_of_two(std::int64_t x) { return x > 0 && (x & (x - 1)) == 0; }

OracleFunction::OracleFunction(std::int64_t m, std::vector<std::uint32_t> values)
    : m_(m), values_(std::move(values)) {
    if (m_ < 1) throw std::invalid_argument("OracleFunction: m must be positive");
    if (values_.empty()) throw std::invalid_argument("OracleFunction: empty table");
    for (auto v : values_)
        if (v >= static_cast<std::uint32_t>(m_))
            throw std::invalid_argument("OracleFunction: table entry out of range");
}

std::vector<std::int64_t> OracleFunction::preimage_histogram() const {
    std::vector<std::int64_t> h(static_cast<std::size_t>(m_), 0);
    for (auto v : values_) ++h[v];
    return h;
}

std::int64_t OracleFunction::preimage_count(std::span<const std::int64_t> value_set) const {
    const auto h = preimage_histogram();
    std::int64_t t = 0;
    for (auto v : value_set) t += h[static_cast<std::size_t>(v)];
    return t;
}

bool OracleFunction::domain_is_power_of_two() const { return is_power_of_two(domain_size()); }

void OracleFunction::require_power_of_two_domain() const {
    if (!domain_is_power_of_two())
        throw std::invalid_argument("quantum operation requires a power-of-two domain, n = " +
                                    std::to_string(domain_size()));
}

Distribution distribution_of(const OracleFunction& f) {
    const auto counts = f.preimage_histogram(); // exact integer counting
    const double n = static_cast<double>(f.domain_size());
    std::vector<double> w(counts.size());
    for (std::size_t j = 0; j < counts.size(); ++j) w[j] = static_cast<double>(counts[j]) / n;
    return Distribution(std::move(w));
}

void save_oracle_text(const std::string& path, const OracleFunction& f) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << f.domain_size() << ' ' << f.range_size() << '\n';
    for (auto v : f.table()) out << (v + 1) << '\n';
}

OracleFunction load_oracle_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::int64_t n = 0, m = 0;
    if (!(in >> n >> m) || n < 1 || m < 1) throw std::runtime_error("bad header in " + path);
    std::vector<std::uint32_t> values(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        std::int64_t v = 0;
        if (!(in >> v) || v < 1 || v > m)
            throw std::runtime_error("bad value at line " + std::to_string(i + 2) + " in " + path);
        values[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(v - 1);
    }
    return OracleFunction(m, std::move(values));
}

namespace {
void write_u32(std::ofstream& out, std::uint32_t x) {
    unsigned char b[4] = {static_cast<unsigned char>(x), static_cast<unsigned char>(x >> 8),
                          static_cast<unsigned char>(x >> 16), static_cast<unsigned char>(x >> 24)};
    out.write(reinterpret_cast<const char*>(b), 4);
}
std::uint32_t read_u32(std::ifstream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (!in) throw std::runtime_error("truncated binary table");
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}
} // namespace

void save_oracle_binary(const std::string& path, const OracleFunction& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    write_u32(out, static_cast<std::uint32_t>(f.domain_size()));
    write_u32(out, static_cast<std::uint32_t>(f.range_size()));
    for (auto v : f.table()) write_u32(out, v + 1);
}

OracleFunction load_oracle_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    const std::int64_t n = read_u32(in);
    const std::int64_t m = read_u32(in);
    if (n < 1 || m < 1) throw std::runtime_error("bad header in " + path);
    std::vector<std::uint32_t> values(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        const std::uint32_t v = read_u32(in);
        if (v < 1 || v > static_cast<std::uint32_t>(m))
            throw std::runtime_error("bad value in " + path);
        values[static_cast<std::size_t>(i)] = v - 1;
    }
    return OracleFunction(m, std::move(values));
}

} // namespace qpt
