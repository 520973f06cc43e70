#pragma once
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qpt/distribution.hpp"

namespace qpt {

struct QueryCounters {
    std::uint64_t classical = 0;
    std::uint64_t quantum = 0;
};

// A total function f : [n] -> [m], the sole access path to an unknown
// distribution. Values are stored 0-based; the on-disk formats are 1-based.
//
// Query accounting: eval() charges one classical query; quantum simulation
// paths charge via charge_quantum() (one application of the plain function
// oracle costs 1, one application of a set-membership oracle costs 2).
// peek()/table()/preimage_histogram() are white-box accessors for
// generators, simulator internals and verification; they never charge.
class OracleFunction {
public:
    OracleFunction(std::int64_t m, std::vector<std::uint32_t> values);

    std::int64_t domain_size() const { return static_cast<std::int64_t>(values_.size()); }
    std::int64_t range_size() const { return m_; }

    std::int64_t eval(std::int64_t x) {
        ++counters_.classical;
        return static_cast<std::int64_t>(values_[static_cast<std::size_t>(x)]);
    }

    void charge_quantum(std::uint64_t raw_queries) { counters_.quantum += raw_queries; }
    const QueryCounters& counters() const { return counters_; }

    // White-box access (no charge).
    std::int64_t peek(std::int64_t x) const { return static_cast<std::int64_t>(values_[static_cast<std::size_t>(x)]); }
    std::span<const std::uint32_t> table() const { return values_; }
    std::vector<std::int64_t> preimage_histogram() const;
    std::int64_t preimage_count(std::span<const std::int64_t> value_set) const;

    bool domain_is_power_of_two() const;
    void require_power_of_two_domain() const; // throws if not

private:
    std::int64_t m_;
    std::vector<std::uint32_t> values_;
    QueryCounters counters_;
};

// White-box: the distribution induced by f under a uniform domain point,
// computed by exact integer counting. Never used inside a tester's
// decision path.
Distribution distribution_of(const OracleFunction& f);

bool is_power_of_two(std::int64_t x);

// Function-table file formats. Text: header line "n m", then n lines of
// f(i) in [1..m]. Binary: little-endian u32 n, u32 m, then n u32 values.
void save_oracle_text(const std::string& path, const OracleFunction& f);
OracleFunction load_oracle_text(const std::string& path);
void save_oracle_binary(const std::string& path, const OracleFunction& f);
OracleFunction load_oracle_binary(const std::string& path);

} // namespace qpt
