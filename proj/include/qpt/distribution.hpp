#pragma once
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qpt {

// Explicit probability vector over {0, ..., m-1}.
// Weights must be non-negative and sum to 1 within 1e-9.
struct Distribution {
    std::int64_t m = 0;
    std::vector<double> w;

    Distribution() = default;
    explicit Distribution(std::vector<double> weights); // validates

    static Distribution uniform(std::int64_t m);
    static Distribution point_mass(std::int64_t m, std::int64_t j);

    double mass(std::span<const std::int64_t> members) const;
};

constexpr double kWeightSumTolerance = 1e-9;

double l1_distance(const Distribution& p, const Distribution& q);
double linf_distance(const Distribution& p, const Distribution& q);

// Conditional distribution on `members`; requires p.mass(members) > 0.
// Indexed by position in `members`.
Distribution restrict_to(const Distribution& p, std::span<const std::int64_t> members);

void save_distribution_csv(const std::string& path, const Distribution& p);
Distribution load_distribution_csv(const std::string& path);

} // namespace qpt
