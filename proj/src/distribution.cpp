#include "qpt/distribution.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qpt {

Distribution::Distribution(std::vector<double> weights)
    : m(static_cast<std::int64_t>(weights.size())), w(std::move(weights)) {
    if (m < 1) throw std::invalid_argument("Distribution: m must be positive");
    double sum = 0;
    for (double x : w) {
        if (!(x >= 0)) throw std::invalid_argument("Distribution: negative weight");
        sum += x;
    }
    if (std::abs(sum - 1.0) > kWeightSumTolerance)
        throw std::invalid_argument("Distribution: weights sum to " + std::to_string(sum));
}

Distribution Distribution::uniform(std::int64_t m) {
    if (m < 1) throw std::invalid_argument("uniform: m must be positive");
    return Distribution(std::vector<double>(static_cast<std::size_t>(m), 1.0 / static_cast<double>(m)));
}

Distribution Distribution::point_mass(std::int64_t m, std::int64_t j) {
    if (j < 0 || j >= m) throw std::invalid_argument("point_mass: index out of range");
    std::vector<double> w(static_cast<std::size_t>(m), 0.0);
    w[static_cast<std::size_t>(j)] = 1.0;
    return Distribution(std::move(w));
}

double Distribution::mass(std::span<const std::int64_t> members) const {
    double s = 0;
    for (auto j : members) s += w[static_cast<std::size_t>(j)];
    return s;
}

double l1_distance(const Distribution& p, const Distribution& q) {
    if (p.m != q.m) throw std::invalid_argument("l1_distance: size mismatch");
    double s = 0;
    for (std::int64_t j = 0; j < p.m; ++j)
        s += std::abs(p.w[static_cast<std::size_t>(j)] - q.w[static_cast<std::size_t>(j)]);
    return s;
}

double linf_distance(const Distribution& p, const Distribution& q) {
    if (p.m != q.m) throw std::invalid_argument("linf_distance: size mismatch");
    double best = 0;
    for (std::int64_t j = 0; j < p.m; ++j)
        best = std::max(best, std::abs(p.w[static_cast<std::size_t>(j)] - q.w[static_cast<std::size_t>(j)]));
    return best;
}

Distribution restrict_to(const Distribution& p, std::span<const std::int64_t> members) {
    const double total = p.mass(members);
    if (!(total > 0)) throw std::invalid_argument("restrict_to: set has zero mass");
    std::vector<double> w;
    w.reserve(members.size());
    for (auto j : members) w.push_back(p.w[static_cast<std::size_t>(j)] / total);
    // renormalization drift can leave the sum a hair off 1; fold it into the
    // largest entry so the result always validates
    double sum = 0;
    for (double x : w) sum += x;
    if (!w.empty()) {
        std::size_t arg = 0;
        for (std::size_t i = 1; i < w.size(); ++i)
            if (w[i] > w[arg]) arg = i;
        w[arg] += 1.0 - sum;
    }
    return Distribution(std::move(w));
}

void save_distribution_csv(const std::string& path, const Distribution& p) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "index,weight\n";
    char buf[64];
    for (std::int64_t j = 0; j < p.m; ++j) {
        std::snprintf(buf, sizeof buf, "%.17g", p.w[static_cast<std::size_t>(j)]);
        out << (j + 1) << ',' << buf << '\n';
    }
}

Distribution load_distribution_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("index,weight", 0) != 0)
        throw std::runtime_error("bad distribution csv header in " + path);
    std::vector<double> w;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw std::runtime_error("bad row in " + path);
        const auto index = std::stoll(line.substr(0, comma));
        if (index != static_cast<std::int64_t>(w.size()) + 1)
            throw std::runtime_error("non-contiguous index in " + path);
        w.push_back(std::stod(line.substr(comma + 1)));
    }
    return Distribution(std::move(w));
}

} // namespace qpt
