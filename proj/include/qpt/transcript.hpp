#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qpt/oracle.hpp"

namespace qpt {

enum class Decision { accept, reject };

inline const char* to_string(Decision d) { return d == Decision::accept ? "ACCEPT" : "REJECT"; }

struct TranscriptStep {
    std::string label;
    std::uint64_t classical = 0; // queries spent in this step
    std::uint64_t quantum = 0;
    std::vector<std::pair<std::string, double>> notes; // named intermediate estimates
    std::optional<bool> sub_accept;                    // per-step sub-verdict where applicable
};

struct TestVerdict {
    Decision decision = Decision::reject;
    std::vector<TranscriptStep> steps;
    std::uint64_t classical_used = 0; // totals; equal the oracle counter deltas
    std::uint64_t quantum_used = 0;
    std::uint64_t seed = 0; // rng seed surfaced for reproducibility

    std::size_t count_sub_verdicts() const {
        std::size_t c = 0;
        for (const auto& s : steps)
            if (s.sub_accept.has_value()) ++c;
        return c;
    }
};

struct QueryCeiling {
    std::uint64_t classical = 0;
    std::uint64_t quantum = 0;
    std::uint64_t total() const { return classical + quantum; }
};

// Helper that snapshots oracle counters around steps so per-step and total
// query usage in the transcript always reconcile.
class TranscriptBuilder {
public:
    explicit TranscriptBuilder(const OracleFunction& f)
        : f_(&f), start_(f.counters()), last_(f.counters()) {}

    TranscriptStep& begin(std::string label) {
        steps_.push_back(TranscriptStep{std::move(label), 0, 0, {}, std::nullopt});
        last_ = f_->counters();
        return steps_.back();
    }

    void end() {
        const auto& now = f_->counters();
        steps_.back().classical = now.classical - last_.classical;
        steps_.back().quantum = now.quantum - last_.quantum;
    }

    TestVerdict finish(Decision d, std::uint64_t seed) {
        TestVerdict v;
        v.decision = d;
        v.steps = std::move(steps_);
        const auto& now = f_->counters();
        v.classical_used = now.classical - start_.classical;
        v.quantum_used = now.quantum - start_.quantum;
        v.seed = seed;
        return v;
    }

private:
    const OracleFunction* f_;
    QueryCounters start_, last_;
    std::vector<TranscriptStep> steps_;
};

} // namespace qpt
