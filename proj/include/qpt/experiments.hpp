#pragma once
#include <cstdint>
#include <string>

#include "qpt/periodicity.hpp"
#include "qpt/testers.hpp"

namespace qpt {

// One experiment invocation. Mirrors the CLI flags and the flat key-value
// config file format (one "key = value" per line, '#' comments).
struct ExperimentConfig {
    std::string experiment;    // uniformity | closeness | periodicity | reconstruct | distinguish
    std::int64_t n = 4096;
    std::int64_t m = 4096;
    double epsilon = 0.5;
    int trials = 100;
    std::uint64_t seed = 1;
    std::string out;           // CSV path; empty = stdout

    TesterConfig tester;
    PeriodicityConfig periodicity;

    // periodicity / distinguish parameters
    std::int64_t r = 32;
    std::int64_t q_budget = 64;

    // reconstruct parameters
    std::int64_t n_samples = 65536;
    int reps = 500;

    bool timing = false; // emit wall-clock per row; off by default so CSVs are reproducible

    void validate() const; // throws on violations (power-of-two n for quantum runs, trials >= 1)
};

ExperimentConfig parse_config_file(const std::string& path);
void apply_config_line(ExperimentConfig& cfg, const std::string& key, const std::string& value);

// Thrown when a mid-run invariant is violated (query ceiling exceeded,
// transcript totals inconsistent, generator white-box check failed).
// The CLI maps it to exit code 2.
struct InvariantViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Runs the configured experiment and returns the full CSV report
// (header, one row per trial, flagged summary rows). Deterministic for a
// fixed config unless timing is enabled. Trials run in parallel with
// per-trial seeds split_seed(seed, trial).
std::string run_experiment(const ExperimentConfig& cfg);

// Best-effort classical distinguisher between the periodic and random
// instance families with a fixed query budget; reports empirical success.
std::string distinguish_experiment(const ExperimentConfig& cfg);

// Fast internal consistency checks; returns the number of failures.
int selftest(bool verbose);

} // namespace qpt
