// Command-line front end: generates instances, runs the testers and
// baselines over seeded trial batches and writes CSV reports.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "qpt/experiments.hpp"

namespace {

// Option names double as the keys of the flat "key = value" config file.
// A config file, when given, forms the base; explicitly passed flags win.
void attach_options(CLI::App* cmd, qpt::ExperimentConfig& cfg, std::string& config_path) {
    cmd->add_option("--config", config_path, "flat key = value config file; flags override it");
    cmd->add_option("--n", cfg.n, "domain size");
    cmd->add_option("--m", cfg.m, "range size");
    cmd->add_option("--epsilon", cfg.epsilon, "distance parameter");
    cmd->add_option("--trials", cfg.trials, "trials per instance kind");
    cmd->add_option("--seed", cfg.seed, "master seed");
    cmd->add_option("--out", cfg.out, "CSV output path (default: stdout)");
    cmd->add_option("--c_qestimate", cfg.tester.c_qestimate, "counting iteration constant c");
    cmd->add_option("--ell", cfg.tester.ell, "counting confidence parameter");
    cmd->add_option("--amp_a", cfg.tester.amp_a, "amplification constant a");
    cmd->add_option("--amp_b", cfg.tester.amp_b, "amplification constant b");
    cmd->add_option("--cap_c", cfg.tester.closeness_cap_c, "closeness query-cap constant C");
    cmd->add_option("--cond_budget_factor", cfg.tester.cond_budget_factor,
                    "conditional sampling budget factor");
    cmd->add_option("--coarse_sample_factor", cfg.tester.coarse_sample_factor,
                    "coarse-test sample factor");
    cmd->add_option("--k_runs", cfg.periodicity.k_runs, "period-sampling rounds");
    cmd->add_option("--verify_trials", cfg.periodicity.verify_trials, "verification checks");
    cmd->add_option("--r", cfg.r, "period window upper end (distinguish)");
    cmd->add_option("--q_budget", cfg.q_budget, "classical probe budget (distinguish)");
    cmd->add_option("--n_samples", cfg.n_samples, "sample count (reconstruct)");
    cmd->add_option("--reps", cfg.reps, "repetitions (reconstruct)");
    cmd->add_flag("--timing", cfg.timing, "record wall clock per row (breaks reproducibility)");
}

qpt::ExperimentConfig merge_config(CLI::App* cmd, const qpt::ExperimentConfig& parsed,
                                   const std::string& config_path) {
    if (config_path.empty()) return parsed;
    qpt::ExperimentConfig base = qpt::parse_config_file(config_path);
    for (const auto* opt : cmd->get_options()) {
        if (opt->count() == 0) continue;
        const std::string name = opt->get_single_name();
        if (name == "config") continue;
        if (name == "timing") {
            base.timing = parsed.timing;
            continue;
        }
        qpt::apply_config_line(base, name, opt->results().front());
    }
    return base;
}

int run(const qpt::ExperimentConfig& cfg) {
    const std::string csv = qpt::run_experiment(cfg);
    if (cfg.out.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(cfg.out, std::ios::binary);
        if (!out) {
            std::cerr << "cannot open " << cfg.out << "\n";
            return 1;
        }
        out << csv;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum property-testing simulator"};
    app.require_subcommand(1);

    qpt::ExperimentConfig cfg;
    std::string config_path;

    struct Sub {
        const char* name;
        const char* desc;
        double default_epsilon;
        std::int64_t default_m; // 0 = same as n
    };
    const Sub subs[] = {
        {"uniformity", "tolerant uniformity tester on exact/perturbed/far instances", 0.5, 0},
        {"closeness", "known-distribution closeness tester", 0.19, 0},
        {"periodicity", "constant-query period tester", 0.1, std::int64_t{1} << 20},
        {"reconstruct", "sampling-based distribution reconstruction", 0.5, 0},
        {"distinguish", "classical budget-limited periodic-vs-random experiment", 0.1,
         std::int64_t{1} << 20},
    };

    std::vector<CLI::App*> cmds;
    for (const auto& s : subs) {
        auto* cmd = app.add_subcommand(s.name, s.desc);
        attach_options(cmd, cfg, config_path);
        cmds.push_back(cmd);
    }
    auto* self = app.add_subcommand("selftest", "run quick internal consistency checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (self->parsed()) return qpt::selftest(true) == 0 ? 0 : 2;
        for (std::size_t i = 0; i < cmds.size(); ++i) {
            if (!cmds[i]->parsed()) continue;
            // experiment-specific defaults for flags that were not given
            if (cmds[i]->count("--epsilon") == 0 && config_path.empty())
                cfg.epsilon = subs[i].default_epsilon;
            if (subs[i].default_m != 0 && cmds[i]->count("--m") == 0 && config_path.empty())
                cfg.m = std::max(cfg.n, subs[i].default_m);
            qpt::ExperimentConfig merged = merge_config(cmds[i], cfg, config_path);
            merged.experiment = subs[i].name;
            return run(merged);
        }
    } catch (const qpt::InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
