#ifndef EQDISC_EXPERIMENT_HPP
#define EQDISC_EXPERIMENT_HPP

#include "eqdisc/optimize.hpp"
#include "eqdisc/synthetic.hpp"

namespace eqdisc {

enum class SearchMode { Single, Multi };

std::string mode_name(SearchMode mode);

/// Repeated-run experiment description. Defaults mirror the comparison
/// protocol: population 8, 64 single-objective generations vs 8 MOEA/DD
/// iterations, 10 runs seeded base_seed + run index.
struct ExperimentConfig {
    std::string benchmark = "wave"; // wave | burgers | kdv
    bool run_single = true;
    bool run_multi = true;
    int runs = 10;
    std::uint64_t base_seed = 42;
    std::vector<std::uint64_t> seeds; // explicit override, length >= runs

    std::size_t nt = 101;
    std::size_t nx = 0; // 0 = benchmark default
    bool analytic = true;

    int population = 8;
    int iterations_single = 64;
    int iterations_multi = 8;
    double lambda = 0.05;
    OperatorConfig operators{};
    double theta = 1.0;
    double delta = 0.9;
    int neighborhood = 4;
    double parent_fraction = 0.4;

    std::string pool; // pool spec override; empty = benchmark pool
    std::string out_dir;

    void validate() const;
    std::vector<std::uint64_t> run_seeds() const;
    SearchConfig search_config(SearchMode mode, std::uint64_t seed) const;
};

/// Sets one key=value pair (config file syntax) on the config. Throws
/// ConfigError for unknown keys or unparseable values.
void apply_config_entry(ExperimentConfig& config, const std::string& key,
                        const std::string& value);

/// Plain key-value config file: `key = value` lines, '#' comments.
void load_config_file(ExperimentConfig& config, const std::filesystem::path& path);

struct RunRecord {
    std::uint64_t seed = 0;
    double best_q_op = 0.0;
    int complexity = 0;
    std::string canonical;
    bool recovered = false;
    long evaluations = 0;
    double wall_ms = 0.0;
};

struct ModeStats {
    std::vector<RunRecord> runs;
    double mu = 0.0;
    double sigma2 = 0.0;
    double recovery_rate = 0.0;
};

struct RunStats {
    ExperimentConfig config;
    std::string true_canonical;
    std::map<SearchMode, ModeStats> modes;
};

std::pair<double, double> mean_and_sample_variance(const std::vector<double>& values);

/// Executes the configured runs. The per-run scalar is the best
/// discrepancy for single-objective runs and the archive minimum for
/// MOEA/DD runs; recovery compares canonical forms with coefficients
/// rounded to 2 significant digits (any archive member counts for
/// MOEA/DD).
RunStats run_experiment(const ExperimentConfig& config);

/// stats.json (config echo, mu, sigma2, recovery rate, per-run rows),
/// runs.csv, boxplot.csv. Deterministic bytes for identical stats.
void emit_reports(const RunStats& stats, const std::filesystem::path& out_dir);

} // namespace eqdisc

#endif
