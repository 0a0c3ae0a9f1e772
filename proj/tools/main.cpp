// Command line front end: generate benchmark datasets, run single- and
// multi-objective equation discovery, repeat seeded experiments with
// statistics, and cross-check searches against the exhaustive oracle.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

#include "eqdisc/experiment.hpp"
#include "eqdisc/oracle.hpp"

namespace {

using namespace eqdisc;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

TokenPool default_file_pool() {
    return parse_pool("u,u_t,u_x,u_xx,u_tt,max_factors=2,max_terms=5");
}

int cmd_generate(const std::string& name, std::size_t nt, std::size_t nx,
                 const std::string& out_dir) {
    BenchmarkCase bench = make_benchmark(name, nt, nx);
    std::filesystem::create_directories(out_dir);
    const auto csv_path = std::filesystem::path(out_dir) / (bench.name + ".csv");
    save_field(bench.field, csv_path);

    nlohmann::ordered_json meta;
    meta["case"] = bench.name;
    meta["true_equation"] = bench.true_canonical;
    meta["pool"] = format_pool(bench.pool);
    meta["nt"] = bench.grid->nt();
    meta["nx"] = bench.grid->nx();
    meta["dt"] = bench.grid->dt();
    meta["dx"] = bench.grid->dx();
    const auto meta_path = std::filesystem::path(out_dir) / (bench.name + ".meta.json");
    std::ofstream out(meta_path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write " + meta_path.string());
    }
    out << meta.dump(2) << '\n';
    std::cout << "wrote " << csv_path.string() << " and " << meta_path.string() << "\n";
    return kExitOk;
}

int cmd_discover(const std::string& data_path, const std::string& mode, std::uint64_t seed,
                 double lambda, int population, int iterations, const std::string& pool_spec,
                 const std::string& trace_path) {
    if (!std::filesystem::exists(data_path)) {
        throw ConfigError("data file not found: " + data_path);
    }
    const Field field = load_field(data_path);
    const TokenPool pool = pool_spec.empty() ? default_file_pool() : parse_pool(pool_spec);
    const DerivativeTable table = build_table(field, pool.required_specs());

    SearchConfig config;
    config.population = population;
    config.iterations = iterations > 0 ? iterations : (mode == "single" ? 64 : 8);
    config.lambda = lambda;
    config.seed = seed;

    std::vector<TraceRow> trace;
    if (mode == "single") {
        SingleObjectiveResult res = run_single_objective(table, pool, config);
        trace = std::move(res.trace);
        std::cout << "best: " << canonical_form(res.best.equation).text << "\n"
                  << "q_op: " << res.best.objectives.q_op << "\n"
                  << "complexity: " << res.best.objectives.complexity << "\n"
                  << "evaluations: " << res.evaluations << "\n";
    } else if (mode == "multi") {
        MoeaddResult res = run_moeadd(table, pool, config);
        trace = std::move(res.trace);
        std::cout << "archive (" << res.archive.size() << " equations):\n";
        for (const auto& ind : res.archive.individuals()) {
            std::cout << "  q_op=" << ind.objectives.q_op
                      << " C=" << ind.objectives.complexity << "  "
                      << canonical_form(ind.equation).text << "\n";
        }
        std::cout << "evaluations: " << res.evaluations << "\n";
    } else {
        throw ConfigError("mode must be single or multi (got '" + mode + "')");
    }
    if (!trace_path.empty()) {
        std::ofstream out(trace_path, std::ios::binary);
        if (!out) {
            throw DataError("cannot write " + trace_path);
        }
        out << trace_to_csv(trace);
    }
    return kExitOk;
}

int cmd_oracle(const std::string& data_path, const std::string& pool_spec, double lambda,
               std::size_t budget) {
    if (!std::filesystem::exists(data_path)) {
        throw ConfigError("data file not found: " + data_path);
    }
    const Field field = load_field(data_path);
    const TokenPool pool = pool_spec.empty() ? default_file_pool() : parse_pool(pool_spec);
    const DerivativeTable table = build_table(field, pool.required_specs());
    OracleResult res = brute_force_oracle(table, pool, lambda, budget);
    std::cout << "best: " << canonical_form(res.best.equation).text << "\n"
              << "q_op: " << res.best.objectives.q_op << "\n"
              << "complexity: " << res.best.objectives.complexity << "\n"
              << "enumerated: " << res.enumerated << "\n";
    return kExitOk;
}

int cmd_experiment(const ExperimentConfig& config) {
    RunStats stats = run_experiment(config);
    for (const auto& [mode, ms] : stats.modes) {
        std::cout << mode_name(mode) << ": mu=" << ms.mu << " sigma2=" << ms.sigma2
                  << " recovery_rate=" << ms.recovery_rate << "\n";
    }
    if (!config.out_dir.empty()) {
        std::cout << "reports written to " << config.out_dir << "\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Evolutionary discovery of governing PDEs from gridded scalar fields"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Write a benchmark dataset as CSV plus metadata");
    std::string gen_case = "wave";
    std::size_t gen_nt = 101, gen_nx = 0;
    std::string gen_out = ".";
    gen->add_option("--case", gen_case, "wave | burgers | kdv")->required();
    gen->add_option("--nt", gen_nt, "time points (default 101)");
    gen->add_option("--nx", gen_nx, "space points (default 101, kdv 128)");
    gen->add_option("--out", gen_out, "output directory")->required();

    // discover
    auto* dis = app.add_subcommand("discover", "Run one discovery on a field CSV");
    std::string dis_data, dis_mode = "single", dis_pool, dis_trace;
    std::uint64_t dis_seed = 0;
    double dis_lambda = 0.05;
    int dis_pop = 8, dis_iters = 0;
    dis->add_option("--data", dis_data, "field CSV path")->required();
    dis->add_option("--mode", dis_mode, "single | multi");
    dis->add_option("--seed", dis_seed, "random seed");
    dis->add_option("--lambda", dis_lambda, "sparsity penalty (default 0.05)");
    dis->add_option("--pop", dis_pop, "population size (default 8)");
    dis->add_option("--iters", dis_iters, "iterations (default 64 single / 8 multi)");
    dis->add_option("--pool", dis_pool, "token pool spec");
    dis->add_option("--trace", dis_trace, "write per-iteration trace CSV here");

    // experiment
    auto* exp = app.add_subcommand("experiment", "Repeated seeded runs with statistics");
    ExperimentConfig config;
    std::string exp_mode = "both", exp_config_file, exp_pool, exp_out;
    int exp_runs = -1;
    std::uint64_t exp_base_seed = 0;
    std::size_t exp_nt = 0, exp_nx = 0;
    double exp_lambda = -1.0;
    int exp_pop = -1, exp_iters_single = -1, exp_iters_multi = -1;
    bool exp_fd = false;
    std::string exp_case;
    exp->add_option("--config", exp_config_file, "key = value config file");
    exp->add_option("--case", exp_case, "wave | burgers | kdv");
    exp->add_option("--mode", exp_mode, "single | multi | both (default both)");
    exp->add_option("--runs", exp_runs, "independent runs (default 10)");
    auto* seed_opt = exp->add_option("--base-seed", exp_base_seed, "seed for run i is base+i");
    exp->add_option("--nt", exp_nt, "time points");
    exp->add_option("--nx", exp_nx, "space points");
    exp->add_option("--pop", exp_pop, "population size");
    exp->add_option("--iters-single", exp_iters_single, "single-objective generations");
    exp->add_option("--iters-multi", exp_iters_multi, "MOEA/DD iterations");
    exp->add_option("--lambda", exp_lambda, "sparsity penalty");
    exp->add_option("--pool", exp_pool, "token pool spec override");
    exp->add_option("--out", exp_out, "report directory");
    exp->add_flag("--fd", exp_fd, "force finite differences even when closed forms exist");

    // oracle
    auto* ora = app.add_subcommand("oracle", "Exhaustive search over the pool family");
    std::string ora_data, ora_pool;
    double ora_lambda = 0.05;
    std::size_t ora_budget = 1000000;
    ora->add_option("--data", ora_data, "field CSV path")->required();
    ora->add_option("--pool", ora_pool, "token pool spec");
    ora->add_option("--lambda", ora_lambda, "sparsity penalty (default 0.05)");
    ora->add_option("--budget", ora_budget, "enumeration cap (default 1e6)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (gen->parsed()) {
            return cmd_generate(gen_case, gen_nt, gen_nx, gen_out);
        }
        if (dis->parsed()) {
            return cmd_discover(dis_data, dis_mode, dis_seed, dis_lambda, dis_pop, dis_iters,
                                dis_pool, dis_trace);
        }
        if (ora->parsed()) {
            return cmd_oracle(ora_data, ora_pool, ora_lambda, ora_budget);
        }
        if (exp->parsed()) {
            if (!exp_config_file.empty()) {
                load_config_file(config, exp_config_file);
            }
            // Flags override config-file values.
            if (!exp_case.empty()) apply_config_entry(config, "case", exp_case);
            if (exp->count("--mode") > 0) apply_config_entry(config, "mode", exp_mode);
            if (exp_runs >= 0) config.runs = exp_runs;
            if (seed_opt->count() > 0) config.base_seed = exp_base_seed;
            if (exp_nt > 0) config.nt = exp_nt;
            if (exp_nx > 0) config.nx = exp_nx;
            if (exp_pop > 0) config.population = exp_pop;
            if (exp_iters_single >= 0) config.iterations_single = exp_iters_single;
            if (exp_iters_multi >= 0) config.iterations_multi = exp_iters_multi;
            if (exp_lambda >= 0.0) config.lambda = exp_lambda;
            if (!exp_pool.empty()) config.pool = exp_pool;
            if (!exp_out.empty()) config.out_dir = exp_out;
            if (exp_fd) config.analytic = false;
            return cmd_experiment(config);
        }
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitConfig;
}
