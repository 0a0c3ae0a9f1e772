#include "eqdisc/experiment.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace eqdisc {

namespace {

std::string format17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

std::string mode_name(SearchMode mode) {
    return mode == SearchMode::Single ? "single" : "multi";
}

void ExperimentConfig::validate() const {
    if (runs < 1) {
        throw ConfigError("runs must be at least 1");
    }
    if (!run_single && !run_multi) {
        throw ConfigError("experiment needs at least one mode");
    }
    if (!seeds.empty() && static_cast<int>(seeds.size()) < runs) {
        throw ConfigError("explicit seed list shorter than the run count");
    }
    search_config(SearchMode::Single, 0).validate();
    search_config(SearchMode::Multi, 0).validate();
}

std::vector<std::uint64_t> ExperimentConfig::run_seeds() const {
    std::vector<std::uint64_t> out;
    out.reserve(static_cast<std::size_t>(runs));
    for (int i = 0; i < runs; ++i) {
        out.push_back(seeds.empty() ? base_seed + static_cast<std::uint64_t>(i)
                                    : seeds[static_cast<std::size_t>(i)]);
    }
    return out;
}

SearchConfig ExperimentConfig::search_config(SearchMode mode, std::uint64_t seed) const {
    SearchConfig sc;
    sc.population = population;
    sc.iterations = mode == SearchMode::Single ? iterations_single : iterations_multi;
    sc.lambda = lambda;
    sc.operators = operators;
    sc.seed = seed;
    sc.theta = theta;
    sc.delta = delta;
    sc.neighborhood = neighborhood;
    sc.parent_fraction = parent_fraction;
    return sc;
}

void apply_config_entry(ExperimentConfig& config, const std::string& key,
                        const std::string& value) {
    try {
        if (key == "benchmark" || key == "case") {
            config.benchmark = value;
        } else if (key == "mode") {
            if (value == "single") {
                config.run_single = true;
                config.run_multi = false;
            } else if (value == "multi") {
                config.run_single = false;
                config.run_multi = true;
            } else if (value == "both") {
                config.run_single = true;
                config.run_multi = true;
            } else {
                throw ConfigError("mode must be single, multi, or both (got '" + value + "')");
            }
        } else if (key == "runs") {
            config.runs = std::stoi(value);
        } else if (key == "base_seed") {
            config.base_seed = std::stoull(value);
        } else if (key == "seeds") {
            config.seeds.clear();
            std::size_t pos = 0;
            while (pos < value.size()) {
                std::size_t next = value.find(';', pos);
                if (next == std::string::npos) next = value.size();
                config.seeds.push_back(std::stoull(value.substr(pos, next - pos)));
                pos = next + 1;
            }
        } else if (key == "nt") {
            config.nt = static_cast<std::size_t>(std::stoul(value));
        } else if (key == "nx") {
            config.nx = static_cast<std::size_t>(std::stoul(value));
        } else if (key == "analytic") {
            config.analytic = value == "true" || value == "1" || value == "yes";
        } else if (key == "population") {
            config.population = std::stoi(value);
        } else if (key == "iterations_single") {
            config.iterations_single = std::stoi(value);
        } else if (key == "iterations_multi") {
            config.iterations_multi = std::stoi(value);
        } else if (key == "lambda") {
            config.lambda = std::stod(value);
        } else if (key == "crossover_rate") {
            config.operators.crossover_rate = std::stod(value);
        } else if (key == "mutation_rate") {
            config.operators.mutation_rate = std::stod(value);
        } else if (key == "param_sigma") {
            config.operators.param_sigma = std::stod(value);
        } else if (key == "theta") {
            config.theta = std::stod(value);
        } else if (key == "delta") {
            config.delta = std::stod(value);
        } else if (key == "neighborhood") {
            config.neighborhood = std::stoi(value);
        } else if (key == "parent_fraction") {
            config.parent_fraction = std::stod(value);
        } else if (key == "pool") {
            config.pool = value;
        } else if (key == "out") {
            config.out_dir = value;
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    } catch (const std::invalid_argument&) {
        throw ConfigError("cannot parse value '" + value + "' for config key '" + key + "'");
    } catch (const std::out_of_range&) {
        throw ConfigError("value '" + value + "' out of range for config key '" + key + "'");
    }
}

void load_config_file(ExperimentConfig& config, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path.string());
    }
    std::string line;
    std::size_t line_no = 0;
    auto trim = [](std::string s) {
        const std::size_t b = s.find_first_not_of(" \t\r");
        const std::size_t e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                              ": expected key = value");
        }
        apply_config_entry(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

std::pair<double, double> mean_and_sample_variance(const std::vector<double>& values) {
    if (values.empty()) {
        throw DataError("statistics over an empty run list");
    }
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mu = sum / static_cast<double>(values.size());
    if (values.size() == 1) {
        return {mu, 0.0};
    }
    double ss = 0.0;
    for (double v : values) ss += (v - mu) * (v - mu);
    return {mu, ss / static_cast<double>(values.size() - 1)};
}

RunStats run_experiment(const ExperimentConfig& config) {
    config.validate();
    BenchmarkCase bench = make_benchmark(config.benchmark, config.nt, config.nx);
    if (!config.pool.empty()) {
        bench.pool = parse_pool(config.pool);
    }
    const DerivativeTable table = benchmark_table(bench, config.analytic);
    const std::string true_2sig = canonical_form(bench.true_equation, 2).text;

    RunStats stats;
    stats.config = config;
    stats.true_canonical = bench.true_canonical;

    const auto seeds = config.run_seeds();
    std::vector<SearchMode> modes;
    if (config.run_single) modes.push_back(SearchMode::Single);
    if (config.run_multi) modes.push_back(SearchMode::Multi);

    for (SearchMode mode : modes) {
        ModeStats ms;
        for (int run = 0; run < config.runs; ++run) {
            const auto t0 = std::chrono::steady_clock::now();
            RunRecord rec;
            rec.seed = seeds[static_cast<std::size_t>(run)];
            const SearchConfig sc = config.search_config(mode, rec.seed);
            if (mode == SearchMode::Single) {
                SingleObjectiveResult res = run_single_objective(table, bench.pool, sc);
                rec.best_q_op = res.best.objectives.q_op;
                rec.complexity = res.best.objectives.complexity;
                rec.canonical = canonical_form(res.best.equation).text;
                rec.recovered = canonical_form(res.best.equation, 2).text == true_2sig;
                rec.evaluations = res.evaluations;
            } else {
                MoeaddResult res = run_moeadd(table, bench.pool, sc);
                rec.best_q_op = res.archive.min_q_op();
                const Individual* best = res.archive.best_q_op();
                rec.complexity = best ? best->objectives.complexity : 0;
                rec.canonical = best ? canonical_form(best->equation).text : "";
                rec.recovered = false;
                for (const auto& member : res.archive.individuals()) {
                    if (canonical_form(member.equation, 2).text == true_2sig) {
                        rec.recovered = true;
                        break;
                    }
                }
                rec.evaluations = res.evaluations;
            }
            rec.wall_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
            ms.runs.push_back(std::move(rec));
        }
        std::vector<double> values;
        int recovered = 0;
        for (const auto& r : ms.runs) {
            values.push_back(r.best_q_op);
            recovered += r.recovered ? 1 : 0;
        }
        std::tie(ms.mu, ms.sigma2) = mean_and_sample_variance(values);
        ms.recovery_rate = static_cast<double>(recovered) / static_cast<double>(ms.runs.size());
        stats.modes.emplace(mode, std::move(ms));
    }

    if (!config.out_dir.empty()) {
        emit_reports(stats, config.out_dir);
    }
    return stats;
}

namespace {

nlohmann::ordered_json config_to_json(const ExperimentConfig& c, const std::string& true_form) {
    nlohmann::ordered_json j;
    j["benchmark"] = c.benchmark;
    std::string mode = c.run_single && c.run_multi ? "both" : (c.run_single ? "single" : "multi");
    j["mode"] = mode;
    j["runs"] = c.runs;
    j["base_seed"] = c.base_seed;
    j["seeds"] = c.run_seeds();
    j["nt"] = c.nt;
    j["nx"] = c.nx;
    j["analytic"] = c.analytic;
    j["population"] = c.population;
    j["iterations_single"] = c.iterations_single;
    j["iterations_multi"] = c.iterations_multi;
    j["lambda"] = c.lambda;
    j["crossover_rate"] = c.operators.crossover_rate;
    j["mutation_rate"] = c.operators.mutation_rate;
    j["param_sigma"] = c.operators.param_sigma;
    j["theta"] = c.theta;
    j["delta"] = c.delta;
    j["neighborhood"] = c.neighborhood;
    j["parent_fraction"] = c.parent_fraction;
    j["pool"] = c.pool;
    j["true_equation"] = true_form;
    return j;
}

} // namespace

void emit_reports(const RunStats& stats, const std::filesystem::path& out_dir) {
    if (stats.modes.empty()) {
        throw DataError("no runs to report");
    }
    for (const auto& [mode, ms] : stats.modes) {
        if (ms.runs.empty()) {
            throw DataError("empty run list for mode " + mode_name(mode));
        }
    }
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw DataError("cannot create output directory " + out_dir.string() + ": " +
                        ec.message());
    }

    nlohmann::ordered_json j;
    j["config"] = config_to_json(stats.config, stats.true_canonical);
    nlohmann::ordered_json modes_json;
    for (const auto& [mode, ms] : stats.modes) {
        nlohmann::ordered_json m;
        m["mu"] = ms.mu;
        m["sigma2"] = ms.sigma2;
        m["recovery_rate"] = ms.recovery_rate;
        nlohmann::ordered_json runs = nlohmann::ordered_json::array();
        for (const auto& r : ms.runs) {
            nlohmann::ordered_json row;
            row["seed"] = r.seed;
            row["best_q_op"] = r.best_q_op;
            row["complexity"] = r.complexity;
            row["canonical"] = r.canonical;
            row["recovered"] = r.recovered;
            row["evaluations"] = r.evaluations;
            row["wall_ms"] = r.wall_ms;
            runs.push_back(std::move(row));
        }
        m["runs"] = std::move(runs);
        modes_json[mode_name(mode)] = std::move(m);
    }
    j["modes"] = std::move(modes_json);

    {
        std::ofstream out(out_dir / "stats.json", std::ios::binary);
        if (!out) {
            throw DataError("cannot write " + (out_dir / "stats.json").string());
        }
        out << j.dump(2) << '\n';
    }

    {
        std::ofstream out(out_dir / "runs.csv", std::ios::binary);
        if (!out) {
            throw DataError("cannot write " + (out_dir / "runs.csv").string());
        }
        out << "mode,run,seed,best_q_op,complexity,canonical,recovered,evaluations,wall_ms\n";
        for (const auto& [mode, ms] : stats.modes) {
            for (std::size_t i = 0; i < ms.runs.size(); ++i) {
                const auto& r = ms.runs[i];
                out << mode_name(mode) << ',' << i << ',' << r.seed << ','
                    << format17(r.best_q_op) << ',' << r.complexity << ',' << r.canonical << ','
                    << (r.recovered ? 1 : 0) << ',' << r.evaluations << ','
                    << format17(r.wall_ms) << '\n';
            }
        }
    }

    {
        std::ofstream out(out_dir / "boxplot.csv", std::ios::binary);
        if (!out) {
            throw DataError("cannot write " + (out_dir / "boxplot.csv").string());
        }
        std::string header;
        std::size_t max_rows = 0;
        for (const auto& [mode, ms] : stats.modes) {
            if (!header.empty()) header += ',';
            header += mode_name(mode);
            max_rows = std::max(max_rows, ms.runs.size());
        }
        out << header << '\n';
        for (std::size_t i = 0; i < max_rows; ++i) {
            std::string row;
            for (const auto& [mode, ms] : stats.modes) {
                if (!row.empty()) row += ',';
                if (i < ms.runs.size()) {
                    row += format17(ms.runs[i].best_q_op);
                }
            }
            out << row << '\n';
        }
    }
}

} // namespace eqdisc
