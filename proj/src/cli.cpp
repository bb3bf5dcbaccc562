#include "dayahead/cli.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dayahead/config.hpp"
#include "dayahead/errors.hpp"
#include "dayahead/experiments.hpp"
#include "dayahead/report.hpp"

namespace dayahead {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitUsage = 2;

struct CommonFlags {
    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> samples;
    std::optional<double> fleet_scale;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "JSON configuration file");
    cmd->add_option("--seed", flags.seed, "override the RNG seed");
    cmd->add_option("--samples", flags.samples, "override the Monte Carlo sample count");
    cmd->add_option("--out", flags.out_path, "CSV output path");
    cmd->add_option("--fleet-scale", flags.fleet_scale, "capacity scale factor for the fleet");
}

RunConfig resolve_config(const CommonFlags& flags, double default_fleet_scale) {
    RunConfig config = default_run_config(default_fleet_scale);
    if (!flags.config_path.empty()) {
        config = load_config_file(flags.config_path, std::move(config));
    }
    if (flags.seed) config.seed = *flags.seed;
    if (flags.samples) config.samples = *flags.samples;
    if (flags.fleet_scale) config.fleet_scale = *flags.fleet_scale;
    validate_config(config);
    return config;
}

ExperimentConfig to_experiment_config(const RunConfig& config) {
    ExperimentConfig ecfg;
    ecfg.fleet = scale_capacity(config.fleet, config.fleet_scale);
    ecfg.grid = config.grid;
    ecfg.alpha = RiskLevel(config.alpha);
    ecfg.load = config.load;
    ecfg.renewable = config.renewable;
    ecfg.n_samples = config.samples;
    ecfg.seed = config.seed;
    return ecfg;
}

void write_meta(const std::string& out_path, const std::string& command, const RunConfig& config,
                const nlohmann::ordered_json& extra) {
    nlohmann::ordered_json meta;
    meta["command"] = command;
    for (const auto& [key, value] : extra.items()) meta[key] = value;
    meta["config"] = config_to_json(config);
    std::ofstream file(out_path + ".meta.json", std::ios::binary);
    if (!file.good()) throw ParseError("cannot open output file: " + out_path + ".meta.json");
    file << meta.dump(2) << '\n';
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream file(path, std::ios::binary);
    if (!file.good()) throw ParseError("cannot open output file: " + path);
    file << bytes;
}

// --grid mean=0.1,0.2,0.3 (or std=..., r1=...)
std::pair<SweepParam, std::vector<double>> parse_grid_spec(const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) {
        throw CLI::ValidationError("--grid", "expected <param>=<v1,v2,...>");
    }
    const std::string name = spec.substr(0, eq);
    SweepParam param;
    if (name == "mean") {
        param = SweepParam::RenewableMean;
    } else if (name == "std") {
        param = SweepParam::RenewableStd;
    } else if (name == "r1") {
        param = SweepParam::LineResistanceR1;
    } else {
        throw CLI::ValidationError("--grid", "unknown sweep parameter '" + name +
                                                  "' (expected mean, std or r1)");
    }
    std::vector<double> values;
    std::string rest = spec.substr(eq + 1);
    std::size_t pos = 0;
    while (pos <= rest.size()) {
        const auto comma = std::min(rest.find(',', pos), rest.size());
        const char* begin = rest.data() + pos;
        const char* end = rest.data() + comma;
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc() || ptr != end || begin == end) {
            throw CLI::ValidationError("--grid", "bad grid value in '" + rest + "'");
        }
        values.push_back(v);
        pos = comma + 1;
    }
    return {param, values};
}

int run_clear(const CommonFlags& flags, const std::string& scenarios_path, std::ostream& out) {
    const RunConfig config = resolve_config(flags, 1.0);
    const Fleet fleet = scale_capacity(config.fleet, config.fleet_scale);

    ScenarioSet scenarios;
    if (!scenarios_path.empty()) {
        scenarios = load_scenarios_from_file(scenarios_path);
    } else {
        scenarios = sample_hour_scenarios(config.load, config.renewable, config.samples,
                                          config.seed);
    }
    const auto hc = clear_scenarios(fleet, config.grid, scenarios, RiskLevel(config.alpha));
    out << summarize(hc) << '\n';

    if (!flags.out_path.empty()) {
        std::ostringstream csv;
        write_hourly_csv(std::vector<HourlyClearing>{hc}, fleet.size(), csv);
        write_file(flags.out_path, csv.str());
        nlohmann::ordered_json extra;
        if (!scenarios_path.empty()) extra["scenarios"] = scenarios_path;
        write_meta(flags.out_path, "clear", config, extra);
    }
    return kExitOk;
}

int run_horizon(const CommonFlags& flags, std::ostream& out) {
    const RunConfig config = resolve_config(flags, 1.0);
    const Fleet fleet = scale_capacity(config.fleet, config.fleet_scale);

    const std::vector<HourModels> hours(kHorizonHours, HourModels{config.load, config.renewable});
    const auto result = clear_horizon(fleet, config.grid, hours, RiskLevel(config.alpha),
                                      config.samples, config.seed);
    double total_cost = 0.0;
    std::size_t feasible = 0;
    for (const auto& hc : result) {
        out << summarize(hc) << '\n';
        if (hc.feasible) {
            total_cost += *hc.cost;
            ++feasible;
        }
    }
    out << "total_cost=" << format_shortest(total_cost) << " feasible_hours=" << feasible << "/"
        << kHorizonHours << '\n';

    if (!flags.out_path.empty()) {
        std::ostringstream csv;
        write_hourly_csv(result, fleet.size(), csv);
        write_file(flags.out_path, csv.str());
        write_meta(flags.out_path, "horizon", config, {});
    }
    return kExitOk;
}

int run_sweep(const CommonFlags& flags, const std::string& case_tag, const std::string& grid_spec,
              std::ostream& out) {
    const RunConfig config = resolve_config(flags, 1.5);
    const ExperimentConfig ecfg = to_experiment_config(config);

    SweepResult result;
    nlohmann::ordered_json extra;
    if (!case_tag.empty()) {
        CaseId case_id = CaseId::I;
        if (case_tag == "I") case_id = CaseId::I;
        else if (case_tag == "II") case_id = CaseId::II;
        else if (case_tag == "III") case_id = CaseId::III;
        else if (case_tag == "IV") case_id = CaseId::IV;
        result = run_case_sweep(case_id, ecfg);
        extra["case"] = case_tag;
    } else {
        const auto [param, values] = parse_grid_spec(grid_spec);
        result = run_custom_sweep(param, values, ecfg);
        extra["grid"] = grid_spec;
    }

    std::size_t feasible = 0;
    for (std::size_t i = 0; i < result.points.size(); ++i) {
        const auto& point = result.points[i];
        out << "point " << i << ": mean=" << format_shortest(point.renewable_mean)
            << " std=" << format_shortest(point.renewable_std)
            << " r1=" << format_shortest(point.r1);
        if (point.clearing.feasible) {
            ++feasible;
            out << " lambda=" << format_shortest(point.clearing.price->lambda);
        } else {
            out << " infeasible";
        }
        out << '\n';
    }
    out << "sweep case " << to_string(result.case_id) << ": " << result.points.size()
        << " points, " << feasible << " feasible\n";

    if (!flags.out_path.empty()) {
        std::ostringstream csv;
        write_sweep_csv(result, csv);
        write_file(flags.out_path, csv.str());
        write_meta(flags.out_path, "sweep", config, extra);
    }
    return kExitOk;
}

int run_validate(const CommonFlags& flags, std::ostream& out) {
    const RunConfig config = resolve_config(flags, 1.0);
    out << config_to_json(config).dump(2) << '\n';
    return kExitOk;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"day-ahead market clearing engine with a CVaR reliability constraint"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string scenarios_path;
    std::string case_tag;
    std::string grid_spec;

    auto* clear_cmd = app.add_subcommand("clear", "clear a single hour");
    add_common_flags(clear_cmd, flags);
    clear_cmd->add_option("--scenarios", scenarios_path,
                          "scenario CSV (p_d,p_r) that bypasses the samplers");

    auto* horizon_cmd = app.add_subcommand("horizon", "clear a 24-hour day-ahead horizon");
    add_common_flags(horizon_cmd, flags);

    auto* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep");
    add_common_flags(sweep_cmd, flags);
    auto* case_opt = sweep_cmd->add_option("--case", case_tag, "built-in case: I, II, III or IV")
                         ->check(CLI::IsMember({"I", "II", "III", "IV"}));
    sweep_cmd->add_option("--grid", grid_spec, "custom grid, e.g. mean=0.1,0.2,0.3")
        ->excludes(case_opt);

    auto* validate_cmd = app.add_subcommand("validate", "check a configuration and echo it");
    validate_cmd->add_option("--config", flags.config_path, "JSON configuration file");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (clear_cmd->parsed()) return run_clear(flags, scenarios_path, out);
        if (horizon_cmd->parsed()) return run_horizon(flags, out);
        if (sweep_cmd->parsed()) {
            if (case_tag.empty() == grid_spec.empty()) {
                err << "usage error: sweep requires exactly one of --case or --grid\n";
                return kExitUsage;
            }
            return run_sweep(flags, case_tag, grid_spec, out);
        }
        return run_validate(flags, out);
    } catch (const CLI::ValidationError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}

}  // namespace dayahead
