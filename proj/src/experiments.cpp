#include "dayahead/experiments.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <stdexcept>
#include <thread>
#include <vector>

#include "dayahead/errors.hpp"

namespace dayahead {

namespace {

constexpr std::array<double, 10> kCase1Means{0.0,  0.15, 0.25, 0.3, 0.45,
                                             0.5,  0.65, 0.75, 0.8, 0.9};
constexpr std::array<double, 10> kCase2Stds{0.01, 0.04, 0.1, 0.15, 0.2,
                                            0.25, 0.3,  0.4, 0.45, 0.5};
constexpr std::array<double, 10> kCase3Means{0.05, 0.15, 0.25, 0.3, 0.45,
                                             0.5,  0.65, 0.75, 0.8, 0.9};
constexpr std::array<double, 10> kCase3Stds{0.06, 0.1, 0.12, 0.15, 0.32,
                                            0.2,  0.3, 0.4,  0.45, 0.5};
constexpr std::array<double, 10> kCase4R1{0.04, 0.06, 0.08, 0.1, 0.12,
                                          0.14, 0.16, 0.18, 0.2, 0.22};

struct PointSpec {
    double renewable_mean;
    double renewable_std;
    double r1;
};

std::vector<PointSpec> case_points(CaseId case_id, const ExperimentConfig& config) {
    std::vector<PointSpec> points;
    switch (case_id) {
        case CaseId::I:
            for (double m : kCase1Means) points.push_back({m, 0.1, config.grid.r1});
            break;
        case CaseId::II:
            for (double s : kCase2Stds) points.push_back({0.5, s, config.grid.r1});
            break;
        case CaseId::III:
            for (std::size_t i = 0; i < kCase3Means.size(); ++i) {
                points.push_back({kCase3Means[i], kCase3Stds[i], config.grid.r1});
            }
            break;
        case CaseId::IV:
            for (double r1 : kCase4R1) points.push_back({0.5, 0.1, r1});
            break;
        case CaseId::Custom:
            throw std::invalid_argument("custom sweeps need an explicit value grid");
    }
    return points;
}

SweepResult run_sweep(CaseId case_id, const std::vector<PointSpec>& specs,
                      const ExperimentConfig& config) {
    config.fleet.validate();
    config.grid.validate();
    if (specs.empty()) throw std::invalid_argument("sweep grid must be non-empty");

    // common random numbers: one set of draws shared by every point
    const auto draws = sample_standard_normal_pairs(config.n_samples, config.seed);

    SweepResult result;
    result.case_id = case_id;
    result.config_echo = config;
    result.points.resize(specs.size());

    const auto evaluate = [&](std::size_t i) {
        const PointSpec& spec = specs[i];
        GaussianModel renewable = config.renewable;
        renewable.mean = spec.renewable_mean;
        renewable.std_dev = spec.renewable_std;
        const GridParams grid{spec.r1, config.grid.r2};
        const auto scenarios = scenarios_from_draws(draws, config.load, renewable);
        result.points[i] = {spec.renewable_mean, spec.renewable_std, spec.r1,
                            clear_scenarios(config.fleet, grid, scenarios, config.alpha, i)};
    };

    const unsigned workers = std::min<unsigned>(std::max(1u, config.threads),
                                                static_cast<unsigned>(specs.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < specs.size(); ++i) evaluate(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < specs.size(); i = next++) evaluate(i);
            });
        }
        for (auto& t : pool) t.join();
    }
    return result;
}

}  // namespace

std::string_view to_string(CaseId id) {
    switch (id) {
        case CaseId::I: return "I";
        case CaseId::II: return "II";
        case CaseId::III: return "III";
        case CaseId::IV: return "IV";
        case CaseId::Custom: return "Custom";
    }
    return "Custom";
}

Fleet reference_fleet() {
    Fleet fleet;
    fleet.units = {
        {20.0, 0.0, 0.05}, {30.0, 0.0, 0.1},  {40.0, 0.0, 0.12},
        {50.0, 0.0, 0.15}, {60.0, 0.0, 0.18}, {70.0, 0.0, 0.25},
    };
    fleet.renewable_price = 10.0;
    return fleet;
}

Fleet scale_capacity(Fleet fleet, double factor) {
    if (!(factor > 0.0)) throw std::invalid_argument("capacity scale factor must be > 0");
    for (auto& unit : fleet.units) unit.p_max *= factor;
    return fleet;
}

ExperimentConfig default_experiment_config() {
    ExperimentConfig config;
    config.fleet = scale_capacity(reference_fleet(), 1.5);
    return config;
}

HourlyClearing clear_scenarios(const Fleet& fleet, const GridParams& grid,
                               const ScenarioSet& scenarios, RiskLevel alpha, std::size_t hour) {
    fleet.validate();
    grid.validate();
    if (scenarios.n_samples() == 0) {
        throw std::invalid_argument("clear_scenarios: empty scenario set");
    }

    HourlyClearing hc;
    hc.hour = hour;

    const auto net = net_load_transform(scenarios, grid.r2);
    hc.cvar_s = cvar_alpha(net.values, alpha);
    hc.assumptions = check_assumptions(fleet, grid, hc.cvar_s);
    if (!hc.assumptions.all_ok()) return hc;

    try {
        // a1b already confined cvar_s to the capacity window up to tolerance,
        // so a sub-zero value can only be window slack
        const double p_total = solve_total_power(std::max(hc.cvar_s, 0.0), grid.r1);
        const auto d = dispatch(fleet, p_total);
        const auto price = clearing_price(fleet, d, grid.r1, hc.cvar_s);
        hc.p_total = p_total;
        hc.shortfall = shortfall_diagnostic(net, p_total, grid.r1, alpha);
        double renewable_sum = 0.0;
        for (const auto& s : scenarios.pairs) renewable_sum += s.p_r;
        hc.cost = expected_cost(fleet, d, renewable_sum / static_cast<double>(scenarios.n_samples()));
        hc.dispatch = d;
        hc.price = price;
        hc.feasible = true;
    } catch (const InfeasibilityError& e) {
        hc.assumptions.details += std::string(hc.assumptions.details.empty() ? "" : "; ") + e.what();
    } catch (const DispatchError& e) {
        hc.assumptions.details += std::string(hc.assumptions.details.empty() ? "" : "; ") + e.what();
    } catch (const AssumptionError& e) {
        hc.assumptions.details += std::string(hc.assumptions.details.empty() ? "" : "; ") + e.what();
    }
    return hc;
}

HourlyClearing clear_hour(const Fleet& fleet, const GridParams& grid, const GaussianModel& load,
                          const GaussianModel& renewable, RiskLevel alpha, std::size_t n_samples,
                          std::uint64_t seed, std::size_t hour) {
    return clear_scenarios(fleet, grid, sample_hour_scenarios(load, renewable, n_samples, seed),
                           alpha, hour);
}

std::vector<HourlyClearing> clear_horizon(const Fleet& fleet, const GridParams& grid,
                                          std::span<const HourModels> hours, RiskLevel alpha,
                                          std::size_t n_samples, std::uint64_t master_seed) {
    if (hours.size() != kHorizonHours) {
        throw std::invalid_argument("clear_horizon: exactly 24 hour configurations required");
    }
    std::vector<HourlyClearing> result(kHorizonHours);
    for (std::size_t t = 0; t < kHorizonHours; ++t) {
        result[t] = clear_hour(fleet, grid, hours[t].load, hours[t].renewable, alpha, n_samples,
                               derive_stream_seed(master_seed, t), t);
    }
    return result;
}

SweepResult run_case_sweep(CaseId case_id, const ExperimentConfig& config) {
    return run_sweep(case_id, case_points(case_id, config), config);
}

SweepResult run_custom_sweep(SweepParam param, std::span<const double> values,
                             const ExperimentConfig& config) {
    if (values.empty()) throw std::invalid_argument("custom sweep grid must be non-empty");
    std::vector<PointSpec> specs;
    specs.reserve(values.size());
    for (double v : values) {
        PointSpec spec{config.renewable.mean, config.renewable.std_dev, config.grid.r1};
        switch (param) {
            case SweepParam::RenewableMean: spec.renewable_mean = v; break;
            case SweepParam::RenewableStd: spec.renewable_std = v; break;
            case SweepParam::LineResistanceR1: spec.r1 = v; break;
        }
        specs.push_back(spec);
    }
    return run_sweep(CaseId::Custom, specs, config);
}

}  // namespace dayahead
