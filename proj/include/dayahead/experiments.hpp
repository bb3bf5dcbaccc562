#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "dayahead/clearing.hpp"
#include "dayahead/risk.hpp"
#include "dayahead/scenario.hpp"

namespace dayahead {

/// Full single-hour solution with diagnostics. When infeasible, the optional
/// stages stay empty and the assumption report carries the reason.
struct HourlyClearing {
    std::size_t hour = 0;
    double cvar_s = 0.0;
    std::optional<double> p_total;
    std::optional<DispatchResult> dispatch;
    std::optional<PriceResult> price;
    std::optional<double> shortfall;
    std::optional<double> cost;
    bool feasible = false;
    AssumptionReport assumptions;

    bool operator==(const HourlyClearing&) const = default;
};

enum class CaseId { I, II, III, IV, Custom };

std::string_view to_string(CaseId id);

/// Which parameter a custom sweep varies.
enum class SweepParam { RenewableMean, RenewableStd, LineResistanceR1 };

/// One sweep point: the effective (mean, std, r1) triple and its clearing.
struct SweepPoint {
    double renewable_mean = 0.0;
    double renewable_std = 0.0;
    double r1 = 0.0;
    HourlyClearing clearing;

    bool operator==(const SweepPoint&) const = default;
};

struct ExperimentConfig {
    Fleet fleet;
    GridParams grid{0.04, 0.05};
    RiskLevel alpha{0.9};
    GaussianModel load{0.7, 0.1, true};
    GaussianModel renewable{0.5, 0.1, true};
    std::size_t n_samples = 200000;
    std::uint64_t seed = 20240601;
    unsigned threads = 1;

    bool operator==(const ExperimentConfig&) const = default;
};

struct SweepResult {
    CaseId case_id = CaseId::Custom;
    std::vector<SweepPoint> points;
    ExperimentConfig config_echo;
};

struct HourModels {
    GaussianModel load;
    GaussianModel renewable;
};

inline constexpr std::size_t kHorizonHours = 24;

/// The built-in six-unit fleet used throughout: capacities
/// {0.05, 0.1, 0.12, 0.15, 0.18, 0.25}, prices {20,...,70}, p_min = 0,
/// renewable price 10.
Fleet reference_fleet();

/// Scales every p_max by `factor`; prices and minimums unchanged.
Fleet scale_capacity(Fleet fleet, double factor);

/// Sweep defaults: reference fleet with capacity scaled by 1.5 so all case
/// grids stay feasible at alpha = 0.9.
ExperimentConfig default_experiment_config();

/// Clears one hour from pre-built scenarios: transform, CVaR, assumption
/// checks, total-power solve, dispatch, pricing, diagnostics. Infeasibility
/// is captured in the result, not thrown.
HourlyClearing clear_scenarios(const Fleet& fleet, const GridParams& grid,
                               const ScenarioSet& scenarios, RiskLevel alpha,
                               std::size_t hour = 0);

/// Samples one hour's scenarios then clears it.
HourlyClearing clear_hour(const Fleet& fleet, const GridParams& grid, const GaussianModel& load,
                          const GaussianModel& renewable, RiskLevel alpha, std::size_t n_samples,
                          std::uint64_t seed, std::size_t hour = 0);

/// Clears 24 hours with per-hour sub-seeds derived from the master seed; each
/// hour is independent of evaluation order.
std::vector<HourlyClearing> clear_horizon(const Fleet& fleet, const GridParams& grid,
                                          std::span<const HourModels> hours, RiskLevel alpha,
                                          std::size_t n_samples, std::uint64_t master_seed);

/// Runs one of the built-in case sweeps with common random numbers: the same
/// standard-normal draws are reused at every point of the grid.
SweepResult run_case_sweep(CaseId case_id, const ExperimentConfig& config);

/// Custom sweep over an explicit value grid for one parameter.
SweepResult run_custom_sweep(SweepParam param, std::span<const double> values,
                             const ExperimentConfig& config);

}  // namespace dayahead
