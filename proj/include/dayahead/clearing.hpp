#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "dayahead/risk.hpp"
#include "dayahead/scenario.hpp"

namespace dayahead {

/// One non-renewable unit's day-ahead bid: asking price and output limits.
struct GeneratorSpec {
    double ask_price = 0.0;
    double p_min = 0.0;
    double p_max = 0.0;

    bool operator==(const GeneratorSpec&) const = default;
};

/// Merit-ordered fleet. Asking prices must be strictly increasing and the
/// renewable price must satisfy 0 < renewable_price < units[0].ask_price.
struct Fleet {
    std::vector<GeneratorSpec> units;
    double renewable_price = 0.0;

    std::size_t size() const { return units.size(); }
    double total_capacity() const;
    double min_p_min() const;

    /// Throws ParseError naming the violated field.
    void validate() const;

    bool operator==(const Fleet&) const = default;
};

struct GridParams {
    double r1 = 0.0;  // non-renewable line resistance
    double r2 = 0.0;  // renewable line resistance

    void validate() const;

    bool operator==(const GridParams&) const = default;
};

/// Which KKT branch produced the dispatch: all committed units interior or at
/// max (Interior), or the marginal unit clamped to its minimum with the next
/// cheaper unit backed off (MinClamped).
enum class DispatchBranch { Interior, MinClamped };

std::string_view to_string(DispatchBranch branch);

struct DispatchResult {
    std::vector<double> outputs;
    double total = 0.0;
    std::size_t marginal_index = 0;  // 1-based unit index k
    DispatchBranch branch = DispatchBranch::Interior;

    bool operator==(const DispatchResult&) const = default;
};

struct PriceResult {
    double lambda = 0.0;          // market clearing price
    std::vector<double> mu;       // upper-bound multipliers
    std::vector<double> mu_tilde; // lower-bound multipliers

    bool operator==(const PriceResult&) const = default;
};

struct AssumptionReport {
    bool a1a_ok = false;  // discriminant 1 - 4*r1*cvar_s >= 0
    bool a1b_ok = false;  // planned total power inside the capacity window
    bool a2_ok = false;   // every p_min below the smallest max-min gap
    std::string details;

    bool all_ok() const { return a1a_ok && a1b_ok && a2_ok; }

    bool operator==(const AssumptionReport&) const = default;
};

struct KktReport {
    double max_stationarity = 0.0;   // over units with positive output
    double balance = 0.0;            // r1*(sum p)^2 + cvar_s - sum p
    double max_bound_violation = 0.0;
    double max_comp_slackness = 0.0;
};

/// Evaluates the feasibility assumptions. Reports, never throws.
AssumptionReport check_assumptions(const Fleet& fleet, const GridParams& grid, double cvar_s);

/// Smaller root of r1 * p^2 - p + cvar_s = 0 (cvar_s itself when r1 = 0).
double solve_total_power(double cvar_s, double r1);

/// Merit-order dispatch of p_total across the fleet, resolving both KKT
/// branches. Throws DispatchError / AssumptionError on infeasible input.
DispatchResult dispatch(const Fleet& fleet, double p_total);

/// Clearing price and multipliers for a dispatch produced from (r1, cvar_s).
PriceResult clearing_price(const Fleet& fleet, const DispatchResult& dispatch, double r1,
                           double cvar_s);

/// Residuals of the stationarity, balance, bound and complementary-slackness
/// conditions. Pure report.
KktReport kkt_residuals(const Fleet& fleet, const DispatchResult& dispatch,
                        const PriceResult& price, double r1, double cvar_s);

/// CVaR of the realized shortfall (r1*p_total^2 + s - p_total)^+ evaluated
/// directly on the net-load samples.
double shortfall_diagnostic(const NetLoadSamples& samples, double p_total, double r1,
                            RiskLevel level);

/// Day-ahead energy cost: sum of pi_i * p_i plus the renewable term.
double expected_cost(const Fleet& fleet, const DispatchResult& dispatch, double mean_renewable);

}  // namespace dayahead
