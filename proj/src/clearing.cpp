#include "dayahead/clearing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "dayahead/errors.hpp"

namespace dayahead {

namespace {

// Window checks use an absolute slack; boundary selection a far tighter one
// so cumulative-capacity roundoff cannot move the marginal unit.
constexpr double kWindowTol = 1e-9;
constexpr double kBoundaryTol = 1e-12;

std::vector<double> cumulative_capacity(const Fleet& fleet) {
    std::vector<double> cumulative(fleet.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < fleet.size(); ++i) {
        sum += fleet.units[i].p_max;
        cumulative[i] = sum;
    }
    return cumulative;
}

// Smallest max-min gap across the fleet.
double min_capacity_gap(const Fleet& fleet) {
    double gap = std::numeric_limits<double>::infinity();
    for (const auto& unit : fleet.units) gap = std::min(gap, unit.p_max - unit.p_min);
    return gap;
}

bool assumption2_holds(const Fleet& fleet) {
    const double gap = min_capacity_gap(fleet);
    return std::all_of(fleet.units.begin(), fleet.units.end(),
                       [gap](const GeneratorSpec& u) { return u.p_min < gap; });
}

}  // namespace

double Fleet::total_capacity() const {
    double sum = 0.0;
    for (const auto& unit : units) sum += unit.p_max;
    return sum;
}

double Fleet::min_p_min() const {
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& unit : units) lo = std::min(lo, unit.p_min);
    return lo;
}

void Fleet::validate() const {
    if (units.empty()) throw ParseError("fleet: must contain at least one unit");
    for (std::size_t i = 0; i < units.size(); ++i) {
        const auto& unit = units[i];
        std::ostringstream tag;
        tag << "fleet[" << i << "]";
        if (!(unit.ask_price > 0.0)) throw ParseError(tag.str() + ".pi: must be > 0");
        if (unit.p_min < 0.0) throw ParseError(tag.str() + ".pmin: must be >= 0");
        if (unit.p_min > unit.p_max) throw ParseError(tag.str() + ".pmin: exceeds pmax");
        if (i > 0 && !(units[i - 1].ask_price < unit.ask_price)) {
            throw ParseError(tag.str() + ".pi: asking prices must be strictly increasing");
        }
    }
    if (!(renewable_price > 0.0) || !(renewable_price < units.front().ask_price)) {
        throw ParseError(
            "renewable_price: must satisfy 0 < renewable_price < cheapest asking price");
    }
}

void GridParams::validate() const {
    if (r1 < 0.0) throw ParseError("r1: must be >= 0");
    if (r2 < 0.0) throw ParseError("r2: must be >= 0");
}

std::string_view to_string(DispatchBranch branch) {
    return branch == DispatchBranch::Interior ? "interior" : "min_clamped";
}

AssumptionReport check_assumptions(const Fleet& fleet, const GridParams& grid, double cvar_s) {
    AssumptionReport report;
    std::ostringstream details;
    const char* sep = "";

    const double disc = 1.0 - 4.0 * grid.r1 * cvar_s;
    report.a1a_ok = disc >= 0.0;
    if (!report.a1a_ok) {
        details << sep << "A1a: discriminant 1 - 4*r1*cvar_s = " << disc << " < 0";
        sep = "; ";
    }

    report.a1b_ok = false;
    if (report.a1a_ok) {
        const double planned =
            grid.r1 == 0.0 ? cvar_s : 2.0 * cvar_s / (1.0 + std::sqrt(disc));
        const double lo = fleet.min_p_min();
        const double hi = fleet.total_capacity();
        report.a1b_ok = planned >= lo - kWindowTol && planned <= hi + kWindowTol;
        if (!report.a1b_ok) {
            details << sep << "A1b: planned total power " << planned << " outside ["
                    << lo << ", " << hi << "] (fleet capacity window)";
            sep = "; ";
        }
    } else {
        details << sep << "A1b: no real total-power solution";
        sep = "; ";
    }

    report.a2_ok = assumption2_holds(fleet);
    if (!report.a2_ok) {
        details << sep << "A2: some p_min is not below the smallest max-min gap "
                << min_capacity_gap(fleet);
    }

    report.details = details.str();
    return report;
}

double solve_total_power(double cvar_s, double r1) {
    if (cvar_s < 0.0) throw std::invalid_argument("solve_total_power: cvar_s must be >= 0");
    if (r1 < 0.0) throw std::invalid_argument("solve_total_power: r1 must be >= 0");
    if (r1 == 0.0) return cvar_s;
    const double disc = 1.0 - 4.0 * r1 * cvar_s;
    if (disc < 0.0) {
        std::ostringstream msg;
        msg << "no real total-power solution: discriminant " << disc << " < 0";
        throw InfeasibilityError(msg.str(), disc);
    }
    // smaller root, written to stay well conditioned as r1 -> 0
    return 2.0 * cvar_s / (1.0 + std::sqrt(disc));
}

DispatchResult dispatch(const Fleet& fleet, double p_total) {
    fleet.validate();
    const auto cumulative = cumulative_capacity(fleet);
    const double capacity = cumulative.back();
    if (p_total < fleet.min_p_min() - kWindowTol || p_total > capacity + kWindowTol) {
        std::ostringstream msg;
        msg << "dispatch: total power " << p_total << " outside the feasible window ["
            << fleet.min_p_min() << ", " << capacity << "]";
        throw DispatchError(msg.str());
    }

    // marginal unit: smallest k with cum_{k-1} < p_total <= cum_k; ties go to
    // the cheaper unit
    std::size_t k = 1;
    while (k < fleet.size() && p_total > cumulative[k - 1] + kBoundaryTol) ++k;

    DispatchResult result;
    result.outputs.assign(fleet.size(), 0.0);
    result.total = p_total;
    result.marginal_index = k;

    const double before_k = k >= 2 ? cumulative[k - 2] : 0.0;
    const double marginal_power = p_total - before_k;
    const auto& unit_k = fleet.units[k - 1];

    if (marginal_power >= unit_k.p_min || k == 1) {
        if (marginal_power < unit_k.p_min - kWindowTol) {
            std::ostringstream msg;
            msg << "dispatch: total power " << p_total << " below the first unit's minimum "
                << unit_k.p_min;
            throw DispatchError(msg.str());
        }
        result.branch = DispatchBranch::Interior;
        for (std::size_t i = 0; i + 1 < k; ++i) result.outputs[i] = fleet.units[i].p_max;
        result.outputs[k - 1] = std::min(std::max(marginal_power, unit_k.p_min), unit_k.p_max);
        return result;
    }

    // 0 < p_total - cum_{k-1} < p_k_min: clamp unit k to its minimum and let
    // unit k-1 back off; needs the minimums strictly below every max-min gap
    if (!assumption2_holds(fleet)) {
        throw AssumptionError(
            "dispatch: min-clamped branch required but some p_min is not below the smallest "
            "max-min gap");
    }
    result.branch = DispatchBranch::MinClamped;
    const double before_k1 = k >= 3 ? cumulative[k - 3] : 0.0;
    for (std::size_t i = 0; i + 2 < k; ++i) result.outputs[i] = fleet.units[i].p_max;
    result.outputs[k - 2] = p_total - before_k1 - unit_k.p_min;
    result.outputs[k - 1] = unit_k.p_min;
    return result;
}

PriceResult clearing_price(const Fleet& fleet, const DispatchResult& dispatch, double r1,
                           double cvar_s) {
    const double disc = 1.0 - 4.0 * r1 * cvar_s;
    if (disc < 0.0) {
        std::ostringstream msg;
        msg << "clearing_price: discriminant " << disc << " < 0";
        throw InfeasibilityError(msg.str(), disc);
    }
    const std::size_t n = fleet.size();
    const std::size_t k = dispatch.marginal_index;
    const std::size_t setter =
        dispatch.branch == DispatchBranch::Interior ? k : k - 1;  // 1-based
    if (setter < 1 || setter > n) {
        throw ConsistencyError("clearing_price: marginal index out of range");
    }

    PriceResult price;
    price.mu.assign(n, 0.0);
    price.mu_tilde.assign(n, 0.0);
    price.lambda = fleet.units[setter - 1].ask_price / std::sqrt(disc);

    // stationarity gives the multipliers from the realized total output
    const double factor = price.lambda * (1.0 - 2.0 * r1 * dispatch.total);
    const auto recover = [&](double value, const char* which) {
        if (value < -kWindowTol) {
            std::ostringstream msg;
            msg << "clearing_price: negative " << which << " multiplier " << value
                << " signals a dispatch/price mismatch";
            throw ConsistencyError(msg.str());
        }
        return std::max(0.0, value);
    };
    for (std::size_t i = 1; i < setter; ++i) {
        price.mu[i - 1] = recover(factor - fleet.units[i - 1].ask_price, "mu");
    }
    if (dispatch.branch == DispatchBranch::MinClamped) {
        price.mu_tilde[k - 1] = recover(fleet.units[k - 1].ask_price - factor, "mu_tilde");
    }
    return price;
}

KktReport kkt_residuals(const Fleet& fleet, const DispatchResult& dispatch,
                        const PriceResult& price, double r1, double cvar_s) {
    KktReport report;
    const std::size_t n = fleet.size();
    double total = 0.0;
    for (double p : dispatch.outputs) total += p;

    report.balance = r1 * total * total + cvar_s - total;

    for (std::size_t i = 0; i < n; ++i) {
        const auto& unit = fleet.units[i];
        const double p = dispatch.outputs[i];
        const double mu = price.mu[i];
        const double mu_tilde = price.mu_tilde[i];

        if (p > 0.0) {
            const double stationarity =
                unit.ask_price + 2.0 * price.lambda * r1 * total - price.lambda + mu - mu_tilde;
            report.max_stationarity = std::max(report.max_stationarity, std::abs(stationarity));
        }

        if (i + 1 <= dispatch.marginal_index) {
            report.max_bound_violation =
                std::max({report.max_bound_violation, p - unit.p_max, unit.p_min - p});
        } else {
            // beyond the marginal unit the generator is off
            report.max_bound_violation = std::max(report.max_bound_violation, std::abs(p));
        }

        report.max_comp_slackness =
            std::max({report.max_comp_slackness, std::abs(mu * (p - unit.p_max)),
                      std::abs(mu_tilde * (unit.p_min - p))});
    }
    return report;
}

double shortfall_diagnostic(const NetLoadSamples& samples, double p_total, double r1,
                            RiskLevel level) {
    if (samples.values.empty()) {
        throw std::invalid_argument("shortfall_diagnostic: empty sample set");
    }
    const double loss = r1 * p_total * p_total;
    std::vector<double> shortfall(samples.values.size());
    for (std::size_t i = 0; i < samples.values.size(); ++i) {
        shortfall[i] = std::max(0.0, loss + samples.values[i] - p_total);
    }
    return cvar_alpha(shortfall, level);
}

double expected_cost(const Fleet& fleet, const DispatchResult& dispatch, double mean_renewable) {
    if (mean_renewable < 0.0) {
        throw std::invalid_argument("expected_cost: mean renewable output must be >= 0");
    }
    double cost = fleet.renewable_price * mean_renewable;
    for (std::size_t i = 0; i < fleet.size(); ++i) {
        cost += fleet.units[i].ask_price * dispatch.outputs[i];
    }
    return cost;
}

}  // namespace dayahead
