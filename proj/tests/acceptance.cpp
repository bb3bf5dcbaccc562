// Acceptance suite: end-to-end checks of the clearing engine at its stated
// tolerances. Prints one PASS/FAIL line per criterion and exits nonzero if
// any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dayahead/cli.hpp"
#include "dayahead/clearing.hpp"
#include "dayahead/experiments.hpp"
#include "dayahead/report.hpp"
#include "dayahead/risk.hpp"
#include "dayahead/scenario.hpp"

using namespace dayahead;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

class Harness {
public:
    void run(int id, const std::string& name, const std::function<Outcome()>& criterion) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = criterion();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::ostringstream line;
        line << "[" << (id < 10 ? " " : "") << id << "] " << (outcome.pass ? "PASS" : "FAIL")
             << "  " << name;
        if (!outcome.detail.empty()) line << " (" << outcome.detail << ")";
        line << " [" << std::fixed << std::setprecision(2) << seconds << "s]";
        std::cout << line.str() << std::endl;
        all_pass_ &= outcome.pass;
    }

    bool all_pass() const { return all_pass_; }

private:
    bool all_pass_ = true;
};

double elapsed_seconds(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---------------------------------------------------------------------------
// 1. CVaR estimator accuracy against the closed-form oracle
// ---------------------------------------------------------------------------
Outcome criterion_estimator_accuracy() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20240601);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> samples(1000000);
    for (auto& s : samples) s = normal(rng);
    const double est = cvar_alpha(samples, RiskLevel(0.9));
    const double oracle = gaussian_cvar(0.0, 1.0, RiskLevel(0.9));
    const double error = std::abs(est - oracle);
    const double seconds = elapsed_seconds(start);
    std::ostringstream detail;
    detail << "|" << est << " - " << oracle << "| = " << error << " < 0.01, " << seconds << "s";
    return {error < 0.01 && seconds < 5.0, detail.str()};
}

// ---------------------------------------------------------------------------
// 2. Coherence axioms over randomized sample sets
// ---------------------------------------------------------------------------
Outcome criterion_coherence() {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::size_t> size_dist(10, 10000);
    std::uniform_real_distribution<double> shift_dist(-4.0, 4.0);
    std::uniform_real_distribution<double> scale_dist(0.1, 5.0);
    int failures = 0;
    const auto rel_ok = [](double got, double want) {
        return std::abs(got - want) <= 1e-9 * std::max(1.0, std::abs(want));
    };
    for (int set = 0; set < 100; ++set) {
        std::vector<double> samples(size_dist(rng));
        const int family = set % 3;
        std::normal_distribution<double> normal(0.5, 2.0);
        std::lognormal_distribution<double> lognormal(0.0, 1.0);
        std::uniform_int_distribution<int> lattice(-5, 5);
        for (auto& s : samples) {
            s = family == 0 ? normal(rng)
                : family == 1 ? lognormal(rng)
                              : static_cast<double>(lattice(rng));  // heavy ties
        }
        const RiskLevel level(0.9);
        const double base = cvar_alpha(samples, level);
        const double var = var_alpha(samples, level);

        const double c = shift_dist(rng);
        auto shifted = samples;
        for (auto& s : shifted) s += c;
        const bool translation = rel_ok(cvar_alpha(shifted, level), base + c);

        const double m = scale_dist(rng);
        auto scaled = samples;
        for (auto& s : scaled) s *= m;
        const bool homogeneity = rel_ok(cvar_alpha(scaled, level), base * m);

        const bool dominance = base >= var - 1e-9 * std::max(1.0, std::abs(var));

        bool monotone = true;
        double prev = -std::numeric_limits<double>::infinity();
        for (double a = 0.05; a < 0.99; a += 0.05) {
            const double cv = cvar_alpha(samples, RiskLevel(a));
            if (cv < prev - 1e-9 * std::max(1.0, std::abs(prev))) monotone = false;
            prev = cv;
        }
        if (!(translation && homogeneity && dominance && monotone)) ++failures;
    }
    std::ostringstream detail;
    detail << failures << "/100 sets violated an axiom at 1e-9 relative";
    return {failures == 0, detail.str()};
}

// ---------------------------------------------------------------------------
// 3. KKT self-consistency on randomized feasible instances
// ---------------------------------------------------------------------------
Outcome criterion_kkt() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<std::size_t> n_dist(1, 8);
    std::uniform_real_distribution<double> price_dist(5.0, 100.0);
    std::uniform_real_distribution<double> cap_dist(0.2, 0.6);
    std::uniform_real_distribution<double> pmin_dist(0.0, 0.08);
    std::uniform_real_distribution<double> r1_dist(0.0, 0.3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    int solved = 0;
    int min_clamped = 0;
    int failures = 0;
    std::string first_failure;
    while (solved < 1000) {
        const std::size_t n = n_dist(rng);
        std::vector<double> prices(n);
        for (auto& p : prices) p = price_dist(rng);
        std::sort(prices.begin(), prices.end());
        bool spread = true;
        for (std::size_t i = 0; i + 1 < n; ++i) spread &= prices[i + 1] - prices[i] > 1e-3;
        if (!spread) continue;

        Fleet fleet;
        for (std::size_t i = 0; i < n; ++i) {
            fleet.units.push_back({prices[i], pmin_dist(rng), cap_dist(rng)});
        }
        fleet.renewable_price = prices[0] * 0.5;

        const double r1 = unit(rng) < 0.15 ? 0.0 : r1_dist(rng);
        const double hi =
            r1 > 0.0 ? std::min(fleet.total_capacity(), 0.95 / (2.0 * r1)) : fleet.total_capacity();
        const double lo = fleet.units[0].p_min + 1e-6;
        if (hi - 1e-6 <= lo) continue;
        std::uniform_real_distribution<double> target_dist(lo, hi - 1e-6);
        const double p_target = target_dist(rng);
        const double cvar_s = p_target - r1 * p_target * p_target;

        const auto assumptions = check_assumptions(fleet, {r1, 0.0}, cvar_s);
        if (!assumptions.all_ok()) continue;

        ++solved;
        const double p_total = solve_total_power(cvar_s, r1);
        const double root_residual = std::abs(r1 * p_total * p_total - p_total + cvar_s);
        const auto d = dispatch(fleet, p_total);
        if (d.branch == DispatchBranch::MinClamped) ++min_clamped;
        const auto price = clearing_price(fleet, d, r1, cvar_s);
        const auto report = kkt_residuals(fleet, d, price, r1, cvar_s);

        const double sqrt_disc = std::sqrt(1.0 - 4.0 * r1 * cvar_s);
        int identity_matches = 0;
        for (const auto& u : fleet.units) {
            if (price.lambda == u.ask_price / sqrt_disc) ++identity_matches;
        }

        const bool ok = report.max_stationarity <= 1e-9 && report.max_comp_slackness <= 1e-9 &&
                        std::abs(report.balance) <= 1e-12 && root_residual <= 1e-12 &&
                        report.max_bound_violation <= 1e-12 && identity_matches == 1;
        if (!ok) {
            ++failures;
            if (first_failure.empty()) {
                std::ostringstream what;
                what << "stationarity=" << report.max_stationarity
                     << " slack=" << report.max_comp_slackness << " balance=" << report.balance
                     << " root=" << root_residual << " bounds=" << report.max_bound_violation
                     << " identity_matches=" << identity_matches;
                first_failure = what.str();
            }
        }
    }
    const double seconds = elapsed_seconds(start);
    std::ostringstream detail;
    detail << failures << "/1000 failed, " << min_clamped << " min-clamped, " << seconds << "s";
    if (!first_failure.empty()) detail << "; first: " << first_failure;
    return {failures == 0 && seconds < 10.0, detail.str()};
}

// ---------------------------------------------------------------------------
// 4. Brute-force dispatch equivalence
// ---------------------------------------------------------------------------
double grid_search_cost(const Fleet& fleet, double p_total, double resolution) {
    const std::size_t n = fleet.size();
    double best = std::numeric_limits<double>::infinity();
    const double slack = 1e-9;
    const auto axis = [&](std::size_t i) {
        std::vector<double> values;
        for (double v = 0.0; v < fleet.units[i].p_max; v += resolution) values.push_back(v);
        values.push_back(fleet.units[i].p_max);
        return values;
    };
    if (n == 1) {
        if (p_total <= fleet.units[0].p_max + slack) best = fleet.units[0].ask_price * p_total;
        return best;
    }
    if (n == 2) {
        for (double p1 : axis(0)) {
            const double p2 = p_total - p1;
            if (p2 < -slack || p2 > fleet.units[1].p_max + slack) continue;
            best = std::min(best, fleet.units[0].ask_price * p1 + fleet.units[1].ask_price * p2);
        }
        return best;
    }
    for (double p1 : axis(0)) {
        for (double p2 : axis(1)) {
            const double p3 = p_total - p1 - p2;
            if (p3 < -slack || p3 > fleet.units[2].p_max + slack) continue;
            best = std::min(best, fleet.units[0].ask_price * p1 + fleet.units[1].ask_price * p2 +
                                      fleet.units[2].ask_price * p3);
        }
    }
    return best;
}

Outcome criterion_brute_force() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(31337);
    std::uniform_int_distribution<std::size_t> n_dist(1, 3);
    std::uniform_real_distribution<double> price_dist(5.0, 90.0);
    std::uniform_real_distribution<double> cap_dist(0.05, 0.4);
    const double resolution = 1e-3;
    int checked = 0;
    int failures = 0;
    while (checked < 50) {
        const std::size_t n = n_dist(rng);
        std::vector<double> prices(n);
        for (auto& p : prices) p = price_dist(rng);
        std::sort(prices.begin(), prices.end());
        bool spread = true;
        for (std::size_t i = 0; i + 1 < n; ++i) spread &= prices[i + 1] - prices[i] > 1e-3;
        if (!spread) continue;
        Fleet fleet;
        for (std::size_t i = 0; i < n; ++i) fleet.units.push_back({prices[i], 0.0, cap_dist(rng)});
        fleet.renewable_price = prices[0] * 0.5;
        std::uniform_real_distribution<double> target(0.0, fleet.total_capacity());
        const double p_total = target(rng);

        const auto d = dispatch(fleet, p_total);
        double engine_cost = 0.0;
        for (std::size_t i = 0; i < n; ++i) engine_cost += fleet.units[i].ask_price * d.outputs[i];
        const double grid_cost = grid_search_cost(fleet, p_total, resolution);
        ++checked;
        const bool ok = engine_cost <= grid_cost + 1e-9 &&
                        std::abs(engine_cost - grid_cost) <= prices.back() * resolution;
        if (!ok) ++failures;
    }
    const double seconds = elapsed_seconds(start);
    std::ostringstream detail;
    detail << failures << "/50 instances off by more than one resolution step, " << seconds << "s";
    return {failures == 0 && seconds < 30.0, detail.str()};
}

// ---------------------------------------------------------------------------
// 5-8. Case trends at the experiment defaults
// ---------------------------------------------------------------------------
std::vector<double> lambdas_of(const SweepResult& result) {
    std::vector<double> lambdas;
    for (const auto& point : result.points) {
        if (!point.clearing.feasible) return {};
        lambdas.push_back(point.clearing.price->lambda);
    }
    return lambdas;
}

Outcome criterion_case1() {
    const auto start = std::chrono::steady_clock::now();
    const auto result = run_case_sweep(CaseId::I, default_experiment_config());
    const auto lambdas = lambdas_of(result);
    if (lambdas.size() != 10) return {false, "infeasible point in the sweep"};
    bool monotone = true;
    for (std::size_t i = 0; i + 1 < lambdas.size(); ++i) monotone &= lambdas[i + 1] <= lambdas[i];
    const double seconds = elapsed_seconds(start);
    std::ostringstream detail;
    detail << "lambda " << lambdas.front() << " -> " << lambdas.back() << ", non-increasing="
           << (monotone ? "yes" : "no") << ", " << seconds << "s";
    return {monotone && seconds < 30.0, detail.str()};
}

Outcome criterion_case2() {
    const auto result = run_case_sweep(CaseId::II, default_experiment_config());
    const auto lambdas = lambdas_of(result);
    if (lambdas.size() != 10) return {false, "infeasible point in the sweep"};
    bool ok = true;
    for (std::size_t i = 0; i + 1 < lambdas.size(); ++i) ok &= lambdas[i + 1] >= lambdas[i] - 0.5;
    std::ostringstream detail;
    detail << "lambda " << lambdas.front() << " -> " << lambdas.back()
           << ", non-decreasing within 0.5=" << (ok ? "yes" : "no");
    return {ok, detail.str()};
}

Outcome criterion_case3() {
    const auto result = run_case_sweep(CaseId::III, default_experiment_config());
    const auto lambdas = lambdas_of(result);
    if (lambdas.size() != 10) return {false, "infeasible point in the sweep"};
    const double interior_min = *std::min_element(lambdas.begin() + 1, lambdas.end() - 1);
    const bool dip = interior_min < lambdas.front() && lambdas.back() > interior_min;
    std::ostringstream detail;
    detail << "first=" << lambdas.front() << " min=" << interior_min << " last=" << lambdas.back();
    return {dip, detail.str()};
}

Outcome criterion_case4() {
    const auto result = run_case_sweep(CaseId::IV, default_experiment_config());
    if (result.points.size() != 10) return {false, "wrong grid length"};
    bool feasible = true;
    bool increasing = true;
    bool cvar_identical = true;
    bool identity = true;
    const double cvar0 = result.points.front().clearing.cvar_s;
    double prev = -std::numeric_limits<double>::infinity();
    for (const auto& point : result.points) {
        if (!point.clearing.feasible) {
            feasible = false;
            break;
        }
        const double lambda = point.clearing.price->lambda;
        increasing &= lambda > prev;
        prev = lambda;
        cvar_identical &= point.clearing.cvar_s == cvar0;
        const double sqrt_disc = std::sqrt(1.0 - 4.0 * point.r1 * point.clearing.cvar_s);
        int matches = 0;
        for (const auto& u : result.config_echo.fleet.units) {
            if (lambda == u.ask_price / sqrt_disc) ++matches;
        }
        identity &= matches == 1;
    }
    std::ostringstream detail;
    detail << "strictly-increasing=" << (increasing ? "yes" : "no")
           << " cvar-bitwise-equal=" << (cvar_identical ? "yes" : "no")
           << " price-identity=" << (identity ? "yes" : "no");
    return {feasible && increasing && cvar_identical && identity, detail.str()};
}

// ---------------------------------------------------------------------------
// 9. Infeasibility detection on the unscaled fleet
// ---------------------------------------------------------------------------
Outcome criterion_infeasibility() {
    const auto fleet = reference_fleet();
    const auto hc = clear_hour(fleet, {0.0, 0.0}, {0.7, 0.1, true}, {0.0, 0.0, true},
                               RiskLevel(0.9), 200000, 20240601);
    const double oracle = gaussian_cvar(0.7, 0.1, RiskLevel(0.9));
    const bool flagged = !hc.feasible && !hc.assumptions.a1b_ok;
    std::ostringstream detail;
    detail << "cvar_s=" << hc.cvar_s << " (oracle " << oracle << ") vs capacity "
           << fleet.total_capacity() << ", flagged=" << (flagged ? "yes" : "no");
    return {flagged && oracle > fleet.total_capacity() && hc.cvar_s > fleet.total_capacity(),
            detail.str()};
}

// ---------------------------------------------------------------------------
// 10. Determinism: byte-identical files and parallel invariance
// ---------------------------------------------------------------------------
std::string file_bytes(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Outcome criterion_determinism() {
    std::mt19937_64 token(std::random_device{}());
    const fs::path dir = fs::temp_directory_path() / ("dayahead_accept_" + std::to_string(token()));
    fs::create_directories(dir);
    const auto cleanup = [&dir] {
        std::error_code ec;
        fs::remove_all(dir, ec);
    };

    const auto run_sweep_cli = [&dir](const std::string& name) {
        const auto out_path = (dir / name).string();
        std::ostringstream sink;
        const int status = run_command(
            {"dayahead", "sweep", "--case", "I", "--seed", "123", "--out", out_path}, sink, sink);
        return std::pair<int, std::string>(status, out_path);
    };
    const auto [status_a, path_a] = run_sweep_cli("a.csv");
    const auto [status_b, path_b] = run_sweep_cli("b.csv");
    const bool files_equal = status_a == 0 && status_b == 0 &&
                             file_bytes(path_a) == file_bytes(path_b) &&
                             file_bytes(path_a + ".meta.json") == file_bytes(path_b + ".meta.json");

    auto cfg = default_experiment_config();
    cfg.n_samples = 50000;
    auto parallel_cfg = cfg;
    parallel_cfg.threads = 4;
    std::ostringstream serial_csv;
    std::ostringstream parallel_csv;
    write_sweep_csv(run_case_sweep(CaseId::III, cfg), serial_csv);
    write_sweep_csv(run_case_sweep(CaseId::III, parallel_cfg), parallel_csv);
    const bool parallel_equal = serial_csv.str() == parallel_csv.str();

    cleanup();
    std::ostringstream detail;
    detail << "rerun-bytes-equal=" << (files_equal ? "yes" : "no")
           << " parallel-invariant=" << (parallel_equal ? "yes" : "no");
    return {files_equal && parallel_equal, detail.str()};
}

}  // namespace

int main() {
    Harness harness;
    harness.run(1, "cvar estimator within 0.01 of the gaussian oracle at n=1e6",
                criterion_estimator_accuracy);
    harness.run(2, "coherence axioms at 1e-9 relative error over 100 sample sets",
                criterion_coherence);
    harness.run(3, "kkt self-consistency over 1000 randomized feasible instances", criterion_kkt);
    harness.run(4, "dispatch matches 1e-3 grid search on 50 small fleets", criterion_brute_force);
    harness.run(5, "case I: lambda non-increasing across the renewable-mean grid",
                criterion_case1);
    harness.run(6, "case II: lambda non-decreasing across the std grid (0.5 tolerance)",
                criterion_case2);
    harness.run(7, "case III: price dips below the first point then rises", criterion_case3);
    harness.run(8, "case IV: lambda strictly increasing in r1 with identical cvar",
                criterion_case4);
    harness.run(9, "unscaled fleet with zero renewable is flagged infeasible",
                criterion_infeasibility);
    harness.run(10, "byte-identical reruns and parallel-degree invariance", criterion_determinism);

    if (!harness.all_pass()) {
        std::cout << "acceptance: FAILURES PRESENT" << std::endl;
        return 1;
    }
    std::cout << "acceptance: all criteria passed" << std::endl;
    return 0;
}
