#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace dayahead {

/// Gaussian model for one stochastic input (load or renewable output).
/// With clip_at_zero set, samples are max(0, mean + std * Z); the clip puts
/// an atom at zero but keeps the support non-negative.
struct GaussianModel {
    double mean = 0.0;
    double std_dev = 0.0;
    bool clip_at_zero = true;

    bool operator==(const GaussianModel&) const = default;
};

/// One joint realization of consumer load and renewable output.
struct Scenario {
    double p_d = 0.0;
    double p_r = 0.0;

    bool operator==(const Scenario&) const = default;
};

/// Joint (load, renewable) samples for a single hour. Immutable once built.
struct ScenarioSet {
    std::vector<Scenario> pairs;
    std::uint64_t seed = 0;

    std::size_t n_samples() const { return pairs.size(); }

    bool operator==(const ScenarioSet&) const = default;
};

/// Standard-normal draw pairs, kept separate from the models so the same
/// draws can be reused across every point of a parameter sweep.
struct NormalDraws {
    std::vector<double> load_z;
    std::vector<double> renewable_z;
    std::uint64_t seed = 0;

    std::size_t size() const { return load_z.size(); }
};

/// Net-load samples s = p_d + r2 * p_r^2 - p_r. Values may be negative.
struct NetLoadSamples {
    std::vector<double> values;
    double r2 = 0.0;
};

/// Net-load transform of one scenario. Single definition so recomputation
/// is bit-identical everywhere.
inline double net_load_value(double p_d, double p_r, double r2) {
    return p_d + r2 * p_r * p_r - p_r;
}

/// Deterministic sub-seed for an independent stream (hour or sweep point).
std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint64_t index);

NormalDraws sample_standard_normal_pairs(std::size_t n_samples, std::uint64_t seed);

ScenarioSet scenarios_from_draws(const NormalDraws& draws, const GaussianModel& load,
                                 const GaussianModel& renewable);

/// Draw n joint samples; deterministic for fixed (models, n, seed).
ScenarioSet sample_hour_scenarios(const GaussianModel& load, const GaussianModel& renewable,
                                  std::size_t n_samples, std::uint64_t seed);

/// Reads the scenario CSV (`p_d,p_r` header). Rejects negatives, non-numeric
/// fields and empty files; errors name the offending line.
ScenarioSet load_scenarios_from_file(const std::filesystem::path& path);

void write_scenarios_to_file(const ScenarioSet& scenarios, const std::filesystem::path& path);

/// Elementwise net-load transform; output length equals input length.
NetLoadSamples net_load_transform(const ScenarioSet& scenarios, double r2);

}  // namespace dayahead
