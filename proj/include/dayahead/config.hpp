#pragma once

#include <cstdint>
#include <filesystem>

#include <json.hpp>

#include "dayahead/clearing.hpp"
#include "dayahead/scenario.hpp"

namespace dayahead {

/// Fully resolved run configuration. The fleet is stored unscaled; the
/// capacity scale factor is applied when the run starts.
struct RunConfig {
    Fleet fleet;
    GridParams grid;
    double alpha = 0.9;
    GaussianModel load{0.7, 0.1, true};
    GaussianModel renewable{0.5, 0.1, true};
    std::size_t samples = 200000;
    std::uint64_t seed = 20240601;
    double fleet_scale = 1.0;

    bool operator==(const RunConfig&) const = default;
};

/// Defaults: the built-in six-unit fleet, r1 = 0.04, r2 = 0.05, alpha = 0.9,
/// load (0.7, 0.1), renewable (0.5, 0.1), 2e5 samples.
RunConfig default_run_config(double fleet_scale);

/// Overlays a JSON document onto `base`. Unknown keys are rejected; every
/// type invariant is checked. Throws ParseError naming the offending field.
RunConfig apply_config_json(const nlohmann::json& doc, RunConfig base);

RunConfig load_config_file(const std::filesystem::path& path, RunConfig base);

/// Serialization used for the output metadata echo; re-parses to an
/// identical RunConfig.
nlohmann::ordered_json config_to_json(const RunConfig& config);

/// Throws ParseError naming the first violated field.
void validate_config(const RunConfig& config);

}  // namespace dayahead
