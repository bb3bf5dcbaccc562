#include "dayahead/config.hpp"

#include <fstream>
#include <set>
#include <string>

#include "dayahead/errors.hpp"
#include "dayahead/experiments.hpp"

namespace dayahead {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        if (!known.contains(key)) {
            throw ParseError("config: unknown key '" + (where.empty() ? key : where + "." + key) +
                             "'");
        }
    }
}

double get_number(const json& obj, const std::string& key, const std::string& where) {
    const auto& v = obj.at(key);
    if (!v.is_number()) {
        throw ParseError("config: " + where + " must be a number");
    }
    return v.get<double>();
}

std::uint64_t get_uint(const json& obj, const std::string& key, const std::string& where) {
    const auto& v = obj.at(key);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer()) {
        const auto i = v.get<std::int64_t>();
        if (i >= 0) return static_cast<std::uint64_t>(i);
    }
    throw ParseError("config: " + where + " must be a non-negative integer");
}

GaussianModel parse_model(const json& obj, const std::string& where, GaussianModel base) {
    if (!obj.is_object()) throw ParseError("config: " + where + " must be an object");
    reject_unknown_keys(obj, {"mean", "std"}, where);
    if (obj.contains("mean")) base.mean = get_number(obj, "mean", where + ".mean");
    if (obj.contains("std")) base.std_dev = get_number(obj, "std", where + ".std");
    if (base.std_dev < 0.0) throw ParseError("config: " + where + ".std must be >= 0");
    return base;
}

Fleet parse_fleet(const json& arr) {
    if (!arr.is_array() || arr.empty()) {
        throw ParseError("config: fleet must be a non-empty array");
    }
    Fleet fleet;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto& entry = arr[i];
        const std::string where = "fleet[" + std::to_string(i) + "]";
        if (!entry.is_object()) throw ParseError("config: " + where + " must be an object");
        reject_unknown_keys(entry, {"pi", "pmin", "pmax"}, where);
        for (const char* key : {"pi", "pmin", "pmax"}) {
            if (!entry.contains(key)) {
                throw ParseError("config: " + where + " is missing '" + key + "'");
            }
        }
        fleet.units.push_back({get_number(entry, "pi", where + ".pi"),
                               get_number(entry, "pmin", where + ".pmin"),
                               get_number(entry, "pmax", where + ".pmax")});
    }
    return fleet;
}

}  // namespace

RunConfig default_run_config(double fleet_scale) {
    RunConfig config;
    config.fleet = reference_fleet();
    config.grid = {0.04, 0.05};
    config.alpha = 0.9;
    config.load = {0.7, 0.1, true};
    config.renewable = {0.5, 0.1, true};
    config.samples = 200000;
    config.seed = 20240601;
    config.fleet_scale = fleet_scale;
    return config;
}

RunConfig apply_config_json(const nlohmann::json& doc, RunConfig base) {
    if (!doc.is_object()) throw ParseError("config: top-level document must be a JSON object");
    reject_unknown_keys(doc,
                        {"fleet", "renewable_price", "r1", "r2", "alpha", "load", "renewable",
                         "samples", "seed", "fleet_scale"},
                        "");

    if (doc.contains("fleet")) {
        const double keep_price = base.fleet.renewable_price;
        base.fleet = parse_fleet(doc.at("fleet"));
        base.fleet.renewable_price = keep_price;
    }
    if (doc.contains("renewable_price")) {
        base.fleet.renewable_price = get_number(doc, "renewable_price", "renewable_price");
    }
    if (doc.contains("r1")) base.grid.r1 = get_number(doc, "r1", "r1");
    if (doc.contains("r2")) base.grid.r2 = get_number(doc, "r2", "r2");
    if (doc.contains("alpha")) base.alpha = get_number(doc, "alpha", "alpha");
    if (doc.contains("load")) base.load = parse_model(doc.at("load"), "load", base.load);
    if (doc.contains("renewable")) {
        base.renewable = parse_model(doc.at("renewable"), "renewable", base.renewable);
    }
    if (doc.contains("samples")) {
        base.samples = static_cast<std::size_t>(get_uint(doc, "samples", "samples"));
    }
    if (doc.contains("seed")) {
        base.seed = get_uint(doc, "seed", "seed");
    }
    if (doc.contains("fleet_scale")) {
        base.fleet_scale = get_number(doc, "fleet_scale", "fleet_scale");
    }

    validate_config(base);
    return base;
}

RunConfig load_config_file(const std::filesystem::path& path, RunConfig base) {
    std::ifstream file(path);
    if (!file.good()) throw ParseError("config file not readable: " + path.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(file);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("config file " + path.string() + ": " + e.what());
    }
    return apply_config_json(doc, std::move(base));
}

nlohmann::ordered_json config_to_json(const RunConfig& config) {
    nlohmann::ordered_json doc;
    auto fleet = nlohmann::ordered_json::array();
    for (const auto& unit : config.fleet.units) {
        fleet.push_back({{"pi", unit.ask_price}, {"pmin", unit.p_min}, {"pmax", unit.p_max}});
    }
    doc["fleet"] = std::move(fleet);
    doc["renewable_price"] = config.fleet.renewable_price;
    doc["r1"] = config.grid.r1;
    doc["r2"] = config.grid.r2;
    doc["alpha"] = config.alpha;
    doc["load"] = {{"mean", config.load.mean}, {"std", config.load.std_dev}};
    doc["renewable"] = {{"mean", config.renewable.mean}, {"std", config.renewable.std_dev}};
    doc["samples"] = config.samples;
    doc["seed"] = config.seed;
    doc["fleet_scale"] = config.fleet_scale;
    return doc;
}

void validate_config(const RunConfig& config) {
    config.fleet.validate();
    config.grid.validate();
    if (!(config.alpha > 0.0) || !(config.alpha < 1.0)) {
        throw ParseError("alpha: must lie strictly inside (0, 1)");
    }
    if (config.load.std_dev < 0.0) throw ParseError("load.std: must be >= 0");
    if (config.renewable.std_dev < 0.0) throw ParseError("renewable.std: must be >= 0");
    if (config.samples < 1) throw ParseError("samples: must be >= 1");
    if (!(config.fleet_scale > 0.0)) throw ParseError("fleet_scale: must be > 0");
}

}  // namespace dayahead
