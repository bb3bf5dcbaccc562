#include "dayahead/scenario.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include "dayahead/errors.hpp"

namespace dayahead {

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

void check_model(const GaussianModel& model, const char* name) {
    if (model.std_dev < 0.0) {
        throw std::invalid_argument(std::string(name) + " model: std must be >= 0");
    }
}

double apply_model(const GaussianModel& model, double z) {
    const double value = model.mean + model.std_dev * z;
    return model.clip_at_zero ? std::max(0.0, value) : value;
}

double parse_field(std::string_view field, std::size_t line_no, const char* column) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        std::ostringstream msg;
        msg << "scenario file line " << line_no << ": column " << column << " is not a number: '"
            << field << "'";
        throw ParseError(msg.str());
    }
    if (value < 0.0) {
        std::ostringstream msg;
        msg << "scenario file line " << line_no << ": column " << column << " is negative ("
            << value << ")";
        throw ParseError(msg.str());
    }
    return value;
}

}  // namespace

std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint64_t index) {
    return splitmix64(splitmix64(master_seed) + index + 1);
}

NormalDraws sample_standard_normal_pairs(std::size_t n_samples, std::uint64_t seed) {
    if (n_samples == 0) throw std::invalid_argument("n_samples must be >= 1");
    NormalDraws draws;
    draws.seed = seed;
    draws.load_z.resize(n_samples);
    draws.renewable_z.resize(n_samples);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (std::size_t i = 0; i < n_samples; ++i) {
        draws.load_z[i] = normal(rng);
        draws.renewable_z[i] = normal(rng);
    }
    return draws;
}

ScenarioSet scenarios_from_draws(const NormalDraws& draws, const GaussianModel& load,
                                 const GaussianModel& renewable) {
    check_model(load, "load");
    check_model(renewable, "renewable");
    if (draws.size() == 0) throw std::invalid_argument("draws must be non-empty");
    ScenarioSet set;
    set.seed = draws.seed;
    set.pairs.resize(draws.size());
    for (std::size_t i = 0; i < draws.size(); ++i) {
        set.pairs[i] = {apply_model(load, draws.load_z[i]),
                        apply_model(renewable, draws.renewable_z[i])};
    }
    return set;
}

ScenarioSet sample_hour_scenarios(const GaussianModel& load, const GaussianModel& renewable,
                                  std::size_t n_samples, std::uint64_t seed) {
    check_model(load, "load");
    check_model(renewable, "renewable");
    return scenarios_from_draws(sample_standard_normal_pairs(n_samples, seed), load, renewable);
}

ScenarioSet load_scenarios_from_file(const std::filesystem::path& path) {
    std::ifstream file(path);
    if (!file.good()) {
        throw ParseError("scenario file not readable: " + path.string());
    }
    std::string line;
    if (!std::getline(file, line)) {
        throw ParseError("scenario file is empty: " + path.string());
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "p_d,p_r") {
        throw ParseError("scenario file line 1: expected header 'p_d,p_r', got '" + line + "'");
    }

    ScenarioSet set;
    std::size_t line_no = 1;
    while (std::getline(file, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
            std::ostringstream msg;
            msg << "scenario file line " << line_no << ": expected exactly two columns";
            throw ParseError(msg.str());
        }
        const double p_d = parse_field(std::string_view(line).substr(0, comma), line_no, "p_d");
        const double p_r = parse_field(std::string_view(line).substr(comma + 1), line_no, "p_r");
        set.pairs.push_back({p_d, p_r});
    }
    if (set.pairs.empty()) {
        throw ParseError("scenario file has no data rows: " + path.string());
    }
    return set;
}

void write_scenarios_to_file(const ScenarioSet& scenarios, const std::filesystem::path& path) {
    std::ofstream file(path);
    if (!file.good()) {
        throw ParseError("cannot open scenario file for writing: " + path.string());
    }
    file << "p_d,p_r\n";
    const auto put = [&file](double v) {
        char buf[64];
        const auto [end, ec] =
            std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
        file.write(buf, end - buf);
    };
    for (const auto& s : scenarios.pairs) {
        put(s.p_d);
        file.put(',');
        put(s.p_r);
        file.put('\n');
    }
}

NetLoadSamples net_load_transform(const ScenarioSet& scenarios, double r2) {
    if (r2 < 0.0) throw std::invalid_argument("net_load_transform: r2 must be >= 0");
    NetLoadSamples net;
    net.r2 = r2;
    net.values.resize(scenarios.n_samples());
    for (std::size_t i = 0; i < scenarios.n_samples(); ++i) {
        net.values[i] = net_load_value(scenarios.pairs[i].p_d, scenarios.pairs[i].p_r, r2);
    }
    return net;
}

}  // namespace dayahead
