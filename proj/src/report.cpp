#include "dayahead/report.hpp"

#include <charconv>
#include <sstream>
#include <string>

namespace dayahead {

namespace {

std::string format_with(double value, auto... spec) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value, spec...);
    return std::string(buf, end);
}

void put_optional(std::ostream& out, const std::optional<double>& value) {
    if (value) out << format_g17(*value);
}

}  // namespace

std::string format_g17(double value) {
    return format_with(value, std::chars_format::general, 17);
}

std::string format_shortest(double value) {
    return format_with(value);
}

std::string hourly_csv_header(std::size_t n_units) {
    std::string header = "hour,cvar_s,p_total,lambda,cost,feasible";
    for (std::size_t i = 1; i <= n_units; ++i) header += ",p_" + std::to_string(i);
    return header;
}

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
    out << kSweepCsvHeader << '\n';
    for (std::size_t i = 0; i < result.points.size(); ++i) {
        const auto& point = result.points[i];
        const auto& hc = point.clearing;
        out << to_string(result.case_id) << ',' << i << ',' << format_g17(point.renewable_mean)
            << ',' << format_g17(point.renewable_std) << ',' << format_g17(point.r1) << ','
            << format_g17(hc.cvar_s) << ',';
        put_optional(out, hc.p_total);
        out << ',';
        if (hc.dispatch) out << hc.dispatch->marginal_index;
        out << ',';
        if (hc.dispatch) out << to_string(hc.dispatch->branch);
        out << ',';
        if (hc.price) out << format_g17(hc.price->lambda);
        out << ',';
        put_optional(out, hc.shortfall);
        out << ',';
        put_optional(out, hc.cost);
        out << ',' << (hc.feasible ? "true" : "false") << '\n';
    }
}

void write_hourly_csv(std::span<const HourlyClearing> hours, std::size_t n_units,
                      std::ostream& out) {
    out << hourly_csv_header(n_units) << '\n';
    for (const auto& hc : hours) {
        out << hc.hour << ',' << format_g17(hc.cvar_s) << ',';
        put_optional(out, hc.p_total);
        out << ',';
        if (hc.price) out << format_g17(hc.price->lambda);
        out << ',';
        put_optional(out, hc.cost);
        out << ',' << (hc.feasible ? "true" : "false");
        for (std::size_t i = 0; i < n_units; ++i) {
            out << ',';
            if (hc.dispatch) out << format_g17(hc.dispatch->outputs[i]);
        }
        out << '\n';
    }
}

std::string summarize(const HourlyClearing& hc) {
    std::ostringstream line;
    line << "hour " << hc.hour << ": feasible=" << (hc.feasible ? "true" : "false")
         << " cvar_s=" << format_shortest(hc.cvar_s);
    if (hc.feasible) {
        line << " p_total=" << format_shortest(*hc.p_total)
             << " lambda=" << format_shortest(hc.price->lambda) << " marginal_index="
             << hc.dispatch->marginal_index << " branch=" << to_string(hc.dispatch->branch)
             << " shortfall=" << format_shortest(*hc.shortfall)
             << " cost=" << format_shortest(*hc.cost);
    } else {
        line << " details=\"" << hc.assumptions.details << '"';
    }
    return line.str();
}

}  // namespace dayahead
