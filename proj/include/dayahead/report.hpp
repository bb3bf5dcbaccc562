#pragma once

#include <ostream>
#include <span>
#include <string>
#include <string_view>

#include "dayahead/experiments.hpp"

namespace dayahead {

/// 17 significant digits; round-trips every double exactly.
std::string format_g17(double value);

/// Shortest representation that round-trips; used for human-readable output.
std::string format_shortest(double value);

inline constexpr std::string_view kSweepCsvHeader =
    "case,point_index,sweep_mean,sweep_std,sweep_r1,cvar_s,p_total,marginal_index,branch,"
    "lambda,shortfall_diag,cost,feasible";

std::string hourly_csv_header(std::size_t n_units);

/// One row per sweep point; infeasible points keep their row with the
/// result columns empty.
void write_sweep_csv(const SweepResult& result, std::ostream& out);

void write_hourly_csv(std::span<const HourlyClearing> hours, std::size_t n_units,
                      std::ostream& out);

/// One-line human summary of a clearing (lambda, p_total, feasibility).
std::string summarize(const HourlyClearing& clearing);

}  // namespace dayahead
