#include "dayahead/risk.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace dayahead {

namespace {

// Smallest 1-based rank r with r >= alpha * n, evaluated with the same
// double comparison the empirical CDF uses so boundary cases are consistent.
std::size_t tail_rank(double alpha, std::size_t n) {
    const double target = alpha * static_cast<double>(n);
    auto rank = static_cast<std::size_t>(std::ceil(target));
    while (static_cast<double>(rank) < target) ++rank;
    while (rank > 1 && static_cast<double>(rank - 1) >= target) --rank;
    return std::clamp<std::size_t>(rank, 1, n);
}

std::vector<double> sorted_copy(std::span<const double> samples) {
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    return sorted;
}

RiskEstimate estimate_from_sorted(const std::vector<double>& sorted, RiskLevel level) {
    const std::size_t n = sorted.size();
    const double alpha = level.alpha();
    const double var = sorted[tail_rank(alpha, n) - 1];
    // alpha-tail average with the atom at VaR split fractionally, evaluated
    // in the Rockafellar-Uryasev form VaR + E[(z - VaR)^+] / (1 - alpha);
    // exact for constant samples and never below VaR.
    double excess = 0.0;
    for (auto it = sorted.rbegin(); it != sorted.rend() && *it > var; ++it) excess += *it - var;
    const double cvar = var + excess / ((1.0 - alpha) * static_cast<double>(n));
    return {var, cvar, alpha, n};
}

}  // namespace

RiskLevel::RiskLevel(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        throw std::invalid_argument("risk level alpha must lie strictly inside (0, 1)");
    }
}

double var_alpha(std::span<const double> samples, RiskLevel level) {
    if (samples.empty()) throw std::invalid_argument("var_alpha: empty sample set");
    const auto sorted = sorted_copy(samples);
    return sorted[tail_rank(level.alpha(), sorted.size()) - 1];
}

double cvar_alpha(std::span<const double> samples, RiskLevel level) {
    return estimate_risk(samples, level).cvar;
}

RiskEstimate estimate_risk(std::span<const double> samples, RiskLevel level) {
    if (samples.empty()) throw std::invalid_argument("cvar_alpha: empty sample set");
    return estimate_from_sorted(sorted_copy(samples), level);
}

double standard_normal_pdf(double z) {
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

double standard_normal_quantile(double p) {
    if (!(p > 0.0) || !(p < 1.0)) {
        throw std::invalid_argument("standard_normal_quantile: p must lie in (0, 1)");
    }
    // Acklam's rational approximation (relative error < 1.2e-9)
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;
    constexpr double p_high = 1.0 - p_low;

    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= p_high) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    // one Halley step against the erfc-based CDF brings this to ~1e-15
    const double err = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
    const double u = err * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    return x - u / (1.0 + 0.5 * x * u);
}

double gaussian_cvar(double mean, double std_dev, RiskLevel level) {
    if (std_dev < 0.0) throw std::invalid_argument("gaussian_cvar: std must be >= 0");
    if (std_dev == 0.0) return mean;
    const double z = standard_normal_quantile(level.alpha());
    return mean + std_dev * standard_normal_pdf(z) / (1.0 - level.alpha());
}

}  // namespace dayahead
