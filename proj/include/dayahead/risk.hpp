#pragma once

#include <cstddef>
#include <span>

namespace dayahead {

/// Confidence level for the reliability constraint, strictly inside (0, 1).
class RiskLevel {
public:
    explicit RiskLevel(double alpha);

    double alpha() const { return alpha_; }

    bool operator==(const RiskLevel&) const = default;

private:
    double alpha_;
};

struct RiskEstimate {
    double var = 0.0;
    double cvar = 0.0;
    double alpha = 0.0;
    std::size_t n_samples = 0;
};

/// Empirical VaR: the smallest sample value z with empirical-CDF(z) >= alpha,
/// i.e. the ceil(alpha * n)-th order statistic.
double var_alpha(std::span<const double> samples, RiskLevel level);

/// Empirical CVaR: average of the upper (1 - alpha) probability tail, with
/// the atom at VaR split fractionally. Always >= var_alpha on the same input.
double cvar_alpha(std::span<const double> samples, RiskLevel level);

/// VaR and CVaR from one sort of the samples.
RiskEstimate estimate_risk(std::span<const double> samples, RiskLevel level);

/// Closed-form CVaR of an (un-clipped) Gaussian: mean + std * phi(z_a)/(1-a).
double gaussian_cvar(double mean, double std_dev, RiskLevel level);

/// Standard-normal quantile, accurate to ~1e-15 (rational approximation plus
/// one Halley refinement).
double standard_normal_quantile(double p);

double standard_normal_pdf(double z);

}  // namespace dayahead
