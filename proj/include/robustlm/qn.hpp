#pragma once

#include <cstdint>
#include <span>

namespace robustlm {

// Rousseeuw-Croux Qn scale: c times the tau-th smallest of the C(n,2)
// pairwise absolute differences, tau = floor((C(n,2)+2)/4) + 1 (1-based).
struct QnConfig {
    double c = 2.2191;  // consistency constant for the normal distribution
};

// 1-based order-statistic index used by qn_scale for a sample of size n.
std::uint64_t qn_tau(std::uint64_t n);

// Exact Qn scale estimate. Uses pairwise enumeration with selection for
// small n and a value-space bisection select for large n; both return the
// identical order statistic. Throws std::invalid_argument for n < 2 or
// non-finite input.
double qn_scale(std::span<const double> values, const QnConfig& config = {});

}  // namespace robustlm
