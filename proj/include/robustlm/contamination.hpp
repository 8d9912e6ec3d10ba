#pragma once

#include <cstdint>
#include <vector>

#include "robustlm/arfima.hpp"

namespace robustlm {

// Additive-outlier model Z_t = X_t + sum_j varpi_j Y_{j,t} where Y_{j,t}
// is the product of Bernoulli(p_j) and Rademacher variables, independent
// over t and j.
struct OutlierType {
    double magnitude = 0.0;    // varpi_j
    double probability = 0.0;  // p_j in [0,1]
};

struct OutlierSpec {
    std::vector<OutlierType> entries;

    void validate() const;
    // sum_j varpi_j^2 p_j, the variance added at lag zero
    double variance_uplift() const;
    bool empty() const { return entries.empty(); }
};

struct OutlierHit {
    std::size_t index;  // time t (0-based)
    std::size_t type;   // outlier type j
    int sign;           // +1 or -1
};

struct ContaminatedSeries {
    std::vector<double> values;
    std::vector<OutlierHit> hits;  // provenance, enables exact tests

    std::size_t size() const { return values.size(); }
    TimeSeries as_series() const { return {values, "contaminated"}; }
};

// Applies an independent shock field to the series; deterministic given
// seed. Each index receives, for each type j, +/-varpi_j with probability
// p_j/2 each.
ContaminatedSeries contaminate(const TimeSeries& series, const OutlierSpec& spec,
                               std::uint64_t seed);

// Proposition-style population effect: gamma_z(h) = gamma_x(h) except
// gamma_z(0) = gamma_x(0) + sum varpi_j^2 p_j.
AcvfSequence contaminated_acvf(const AcvfSequence& base, const OutlierSpec& spec);

// f_Z(w) = f_X(w) + (1/2pi) sum varpi_j^2 p_j.
double contaminated_spectrum(const ArfimaSpec& spec, const OutlierSpec& outliers,
                             double omega);

}  // namespace robustlm
