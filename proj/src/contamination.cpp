#include "robustlm/contamination.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "robustlm/rng.hpp"

namespace robustlm {

void OutlierSpec::validate() const {
    for (const auto& e : entries) {
        if (!std::isfinite(e.magnitude))
            throw std::invalid_argument("OutlierSpec: non-finite magnitude");
        if (!(e.probability >= 0.0 && e.probability <= 1.0))
            throw std::invalid_argument("OutlierSpec: probability must lie in [0,1]");
    }
}

double OutlierSpec::variance_uplift() const {
    double s = 0.0;
    for (const auto& e : entries) s += e.magnitude * e.magnitude * e.probability;
    return s;
}

ContaminatedSeries contaminate(const TimeSeries& series, const OutlierSpec& spec,
                               std::uint64_t seed) {
    series.validate();
    spec.validate();
    Rng rng(seed);
    ContaminatedSeries out;
    out.values = series.values;
    for (std::size_t t = 0; t < out.values.size(); ++t) {
        double shock = 0.0;
        for (std::size_t j = 0; j < spec.entries.size(); ++j) {
            const auto& e = spec.entries[j];
            const double u = rng.uniform01();
            // single draw realizing the Bernoulli(p) x Rademacher product:
            // P(+1) = P(-1) = p/2, P(0) = 1 - p
            int sign = 0;
            if (u < 0.5 * e.probability)
                sign = 1;
            else if (u > 1.0 - 0.5 * e.probability)
                sign = -1;
            if (sign != 0) {
                shock += sign * e.magnitude;
                out.hits.push_back({t, j, sign});
            }
        }
        if (shock != 0.0) out.values[t] += shock;
    }
    return out;
}

AcvfSequence contaminated_acvf(const AcvfSequence& base, const OutlierSpec& spec) {
    spec.validate();
    AcvfSequence out = base;
    if (!out.gamma.empty()) out.gamma[0] += spec.variance_uplift();
    return out;
}

double contaminated_spectrum(const ArfimaSpec& spec, const OutlierSpec& outliers,
                             double omega) {
    outliers.validate();
    return arfima_spectral_density(spec, omega) +
           outliers.variance_uplift() / (2.0 * std::numbers::pi);
}

}  // namespace robustlm
