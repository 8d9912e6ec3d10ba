#include "robustlm/qn.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace robustlm {

namespace {

// #{(i<j): y[j] - y[i] <= v} for ascending y, via a two-pointer sweep.
std::uint64_t count_pairs_below(const std::vector<double>& y, double v) {
    std::uint64_t count = 0;
    std::size_t i = 0;
    for (std::size_t j = 1; j < y.size(); ++j) {
        while (i < j && y[j] - y[i] > v) ++i;
        count += j - i;
    }
    return count;
}

// smallest pairwise difference strictly above v; y ascending
double smallest_diff_above(const std::vector<double>& y, double v) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t i = 0;
    for (std::size_t j = 1; j < y.size(); ++j) {
        while (i < j && y[j] - y[i] > v) ++i;
        // i is the first index with y[j] - y[i] <= v, so i-1 gives the
        // tightest difference still above v for this j
        if (i > 0 && y[j] - y[i - 1] > v) best = std::min(best, y[j] - y[i - 1]);
    }
    return best;
}

// tau-th smallest pairwise difference of ascending y, by bisection on the
// difference value followed by explicit enumeration of the surviving
// candidate band. Every candidate is the plain double subtraction
// y[j] - y[i], so the selected value is bit-identical to what full
// enumeration would produce.
double select_pairwise(const std::vector<double>& y, std::uint64_t tau) {
    const std::size_t n = y.size();
    double lo = 0.0;
    double hi = y[n - 1] - y[0];
    std::uint64_t count_lo = count_pairs_below(y, 0.0);  // ties at zero
    if (count_lo >= tau) return 0.0;
    std::uint64_t count_hi = count_pairs_below(y, hi);
    constexpr std::uint64_t kEnumerateLimit = 8192;
    while (count_hi - count_lo > kEnumerateLimit) {
        // interpolate the probe from the counts, safeguarded away from the
        // interval ends so convergence stays bisection-like in the worst
        // case
        double frac = (static_cast<double>(tau) - static_cast<double>(count_lo)) /
                      static_cast<double>(count_hi - count_lo);
        frac = std::min(0.9, std::max(0.1, frac));
        const double mid = lo + frac * (hi - lo);
        if (mid <= lo || mid >= hi) {
            // the value interval collapsed onto a tie block; step to the
            // next difference that actually occurs in the data
            const double next = smallest_diff_above(y, lo);
            const std::uint64_t c = count_pairs_below(y, next);
            if (c >= tau) return next;
            lo = next;
            count_lo = c;
            continue;
        }
        const std::uint64_t c = count_pairs_below(y, mid);
        if (c >= tau) {
            hi = mid;
            count_hi = c;
        } else {
            lo = mid;
            count_lo = c;
        }
    }
    // collect differences in (lo, hi] and select rank tau - count_lo
    std::vector<double> candidates;
    std::size_t i_lo = 0, i_hi = 0;
    for (std::size_t j = 1; j < n; ++j) {
        while (i_hi < j && y[j] - y[i_hi] > hi) ++i_hi;
        while (i_lo < j && y[j] - y[i_lo] > lo) ++i_lo;
        for (std::size_t i = i_hi; i < i_lo; ++i) candidates.push_back(y[j] - y[i]);
    }
    const std::uint64_t rank = tau - count_lo;  // 1-based within candidates
    auto nth = candidates.begin() + static_cast<std::ptrdiff_t>(rank - 1);
    std::nth_element(candidates.begin(), nth, candidates.end());
    return *nth;
}

}  // namespace

std::uint64_t qn_tau(std::uint64_t n) {
    const std::uint64_t pairs = n * (n - 1) / 2;
    return (pairs + 2) / 4 + 1;
}

double qn_scale(std::span<const double> values, const QnConfig& config) {
    const std::size_t n = values.size();
    if (n < 2) {
        throw std::invalid_argument("qn_scale: need at least 2 observations, got " +
                                    std::to_string(n));
    }
    for (double v : values) {
        if (!std::isfinite(v)) throw std::invalid_argument("qn_scale: non-finite value");
    }
    const std::uint64_t tau = qn_tau(n);

    if (n <= 80) {
        std::vector<double> dist;
        dist.reserve(n * (n - 1) / 2);
        for (std::size_t j = 1; j < n; ++j)
            for (std::size_t i = 0; i < j; ++i) dist.push_back(std::abs(values[i] - values[j]));
        auto nth = dist.begin() + static_cast<std::ptrdiff_t>(tau - 1);
        std::nth_element(dist.begin(), nth, dist.end());
        return config.c * *nth;
    }

    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    return config.c * select_pairwise(sorted, tau);
}

}  // namespace robustlm
