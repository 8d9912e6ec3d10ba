#pragma once

#include <vector>

#include "robustlm/arfima.hpp"
#include "robustlm/qn.hpp"
#include "robustlm/spectral.hpp"

namespace robustlm {

// Bandwidth m' = floor(n^alpha) for the log-periodogram regression, or an
// explicit frequency count.
struct BandwidthSpec {
    double alpha = 0.7;
    int explicit_m = 0;  // > 0 overrides the alpha rule

    int resolve(int n) const;  // 1 <= m' <= n/2 enforced
};

struct RegressionDetail {
    std::vector<double> regressor;  // v_j over the retained frequencies
    double regressor_mean = 0.0;    // v-bar
    double s_vv = 0.0;
    double intercept = 0.0;
    int points_used = 0;
};

struct DEstimate {
    double d_hat = 0.0;
    double se_ols = 0.0;         // from the regression residual variance
    double se_asymptotic = 0.0;  // pi / sqrt(24 m')
    int m_prime_used = 0;
    int dropped_frequencies = 0;  // GPHR only: I_Q(w_j) <= 0 frequencies
    bool after_differencing = false;
    RegressionDetail detail;
};

// GPH estimator: regress log I_x(w_j) on v_j = log{4 sin^2(w_j/2)} over
// j = 1..m'; d_hat = -slope/2. Zero periodogram ordinates are rejected
// naming the offending frequency.
DEstimate gph(const TimeSeries& series, const BandwidthSpec& bw);

// GPHR: the same regression with the robust truncated pseudo-periodogram
// in place of I_x. Frequencies with I_Q(w_j) <= 0 are dropped and
// counted; fewer than 3 retained frequencies is a refusal.
DEstimate gph_robust(const TimeSeries& series, const BandwidthSpec& bw,
                     const WindowSpec& window, const QnConfig& config = {},
                     RobustSpectrumScale scale = RobustSpectrumScale::normalized_acf);

// GPHR evaluated on a precomputed robust ACVF curve (gamma(0..>=M)); used
// by the Monte Carlo harness to share one curve across lag windows.
// Identical output to gph_robust for the same series.
DEstimate gph_robust_from_curve(const AcvfSequence& robust_curve, int n,
                                const BandwidthSpec& bw, const WindowSpec& window);

enum class DMethod { gph, gphr };

// Difference once, estimate, and report d_hat + 1 with the differencing
// step marked.
DEstimate estimate_after_difference(const TimeSeries& series, DMethod method,
                                    const BandwidthSpec& bw, const WindowSpec& window,
                                    const QnConfig& config = {},
                                    RobustSpectrumScale scale =
                                        RobustSpectrumScale::normalized_acf);

}  // namespace robustlm
