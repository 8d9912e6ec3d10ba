#pragma once

#include "robustlm/arfima.hpp"
#include "robustlm/qn.hpp"

namespace robustlm {

// Classical sample ACVF with divisor n and the full-sample mean:
// (1/n) sum_{t=1}^{n-h} (x_t - xbar)(x_{t+h} - xbar). Requires
// 0 <= h <= n-2.
double sample_acvf(const TimeSeries& series, int h);

// Ma-Genton robust ACVF built on Qn:
//   gamma_Q(h) = 1/4 [Q^2_{n-h}(u+v) - Q^2_{n-h}(u-v)]
// with u the first and v the last n-h observations. The data is not
// centered (Qn is translation invariant).
double robust_acvf(const TimeSeries& series, int h, const QnConfig& config = {});

// Robust ACF:
//   rho_Q(h) = [Q^2(u+v) - Q^2(u-v)] / [Q^2(u+v) + Q^2(u-v)],
// always in [-1, 1]. Throws std::domain_error when both Qn terms vanish.
double robust_acf(const TimeSeries& series, int h, const QnConfig& config = {});

enum class AcvfMethod { classical, robust };

// Batch wrapper: gamma(0..maxLag) with the chosen estimator.
AcvfSequence acvf_curve(const TimeSeries& series, int max_lag, AcvfMethod method,
                        const QnConfig& config = {});

// Scale-stabilized robust curve gamma(h) = rho_Q(h) * gamma_Q(0). Under
// additive outliers every Qn term picks up a common inflation that cancels
// in rho_Q, so this curve keeps the spectral shape of the clean series;
// it feeds the robust pseudo-periodogram.
AcvfSequence robust_normalized_acvf_curve(const TimeSeries& series, int max_lag,
                                          const QnConfig& config = {});

}  // namespace robustlm
