#include "robustlm/autocovariance.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace robustlm {

namespace {

void check_lag(const TimeSeries& series, int h) {
    const int n = static_cast<int>(series.size());
    if (h < 0 || h > n - 2)
        throw std::invalid_argument("lag " + std::to_string(h) + " out of range for n = " +
                                    std::to_string(n) + " (need 0 <= h <= n-2)");
}

struct QnPair {
    double q_sum;   // Qn(u+v)
    double q_diff;  // Qn(u-v)
};

QnPair lagged_qn(const TimeSeries& series, int h, const QnConfig& config) {
    const std::size_t n = series.size();
    const std::size_t m = n - static_cast<std::size_t>(h);
    std::vector<double> sum(m), diff(m);
    for (std::size_t t = 0; t < m; ++t) {
        sum[t] = series.values[t] + series.values[t + h];
        diff[t] = series.values[t] - series.values[t + h];
    }
    return {qn_scale(sum, config), qn_scale(diff, config)};
}

}  // namespace

double sample_acvf(const TimeSeries& series, int h) {
    series.validate();
    check_lag(series, h);
    const std::size_t n = series.size();
    double mean = 0.0;
    for (double v : series.values) mean += v;
    mean /= static_cast<double>(n);
    double acc = 0.0;
    for (std::size_t t = 0; t + h < n; ++t)
        acc += (series.values[t] - mean) * (series.values[t + h] - mean);
    return acc / static_cast<double>(n);
}

double robust_acvf(const TimeSeries& series, int h, const QnConfig& config) {
    series.validate();
    check_lag(series, h);
    const QnPair q = lagged_qn(series, h, config);
    return 0.25 * (q.q_sum * q.q_sum - q.q_diff * q.q_diff);
}

double robust_acf(const TimeSeries& series, int h, const QnConfig& config) {
    series.validate();
    check_lag(series, h);
    const QnPair q = lagged_qn(series, h, config);
    const double s2 = q.q_sum * q.q_sum;
    const double d2 = q.q_diff * q.q_diff;
    if (s2 + d2 == 0.0)
        throw std::domain_error("robust_acf: both Qn terms vanish at lag " + std::to_string(h) +
                                " (degenerate lagged vectors)");
    return (s2 - d2) / (s2 + d2);
}

AcvfSequence acvf_curve(const TimeSeries& series, int max_lag, AcvfMethod method,
                        const QnConfig& config) {
    series.validate();
    check_lag(series, max_lag);
    AcvfSequence out;
    out.gamma.resize(static_cast<std::size_t>(max_lag) + 1);
    out.source =
        method == AcvfMethod::classical ? AcvfSource::classical_sample : AcvfSource::robust_q;
    for (int h = 0; h <= max_lag; ++h)
        out.gamma[h] = method == AcvfMethod::classical ? sample_acvf(series, h)
                                                       : robust_acvf(series, h, config);
    return out;
}

AcvfSequence robust_normalized_acvf_curve(const TimeSeries& series, int max_lag,
                                          const QnConfig& config) {
    series.validate();
    check_lag(series, max_lag);
    const double q0 = qn_scale(series.values, config);
    const double gamma0 = q0 * q0;
    AcvfSequence out;
    out.source = AcvfSource::robust_q;
    out.gamma.resize(static_cast<std::size_t>(max_lag) + 1);
    out.gamma[0] = gamma0;
    for (int h = 1; h <= max_lag; ++h) {
        const QnPair q = lagged_qn(series, h, config);
        const double s2 = q.q_sum * q.q_sum;
        const double d2 = q.q_diff * q.q_diff;
        if (s2 + d2 == 0.0)
            throw std::domain_error(
                "robust_normalized_acvf_curve: both Qn terms vanish at lag " +
                std::to_string(h));
        out.gamma[h] = (s2 - d2) / (s2 + d2) * gamma0;
    }
    return out;
}

}  // namespace robustlm
