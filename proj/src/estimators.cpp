#include "robustlm/estimators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "robustlm/autocovariance.hpp"

namespace robustlm {

namespace {

constexpr double kPi = std::numbers::pi;

int checked_m(int m, int n) {
    if (m < 1 || m > n / 2)
        throw std::invalid_argument("bandwidth m' = " + std::to_string(m) +
                                    " outside 1..n/2 for n = " + std::to_string(n));
    return m;
}

// OLS of y on v over the retained points; d_hat = -slope/2.
DEstimate log_regression(const std::vector<double>& v, const std::vector<double>& y,
                         int m_prime, int dropped) {
    const int m = static_cast<int>(v.size());
    if (m < 3)
        throw std::domain_error("log-periodogram regression refused: only " +
                                std::to_string(m) + " usable frequencies (dropped " +
                                std::to_string(dropped) + "), need at least 3");
    double v_mean = 0.0, y_mean = 0.0;
    for (int i = 0; i < m; ++i) {
        v_mean += v[i];
        y_mean += y[i];
    }
    v_mean /= m;
    y_mean /= m;
    double s_vv = 0.0, s_vy = 0.0;
    for (int i = 0; i < m; ++i) {
        s_vv += (v[i] - v_mean) * (v[i] - v_mean);
        s_vy += (v[i] - v_mean) * y[i];
    }
    if (s_vv <= 0.0) throw std::domain_error("log-periodogram regression: degenerate regressor");
    const double slope = s_vy / s_vv;
    const double intercept = y_mean - slope * v_mean;
    double rss = 0.0;
    for (int i = 0; i < m; ++i) {
        const double resid = y[i] - intercept - slope * v[i];
        rss += resid * resid;
    }
    const double sigma2 = m > 2 ? rss / (m - 2) : 0.0;

    // v_j = log{4 sin^2(w_j/2)} carries coefficient -d in the
    // log-periodogram model (it is twice log[2 sin(w_j/2)]), so the d
    // estimate is minus the OLS slope on v
    DEstimate est;
    est.d_hat = -slope;
    est.se_ols = std::sqrt(sigma2 / s_vv);
    est.se_asymptotic = kPi / std::sqrt(24.0 * static_cast<double>(m_prime));
    est.m_prime_used = m_prime;
    est.dropped_frequencies = dropped;
    est.detail = {v, v_mean, s_vv, intercept, m};
    return est;
}

double regressor_at(double omega) {
    const double s = 2.0 * std::sin(omega / 2.0);
    return std::log(s * s);
}

}  // namespace

int BandwidthSpec::resolve(int n) const {
    if (explicit_m > 0) return checked_m(explicit_m, n);
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("BandwidthSpec: alpha must lie in (0,1)");
    return checked_m(static_cast<int>(std::floor(std::pow(static_cast<double>(n), alpha))), n);
}

DEstimate gph(const TimeSeries& series, const BandwidthSpec& bw) {
    series.validate();
    const int n = static_cast<int>(series.size());
    const FourierGrid grid = FourierGrid::for_length(n);
    const int m_prime = bw.resolve(n);
    double msq = 0.0;
    for (double x : series.values) msq += x * x;
    msq /= n;
    std::vector<double> v(m_prime), y(m_prime);
    for (int j = 1; j <= m_prime; ++j) {
        const double omega = grid.omega(j);
        const double ordinate = periodogram_ordinate(series, omega);
        // a constant series produces ordinates at rounding-noise level
        // rather than exact zeros; gate relative to the mean square
        if (ordinate <= msq * 1e-25)
            throw std::domain_error("gph: periodogram is not positive at frequency j = " +
                                    std::to_string(j) + " (omega = " + std::to_string(omega) +
                                    "); series is degenerate");
        v[j - 1] = regressor_at(omega);
        y[j - 1] = std::log(ordinate);
    }
    return log_regression(v, y, m_prime, 0);
}

DEstimate gph_robust_from_curve(const AcvfSequence& robust_curve, int n,
                                const BandwidthSpec& bw, const WindowSpec& window) {
    const FourierGrid grid = FourierGrid::for_length(n);
    window.validate(n);
    if (robust_curve.max_lag() < window.M)
        throw std::invalid_argument("gph_robust_from_curve: curve shorter than window M");
    const int m_prime = bw.resolve(n);
    std::vector<double> weighted(static_cast<std::size_t>(window.M) + 1);
    for (int h = 0; h <= window.M; ++h)
        weighted[h] = lag_window_weight(window, h) * robust_curve.gamma[h];
    std::vector<double> v, y;
    v.reserve(m_prime);
    y.reserve(m_prime);
    int dropped = 0;
    for (int j = 1; j <= m_prime; ++j) {
        const double omega = grid.omega(j);
        double acc = weighted[0];
        for (int h = 1; h <= window.M; ++h) acc += 2.0 * weighted[h] * std::cos(h * omega);
        const double ordinate = acc / (2.0 * kPi);
        if (ordinate <= 0.0) {
            ++dropped;
            continue;
        }
        v.push_back(regressor_at(omega));
        y.push_back(std::log(ordinate));
    }
    return log_regression(v, y, m_prime, dropped);
}

DEstimate gph_robust(const TimeSeries& series, const BandwidthSpec& bw,
                     const WindowSpec& window, const QnConfig& config,
                     RobustSpectrumScale scale) {
    series.validate();
    const int n = static_cast<int>(series.size());
    window.validate(n);
    if (n - window.M < 2)
        throw std::invalid_argument("gph_robust: M = " + std::to_string(window.M) +
                                    " leaves fewer than 2 lagged observations");
    const AcvfSequence curve = scale == RobustSpectrumScale::normalized_acf
                                   ? robust_normalized_acvf_curve(series, window.M, config)
                                   : acvf_curve(series, window.M, AcvfMethod::robust, config);
    return gph_robust_from_curve(curve, n, bw, window);
}

DEstimate estimate_after_difference(const TimeSeries& series, DMethod method,
                                    const BandwidthSpec& bw, const WindowSpec& window,
                                    const QnConfig& config, RobustSpectrumScale scale) {
    if (series.size() < 3)
        throw std::invalid_argument("estimate_after_difference: need at least 3 observations");
    const TimeSeries w = difference(series);
    DEstimate est =
        method == DMethod::gph ? gph(w, bw) : gph_robust(w, bw, window, config, scale);
    est.d_hat += 1.0;
    est.after_differencing = true;
    return est;
}

}  // namespace robustlm
