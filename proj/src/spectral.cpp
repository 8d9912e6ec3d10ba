#include "robustlm/spectral.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "robustlm/quadrature.hpp"

namespace robustlm {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

FourierGrid FourierGrid::for_length(int n) {
    if (n < 2) throw std::invalid_argument("FourierGrid: series length must be >= 2");
    return {n};
}

double FourierGrid::omega(int j) const {
    if (j < 1 || j > count())
        throw std::invalid_argument("FourierGrid: frequency index " + std::to_string(j) +
                                    " outside 1.." + std::to_string(count()));
    return kTwoPi * static_cast<double>(j) / static_cast<double>(n);
}

std::string window_kind_name(WindowKind kind) {
    switch (kind) {
        case WindowKind::truncated: return "truncated";
        case WindowKind::bartlett: return "bartlett";
        case WindowKind::parzen: return "parzen";
        case WindowKind::tukey_hamming: return "tukey-hamming";
    }
    return "?";
}

WindowKind window_kind_from_name(const std::string& name) {
    if (name == "truncated") return WindowKind::truncated;
    if (name == "bartlett") return WindowKind::bartlett;
    if (name == "parzen") return WindowKind::parzen;
    if (name == "tukey-hamming" || name == "tukey_hamming") return WindowKind::tukey_hamming;
    throw std::invalid_argument("unknown lag window '" + name +
                                "' (expected truncated|bartlett|parzen|tukey-hamming)");
}

WindowSpec WindowSpec::from_beta(WindowKind kind, int n, double beta) {
    if (!(beta > 0.0 && beta < 1.0))
        throw std::invalid_argument("WindowSpec: beta must lie in (0,1)");
    const int m = static_cast<int>(std::floor(std::pow(static_cast<double>(n), beta)));
    WindowSpec spec{kind, m};
    spec.validate(n);
    return spec;
}

WindowSpec WindowSpec::from_breakdown(WindowKind kind, int n, int expected_outliers) {
    if (expected_outliers < 0)
        throw std::invalid_argument("WindowSpec: expected outlier count must be >= 0");
    const int m = n - 4 * expected_outliers - 1;
    if (m < 1)
        throw std::invalid_argument(
            "WindowSpec: breakdown rule leaves no usable lags for n = " + std::to_string(n) +
            " with " + std::to_string(expected_outliers) + " outliers");
    WindowSpec spec{kind, std::min(m, n - 2)};
    spec.validate(n);
    return spec;
}

void WindowSpec::validate(int n) const {
    if (M < 1 || M >= n)
        throw std::invalid_argument("WindowSpec: truncation point M = " + std::to_string(M) +
                                    " must satisfy 1 <= M < n = " + std::to_string(n));
}

double lag_window_weight(const WindowSpec& spec, int h) {
    if (h < 0) throw std::invalid_argument("lag_window_weight: h must be >= 0");
    if (h > spec.M) return 0.0;
    const double r = static_cast<double>(h) / static_cast<double>(spec.M);
    switch (spec.kind) {
        case WindowKind::truncated:
            return 1.0;
        case WindowKind::bartlett:
            return 1.0 - r;
        case WindowKind::tukey_hamming:
            return 0.54 + 0.46 * std::cos(kPi * r);
        case WindowKind::parzen:
            if (2 * h <= spec.M) return 1.0 - 6.0 * r * r + 6.0 * r * r * r;
            return 2.0 * (1.0 - r) * (1.0 - r) * (1.0 - r);
    }
    return 0.0;
}

double periodogram_ordinate(const TimeSeries& series, double omega) {
    const std::size_t n = series.size();
    // rotation recurrence for e^{i w t}, t = 1..n
    const double c1 = std::cos(omega), s1 = std::sin(omega);
    double c = 1.0, s = 0.0;
    double re = 0.0, im = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        const double cn = c * c1 - s * s1;
        const double sn = s * c1 + c * s1;
        c = cn;
        s = sn;
        re += series.values[t] * c;
        im += series.values[t] * s;
    }
    return (re * re + im * im) / (kTwoPi * static_cast<double>(n));
}

SpectralEstimate periodogram(const TimeSeries& series, const FourierGrid& grid) {
    series.validate();
    if (grid.n != static_cast<int>(series.size()))
        throw std::invalid_argument("periodogram: grid length " + std::to_string(grid.n) +
                                    " does not match series length " +
                                    std::to_string(series.size()));
    SpectralEstimate est;
    est.grid = grid;
    est.method = SpectralMethod::classical_periodogram;
    est.mean_centered = false;
    est.values.resize(static_cast<std::size_t>(grid.count()));
    for (int j = 1; j <= grid.count(); ++j)
        est.values[j - 1] = periodogram_ordinate(series, grid.omega(j));
    return est;
}

SpectralEstimate cosine_sum_spectrum(const AcvfSequence& acvf, const WindowSpec& window,
                                     const FourierGrid& grid) {
    if (acvf.max_lag() < window.M)
        throw std::invalid_argument("cosine_sum_spectrum: ACVF has max lag " +
                                    std::to_string(acvf.max_lag()) + " < window M = " +
                                    std::to_string(window.M));
    SpectralEstimate est;
    est.grid = grid;
    est.window = window;
    est.method = acvf.source == AcvfSource::robust_q ? SpectralMethod::robust_pseudo
                                                     : SpectralMethod::classical_periodogram;
    est.values.resize(static_cast<std::size_t>(grid.count()));
    std::vector<double> weighted(static_cast<std::size_t>(window.M) + 1);
    for (int h = 0; h <= window.M; ++h)
        weighted[h] = lag_window_weight(window, h) * acvf.gamma[h];
    for (int j = 1; j <= grid.count(); ++j) {
        const double w = grid.omega(j);
        double acc = weighted[0];
        for (int h = 1; h <= window.M; ++h) acc += 2.0 * weighted[h] * std::cos(h * w);
        const double value = acc / kTwoPi;
        est.values[j - 1] = value;
        if (value <= 0.0) ++est.non_positive_count;
    }
    return est;
}

SpectralEstimate robust_pseudo_periodogram(const TimeSeries& series, const WindowSpec& window,
                                           const QnConfig& config, const FourierGrid& grid,
                                           RobustSpectrumScale scale) {
    series.validate();
    const int n = static_cast<int>(series.size());
    if (grid.n != n)
        throw std::invalid_argument("robust_pseudo_periodogram: grid/series length mismatch");
    window.validate(n);
    if (n - window.M < 2)
        throw std::invalid_argument(
            "robust_pseudo_periodogram: truncation point M = " + std::to_string(window.M) +
            " leaves fewer than 2 lagged observations (n = " + std::to_string(n) + ")");
    const AcvfSequence curve =
        scale == RobustSpectrumScale::normalized_acf
            ? robust_normalized_acvf_curve(series, window.M, config)
            : acvf_curve(series, window.M, AcvfMethod::robust, config);
    SpectralEstimate est = cosine_sum_spectrum(curve, window, grid);
    est.method = SpectralMethod::robust_pseudo;
    return est;
}

// ---------------------------------------------------------------------------
// Hurvich-Beltrao diagnostics.
//
// Both integrands are even once the two L denominators (2pi j -+ w)^{-2}
// are folded onto [0, inf). The only delicate features are the removable
// point at w = a = 2pi j (sin^2 vanishes there) and the slowly decaying
// oscillatory tail. The tail beyond W0 is handled by splitting
// sin^2(w/2) = 1/2 - cos(w)/2: the mean half maps to a finite interval
// under u = 1/w, and the cosine half is integrated by parts twice so that
// only explicit boundary terms and an O(G'(W0)) remainder are left.
// ---------------------------------------------------------------------------

namespace {

struct HbPieces {
    double value = 0.0;
    double error = 0.0;
    int evaluations = 0;
};

enum class HbKind { l, lstar };

// folded smooth factor multiplying sin^2(w/2) on (W0, inf)
double hb_tail_g(HbKind kind, double a, double d, double w) {
    const double power = std::pow(w / a, -2.0 * d);
    if (kind == HbKind::l) {
        const double dm = w - a, dp = w + a;
        return power * (1.0 / (dm * dm) + 1.0 / (dp * dp));
    }
    return power / ((a - w) * (a + w));
}

double hb_tail_g_deriv(HbKind kind, double a, double d, double w) {
    const double power = std::pow(w / a, -2.0 * d);
    if (kind == HbKind::l) {
        const double dm = w - a, dp = w + a;
        const double base = 1.0 / (dm * dm) + 1.0 / (dp * dp);
        return power * ((-2.0 * d / w) * base - 2.0 / (dm * dm * dm) - 2.0 / (dp * dp * dp));
    }
    const double denom = (a - w) * (a + w);
    return power * ((-2.0 * d / w) / denom + 2.0 * w / (denom * denom));
}

// integrand on the folded half line, stable at the removable point w = a
double hb_core_integrand(HbKind kind, double a, double d, double w) {
    if (w <= 0.0) return 0.0;
    const double power = std::pow(w / a, -2.0 * d);
    const double sw = std::sin(0.5 * w);
    const double s2 = sw * sw;
    if (kind == HbKind::l) {
        const double dm = a - w;
        const double near = dm == 0.0 ? 0.25 : s2 / (dm * dm);
        const double dp = a + w;
        return power * (near + s2 / (dp * dp));
    }
    const double denom = (a - w) * (a + w);
    if (denom == 0.0) return 0.0;  // removable, limit 0
    return power * s2 / denom;
}

HbPieces hb_integral(HbKind kind, int j, double d, double abs_tol) {
    const double a = kTwoPi * j;
    const double w0 = std::max(1000.0, 30.0 * a);
    // folded value carries a 2/pi prefactor; integrate to tol*pi/2
    const double tol = abs_tol * kPi / 2.0;
    HbPieces out;

    auto add = [&](const quadrature::Result& r) {
        out.value += r.value;
        out.error += r.error_estimate;
        out.evaluations += r.evaluations;
    };

    auto core = [&](double w) { return hb_core_integrand(kind, a, d, w); };
    const double split_lo = a > 2.0 ? a - 1.0 : 0.5 * a;
    const double split_hi = a + 1.0;
    add(quadrature::integrate(core, 0.0, split_lo, tol / 8.0, 2000));
    add(quadrature::integrate(core, split_lo, split_hi, tol / 8.0, 2000));
    add(quadrature::integrate(core, split_hi, w0, tol / 4.0, 20000));

    // mean tail: (1/2) Int_{w0}^inf G(w) dw via u = 1/w
    auto mean_tail = [&](double u) {
        if (u <= 0.0) return 0.0;
        return 0.5 * hb_tail_g(kind, a, d, 1.0 / u) / (u * u);
    };
    if (d < -0.01) {
        // u^{2d} endpoint singularity: substitute u = s^{1/(1+2d)}
        const double kappa = 1.0 / (1.0 + 2.0 * d);
        const double s_hi = std::pow(1.0 / w0, 1.0 / kappa);
        auto transformed = [&](double s) {
            if (s <= 0.0) return 0.0;
            const double u = std::pow(s, kappa);
            return mean_tail(u) * kappa * std::pow(s, kappa - 1.0);
        };
        add(quadrature::integrate(transformed, 0.0, s_hi, tol / 4.0, 4000));
    } else {
        add(quadrature::integrate(mean_tail, 0.0, 1.0 / w0, tol / 4.0, 4000));
    }

    // oscillatory tail: -(1/2) Int cos(w) G(w) dw
    //   = (1/2)[sin(w0) G(w0) + cos(w0) G'(w0)] + remainder,
    // |remainder| <= (1/2)|G'(w0)|
    const double g0 = hb_tail_g(kind, a, d, w0);
    const double g1 = hb_tail_g_deriv(kind, a, d, w0);
    out.value += 0.5 * (std::sin(w0) * g0 + std::cos(w0) * g1);
    out.error += 0.5 * std::abs(g1);

    out.value *= 2.0 / kPi;
    out.error *= 2.0 / kPi;
    return out;
}

double hb_checked(HbKind kind, int j, double d, double abs_tol, const char* name) {
    if (j < 1) throw std::invalid_argument(std::string(name) + ": j must be >= 1");
    if (!(d > -0.5 && d < 0.5))
        throw std::invalid_argument(std::string(name) + ": d must lie in (-0.5, 0.5)");
    const HbPieces p = hb_integral(kind, j, d, abs_tol);
    if (p.error > abs_tol) {
        std::ostringstream msg;
        msg << name << "(" << j << ", " << d << "): quadrature did not reach |error| <= "
            << abs_tol << "; achieved " << p.error << " after " << p.evaluations
            << " evaluations";
        throw std::runtime_error(msg.str());
    }
    return p.value;
}

}  // namespace

double hurvich_beltrao_L(int j, double d, double abs_tol) {
    return hb_checked(HbKind::l, j, d, abs_tol, "hurvich_beltrao_L");
}

double hurvich_beltrao_Lstar(int j, double d, double abs_tol) {
    return hb_checked(HbKind::lstar, j, d, abs_tol, "hurvich_beltrao_Lstar");
}

HbWeights hurvich_beltrao_weights(int j, double d, double abs_tol) {
    const double l = hurvich_beltrao_L(j, d, abs_tol);
    const double ls = hurvich_beltrao_Lstar(j, d, abs_tol);
    return {l - 2.0 * ls, l + 2.0 * ls};
}

}  // namespace robustlm
