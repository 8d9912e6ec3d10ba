#include "robustlm/arfima.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "robustlm/rng.hpp"

namespace robustlm {

namespace {

constexpr double kPi = std::numbers::pi;

// Durand-Kerner roots of 1 - c_1 z - ... - c_m z^m.
std::vector<std::complex<double>> poly_roots(const std::vector<double>& coef) {
    const int m = static_cast<int>(coef.size());
    std::vector<std::complex<double>> a(m + 1);
    a[0] = 1.0;
    for (int k = 1; k <= m; ++k) a[k] = -coef[k - 1];
    while (a.size() > 1 && std::abs(a.back()) == 0.0) a.pop_back();
    const int deg = static_cast<int>(a.size()) - 1;
    std::vector<std::complex<double>> roots(deg);
    const std::complex<double> start(0.4, 0.9);
    std::complex<double> z = 1.0;
    for (int k = 0; k < deg; ++k) {
        z *= start;
        roots[k] = z;
    }
    auto eval = [&](std::complex<double> x) {
        std::complex<double> v = a[deg];
        for (int k = deg - 1; k >= 0; --k) v = v * x + a[k];
        return v;
    };
    for (int iter = 0; iter < 500; ++iter) {
        double max_step = 0.0;
        for (int k = 0; k < deg; ++k) {
            std::complex<double> denom = a[deg];
            for (int j = 0; j < deg; ++j)
                if (j != k) denom *= roots[k] - roots[j];
            if (std::abs(denom) == 0.0) continue;
            const std::complex<double> delta = eval(roots[k]) / denom;
            roots[k] -= delta;
            max_step = std::max(max_step, std::abs(delta));
        }
        if (max_step < 1e-13) break;
    }
    return roots;
}

void check_roots_outside(const std::vector<double>& coef, const char* label) {
    if (coef.empty()) return;
    for (const auto& r : poly_roots(coef)) {
        if (std::abs(r) <= 1.0 + 1e-9) {
            std::ostringstream msg;
            msg << label << " polynomial has root " << r.real();
            if (r.imag() != 0.0) msg << (r.imag() < 0 ? "" : "+") << r.imag() << "i";
            msg << " with modulus " << std::abs(r) << " <= 1 (non-stationary/non-invertible)";
            throw std::invalid_argument(msg.str());
        }
    }
}

// gamma(0..maxLag) of ARFIMA(0,d,0), via log-Gamma for gamma(0) and the
// exact ratio recursion afterward.
std::vector<double> fractional_acvf(double d, double sigma2, int max_lag) {
    std::vector<double> g(static_cast<std::size_t>(max_lag) + 1);
    const double g0 = sigma2 * std::exp(std::lgamma(1.0 - 2.0 * d) - 2.0 * std::lgamma(1.0 - d));
    g[0] = g0;
    for (int h = 1; h <= max_lag; ++h)
        g[h] = g[h - 1] * (static_cast<double>(h) - 1.0 + d) / (static_cast<double>(h) - d);
    return g;
}

}  // namespace

void ArfimaSpec::validate_stationary() const {
    if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
        throw std::invalid_argument("ArfimaSpec: sigma2 must be positive and finite");
    if (!std::isfinite(d) || !std::isfinite(mu))
        throw std::invalid_argument("ArfimaSpec: non-finite parameter");
    for (double c : phi)
        if (!std::isfinite(c)) throw std::invalid_argument("ArfimaSpec: non-finite phi");
    for (double c : theta)
        if (!std::isfinite(c)) throw std::invalid_argument("ArfimaSpec: non-finite theta");
    if (d >= 0.5)
        throw std::invalid_argument("ArfimaSpec: d = " + std::to_string(d) +
                                    " >= 0.5 is non-stationary; simulate via integer "
                                    "integration instead");
    if (d <= -0.5)
        throw std::invalid_argument("ArfimaSpec: d = " + std::to_string(d) +
                                    " <= -0.5 is non-invertible");
    check_roots_outside(phi, "AR");
    check_roots_outside(theta, "MA");
}

void TimeSeries::validate() const {
    if (values.empty()) throw std::invalid_argument("TimeSeries: empty series");
    for (double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument("TimeSeries: non-finite value");
}

std::vector<double> arma_psi_weights(const ArfimaSpec& spec, int count) {
    std::vector<double> psi(static_cast<std::size_t>(count) + 1, 0.0);
    psi[0] = 1.0;
    const int p = spec.p(), q = spec.q();
    for (int k = 1; k <= count; ++k) {
        double v = (k <= q) ? -spec.theta[k - 1] : 0.0;
        for (int j = 1; j <= std::min(k, p); ++j) v += spec.phi[j - 1] * psi[k - j];
        psi[k] = v;
    }
    return psi;
}

AcvfSequence arfima_acvf(const ArfimaSpec& spec, int max_lag) {
    spec.validate_stationary();
    if (max_lag < 0) throw std::invalid_argument("arfima_acvf: maxLag must be >= 0");
    if (spec.p() == 0 && spec.q() == 0)
        return {fractional_acvf(spec.d, spec.sigma2, max_lag), AcvfSource::theoretical};

    // gamma_X(h) = sum_l w_l gamma_F(h+l) with w the lag-l autocorrelation
    // of the MA(inf) weights, truncated at K = 512 terms.
    constexpr int kTrunc = 512;
    const auto psi = arma_psi_weights(spec, 2 * kTrunc);
    double tail = 0.0;
    for (int k = kTrunc; k <= 2 * kTrunc; ++k) tail += std::abs(psi[k]);
    if (tail >= 1e-10)
        throw std::invalid_argument(
            "arfima_acvf: MA(inf) tail mass " + std::to_string(tail) +
            " exceeds 1e-10 at 512 coefficients; ARMA part too close to the unit circle");

    const auto gf = fractional_acvf(spec.d, spec.sigma2, max_lag + kTrunc);
    auto gf_at = [&](int lag) { return gf[static_cast<std::size_t>(std::abs(lag))]; };
    std::vector<double> w(kTrunc + 1, 0.0);
    for (int l = 0; l <= kTrunc; ++l)
        for (int j = 0; j + l < kTrunc; ++j) w[l] += psi[j] * psi[j + l];

    std::vector<double> g(static_cast<std::size_t>(max_lag) + 1, 0.0);
    for (int h = 0; h <= max_lag; ++h) {
        double acc = w[0] * gf_at(h);
        for (int l = 1; l <= kTrunc; ++l) acc += w[l] * (gf_at(h + l) + gf_at(h - l));
        g[h] = acc;
    }
    return {std::move(g), AcvfSource::theoretical};
}

double arfima_spectral_density(const ArfimaSpec& spec, double omega) {
    spec.validate_stationary();
    if (omega == 0.0 && spec.d > 0.0)
        throw std::domain_error("arfima_spectral_density: pole at omega = 0 for d > 0");
    const std::complex<double> e = std::polar(1.0, -omega);
    std::complex<double> th = 1.0, ph = 1.0, z = 1.0;
    for (int i = 0; i < spec.q(); ++i) {
        z *= e;
        th -= spec.theta[i] * z;
    }
    z = 1.0;
    for (int j = 0; j < spec.p(); ++j) {
        z *= e;
        ph -= spec.phi[j] * z;
    }
    const double arma = std::norm(th) / std::norm(ph);
    const double s = 2.0 * std::sin(std::abs(omega) / 2.0);
    return spec.sigma2 / (2.0 * kPi) * arma * std::pow(s, -2.0 * spec.d);
}

TimeSeries simulate_arfima(const ArfimaSpec& spec, int n, std::uint64_t seed) {
    spec.validate_stationary();
    if (n < 2) throw std::invalid_argument("simulate_arfima: n must be >= 2");
    const int p = spec.p(), q = spec.q();
    const int burnin = (p + q) > 0 ? std::max(500, 20 * (p + q)) : 0;
    const int m = n + burnin;

    const auto gamma = fractional_acvf(spec.d, spec.sigma2, m - 1);
    Rng rng(seed);

    // Durbin-Levinson: sample x_{t+1} | x_1..x_t from the exact Gaussian
    // conditional; phi holds the time-t prediction coefficients.
    std::vector<double> frac(m), phi(m, 0.0), phi_prev(m, 0.0);
    double v = gamma[0];
    frac[0] = std::sqrt(v) * rng.normal();
    for (int t = 1; t < m; ++t) {
        double acc = gamma[t];
        for (int j = 1; j < t; ++j) acc -= phi_prev[j] * gamma[t - j];
        const double refl = acc / v;
        phi[t] = refl;
        for (int j = 1; j < t; ++j) phi[j] = phi_prev[j] - refl * phi_prev[t - j];
        v *= (1.0 - refl * refl);
        if (v <= 0.0) throw std::runtime_error("simulate_arfima: prediction variance underflow");
        double mean = 0.0;
        for (int j = 1; j <= t; ++j) mean += phi[j] * frac[t - j];
        frac[t] = mean + std::sqrt(v) * rng.normal();
        std::copy(phi.begin() + 1, phi.begin() + t + 1, phi_prev.begin() + 1);
    }

    std::vector<double> x;
    if (p == 0 && q == 0) {
        x = std::move(frac);
    } else {
        x.assign(m, 0.0);
        for (int t = 0; t < m; ++t) {
            double acc = frac[t];
            for (int i = 1; i <= q; ++i)
                if (t - i >= 0) acc -= spec.theta[i - 1] * frac[t - i];
            for (int j = 1; j <= p; ++j)
                if (t - j >= 0) acc += spec.phi[j - 1] * x[t - j];
            x[t] = acc;
        }
        x.erase(x.begin(), x.begin() + burnin);
    }
    if (spec.mu != 0.0)
        for (double& xv : x) xv += spec.mu;

    TimeSeries out{std::move(x), "simulate_arfima seed=" + std::to_string(seed)};
    return out;
}

TimeSeries difference(const TimeSeries& series) {
    if (series.size() < 2)
        throw std::invalid_argument("difference: need at least 2 observations");
    std::vector<double> w(series.size() - 1);
    for (std::size_t t = 0; t + 1 < series.size(); ++t)
        w[t] = series.values[t + 1] - series.values[t];
    return {std::move(w), series.provenance + " |diff"};
}

TimeSeries integrate(const TimeSeries& series, double initial) {
    series.validate();
    std::vector<double> y(series.size() + 1);
    y[0] = initial;
    for (std::size_t t = 0; t < series.size(); ++t) y[t + 1] = y[t] + series.values[t];
    return {std::move(y), series.provenance + " |integrate"};
}

}  // namespace robustlm
