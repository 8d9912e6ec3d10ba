#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace robustlm {

// ARFIMA(p,d,q): Phi(B)(1-B)^d (X_t - mu) = Theta(B) eps_t with
// Phi(B) = 1 - sum phi_j B^j, Theta(B) = 1 - sum theta_i B^i and Gaussian
// innovations of variance sigma2. Stationary / invertible for
// d in (-0.5, 0.5) and all polynomial roots strictly outside the unit
// circle.
struct ArfimaSpec {
    double d = 0.0;
    std::vector<double> phi;    // AR coefficients, size p
    std::vector<double> theta;  // MA coefficients, size q
    double sigma2 = 1.0;
    double mu = 0.0;

    int p() const { return static_cast<int>(phi.size()); }
    int q() const { return static_cast<int>(theta.size()); }

    // Throws std::invalid_argument naming the offending root or parameter.
    void validate_stationary() const;
};

struct TimeSeries {
    std::vector<double> values;
    std::string provenance;  // optional free-form origin note

    std::size_t size() const { return values.size(); }
    void validate() const;  // n >= 1, all values finite
};

enum class AcvfSource { theoretical, classical_sample, robust_q };

struct AcvfSequence {
    std::vector<double> gamma;  // gamma(0..maxLag)
    AcvfSource source = AcvfSource::theoretical;

    int max_lag() const { return static_cast<int>(gamma.size()) - 1; }
};

// Theoretical autocovariance gamma(0..maxLag). Pure fractional noise uses
// gamma(0) = sigma2 * Gamma(1-2d)/Gamma(1-d)^2 with the ratio recursion
// gamma(h) = gamma(h-1) (h-1+d)/(h-d); ARMA parts enter through a
// truncated MA(inf) convolution.
AcvfSequence arfima_acvf(const ArfimaSpec& spec, int max_lag);

// f_X(w) = sigma2/(2pi) |Theta(e^{-iw})|^2 / |Phi(e^{-iw})|^2
//          * [2 sin(w/2)]^{-2d};  pole at w = 0 when d > 0.
double arfima_spectral_density(const ArfimaSpec& spec, double omega);

// Exact Gaussian simulation: Durbin-Levinson conditional sampling from the
// theoretical ACVF of the fractional core; AR/MA parts applied by recursion
// with a discarded burn-in of max(500, 20(p+q)) points.
TimeSeries simulate_arfima(const ArfimaSpec& spec, int n, std::uint64_t seed);

// w_t = x_{t+1} - x_t (length n-1); requires n >= 2.
TimeSeries difference(const TimeSeries& series);

// Cumulative sums starting at `initial` (length n+1), so that
// difference(integrate(x, c)) == x.
TimeSeries integrate(const TimeSeries& series, double initial);

// MA(inf) weights psi_0..psi_k of Theta(B)/Phi(B); exposed for tests.
std::vector<double> arma_psi_weights(const ArfimaSpec& spec, int count);

}  // namespace robustlm
