#pragma once

#include <string>
#include <vector>

#include "robustlm/arfima.hpp"
#include "robustlm/autocovariance.hpp"
#include "robustlm/qn.hpp"

namespace robustlm {

// Fourier frequencies w_j = 2 pi j / n, j = 1..floor(n/2).
struct FourierGrid {
    int n = 0;

    static FourierGrid for_length(int n);
    int count() const { return n / 2; }
    double omega(int j) const;  // j in 1..count()
};

enum class WindowKind { truncated, bartlett, parzen, tukey_hamming };

std::string window_kind_name(WindowKind kind);
WindowKind window_kind_from_name(const std::string& name);

// Lag window with truncation point M; M = floor(n^beta) under the usual
// rule.
struct WindowSpec {
    WindowKind kind = WindowKind::truncated;
    int M = 1;

    static WindowSpec from_beta(WindowKind kind, int n, double beta);

    // Heuristic alternative keyed to the temporal breakdown point of the
    // lagged Qn pair: with the conservative bound eps(h) ~ (n-h)/(4n), the
    // largest usable lag against m arbitrary outliers is h' - 1 with
    // h' = min{h : (n-h)/(4n) <= m/n}, i.e. M = n - 4m - 1.
    static WindowSpec from_breakdown(WindowKind kind, int n, int expected_outliers);

    void validate(int n) const;  // 1 <= M < n
};

// kappa(h) for h >= 0: 1 at h = 0, 0 beyond M, standard Priestley forms in
// between (Bartlett 1-h/M, Tukey-Hamming 0.54+0.46cos(pi h/M), Parzen
// piecewise cubic).
double lag_window_weight(const WindowSpec& spec, int h);

enum class SpectralMethod { classical_periodogram, robust_pseudo };

struct SpectralEstimate {
    FourierGrid grid;
    std::vector<double> values;  // index j-1 holds the value at omega_j
    SpectralMethod method = SpectralMethod::classical_periodogram;
    WindowSpec window;         // meaningful for robust_pseudo only
    int non_positive_count = 0;  // robust values <= 0 are kept but counted
    bool mean_centered = false;  // classical periodogram is computed raw

    double at(int j) const { return values.at(static_cast<std::size_t>(j) - 1); }
};

// Raw (uncentered) periodogram ordinate (2 pi n)^{-1} |sum x_t e^{iwt}|^2.
double periodogram_ordinate(const TimeSeries& series, double omega);

// Periodogram over the Fourier grid; grid.n must equal the series length.
SpectralEstimate periodogram(const TimeSeries& series, const FourierGrid& grid);

// Windowed cosine transform of an autocovariance sequence:
//   (1/2pi) [gamma(0) + 2 sum_{h=1}^{M} kappa(h) gamma(h) cos(h w_j)].
// This is the shared form behind the robust pseudo-periodogram; feeding it
// a classical sample ACVF with the all-ones window reproduces the
// mean-centered periodogram.
SpectralEstimate cosine_sum_spectrum(const AcvfSequence& acvf, const WindowSpec& window,
                                     const FourierGrid& grid);

// Input curve for the robust pseudo-periodogram. normalized_acf
// (rho_Q(h) * gamma_Q(0), the default) cancels the common Qn inflation
// that additive outliers induce across lags and reproduces the simulation
// tables; raw_acvf feeds gamma_Q(h) into the cosine sum as printed.
enum class RobustSpectrumScale { normalized_acf, raw_acvf };

// Robust truncated pseudo-periodogram: windowed cosine transform of the
// Qn-based robust autocovariances. Requires n - M >= 2. Non-positive
// ordinates are preserved and counted, never altered.
SpectralEstimate robust_pseudo_periodogram(const TimeSeries& series, const WindowSpec& window,
                                           const QnConfig& config, const FourierGrid& grid,
                                           RobustSpectrumScale scale =
                                               RobustSpectrumScale::normalized_acf);

// Hurvich-Beltrao limits of E[I(w_j)/f(w_j)] for ARFIMA long memory:
//   L_j(d)  = (2/pi) Int sin^2(w/2) (2pi j - w)^{-2} |w/2pi j|^{-2d} dw
//   L*_j(d) = (1/pi) Int sin^2(w/2) [(2pi j)^2 - w^2]^{-1} |w/2pi j|^{-2d} dw
// over the real line, evaluated by adaptive quadrature with the tails
// folded in analytically. Throws std::runtime_error with the achieved
// tolerance when the requested absolute tolerance (default 1e-6) is not
// met.
double hurvich_beltrao_L(int j, double d, double abs_tol = 1e-6);
double hurvich_beltrao_Lstar(int j, double d, double abs_tol = 1e-6);

// Quadratic-form weights of the limiting law: alpha1 = L - 2L*,
// alpha2 = L + 2L*.
struct HbWeights {
    double alpha1;
    double alpha2;
};
HbWeights hurvich_beltrao_weights(int j, double d, double abs_tol = 1e-6);

}  // namespace robustlm
