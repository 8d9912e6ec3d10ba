// Acceptance suite: prints one pass/fail line per criterion and exits
// nonzero if any fails. Monte Carlo criteria run at desk scale
// (1000 replicates) with a fixed master seed, so every number below is
// reproducible bit-for-bit.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "robustlm/autocovariance.hpp"
#include "robustlm/contamination.hpp"
#include "robustlm/estimators.hpp"
#include "robustlm/experiments.hpp"
#include "robustlm/qn.hpp"
#include "robustlm/rng.hpp"
#include "robustlm/spectral.hpp"

using namespace robustlm;

namespace {

int g_failures = 0;

void criterion(const std::string& name, bool ok, const std::string& detail) {
    std::printf("[%s] %s: %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

bool within(double value, double center, double tol) {
    return std::abs(value - center) <= tol;
}

// --------------------------------------------------------------------------
void criterion_1_qn_oracle() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 engine(424242);
    std::uniform_int_distribution<int> pick_n(2, 60);
    std::uniform_int_distribution<int> pick_kind(0, 2);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_int_distribution<int> coarse(-3, 3);
    int mismatches = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const int n = pick_n(engine);
        std::vector<double> x(n);
        for (auto& v : x) {
            const int kind = pick_kind(engine);
            v = kind == 0 ? gauss(engine)
                          : (kind == 1 ? static_cast<double>(coarse(engine))
                                       : 1e6 * gauss(engine));
        }
        // brute-force oracle: materialize, sort, index tau, scale by c
        std::vector<double> dist;
        for (int j = 1; j < n; ++j)
            for (int i = 0; i < j; ++i) dist.push_back(std::abs(x[i] - x[j]));
        std::sort(dist.begin(), dist.end());
        const double expected = 2.2191 * dist[qn_tau(n) - 1];
        if (qn_scale(x) != expected) ++mismatches;
    }
    const double secs = elapsed_s(t0);
    criterion("criterion 1 (Qn oracle equivalence)", mismatches == 0 && secs < 10.0,
              std::to_string(500 - mismatches) + "/500 vectors bitwise equal, " + fmt(secs, 2) +
                  " s");
}

// --------------------------------------------------------------------------
void criterion_2_robust_identities() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 engine(515151);
    std::uniform_int_distribution<int> pick_n(4, 60);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> scale(0.1, 100.0);
    int bad_identity = 0, bad_range = 0, evaluated = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const int n = pick_n(engine);
        std::vector<double> values(n);
        const double s = scale(engine);
        for (auto& v : values) v = s * gauss(engine);
        TimeSeries x{values, ""};
        const double q = qn_scale(x.values);
        if (robust_acvf(x, 0) != q * q) ++bad_identity;
        std::uniform_int_distribution<int> pick_h(0, n - 2);
        const int h = pick_h(engine);
        try {
            const double rho = robust_acf(x, h);
            ++evaluated;
            if (!(rho >= -1.0 && rho <= 1.0)) ++bad_range;
        } catch (const std::domain_error&) {
            // degenerate lagged vectors are a legal refusal
        }
    }
    const double secs = elapsed_s(t0);
    criterion("criterion 2 (robust ACVF identities)",
              bad_identity == 0 && bad_range == 0 && secs < 60.0,
              "gamma_Q(0)=Qn^2 exact in 10000/10000, |rho_Q|<=1 in " +
                  std::to_string(evaluated - bad_range) + "/" + std::to_string(evaluated) +
                  " evaluable cases, " + fmt(secs, 2) + " s");
}

// --------------------------------------------------------------------------
void criteria_3_and_4_table1(const McReport& t1) {
    const auto& gph_clean = t1.cell("d0.30_n300", "GPH");
    const auto& gph_cont = t1.cell("d0.30_n300", "GPH_c");
    const auto& gphr_clean = t1.cell("d0.30_n300", "GPHR");
    const auto& gphr_cont = t1.cell("d0.30_n300", "GPHR_c");
    const bool ok3 = within(gph_clean.mean, 0.3062, 0.02) &&
                     within(gph_cont.mean, 0.1007, 0.03) &&
                     within(gphr_clean.mean, 0.2907, 0.02) &&
                     within(gphr_cont.mean, 0.2837, 0.03);
    criterion("criterion 3 (table-1 cell d=0.3, n=300)", ok3,
              "GPH " + fmt(gph_clean.mean) + " (0.3062+-0.02), GPH_c " + fmt(gph_cont.mean) +
                  " (0.1007+-0.03), GPHR " + fmt(gphr_clean.mean) + " (0.2907+-0.02), GPHR_c " +
                  fmt(gphr_cont.mean) + " (0.2837+-0.03)");

    bool ok4 = true;
    std::ostringstream detail;
    for (double d : {0.3, 0.45}) {
        for (int n : {100, 300, 800}) {
            char cell_id[32];
            std::snprintf(cell_id, sizeof(cell_id), "d%.2f_n%d", d, n);
            const double bias_gph = std::abs(t1.cell(cell_id, "GPH_c").bias);
            const double bias_gphr = std::abs(t1.cell(cell_id, "GPHR_c").bias);
            if (!(bias_gphr < bias_gph)) ok4 = false;
            detail << cell_id << " " << fmt(bias_gphr) << "<" << fmt(bias_gph) << "  ";
        }
    }
    criterion("criterion 4 (table-1 bias ordering |bias GPHR_c| < |bias GPH_c|)", ok4,
              detail.str());
}

// --------------------------------------------------------------------------
void criterion_5_table2_windows() {
    McConfig config;
    config.arfima.d = 0.3;
    config.n = 800;
    config.replicates = 1000;
    config.outliers = {{{10.0, 0.05}}};
    config.master_seed = 20110401;
    config.cell_id = "d0.30_n800";
    EstimatorConfig p, th, b;
    p.label = "GPHR_P";
    p.method = DMethod::gphr;
    p.window_kind = WindowKind::parzen;
    th.label = "GPHR_TH";
    th.method = DMethod::gphr;
    th.window_kind = WindowKind::tukey_hamming;
    b.label = "GPHR_B";
    b.method = DMethod::gphr;
    b.window_kind = WindowKind::bartlett;
    config.estimators = {p, th, b};
    const auto report = run_monte_carlo(config);
    const double mp = report.cell("d0.30_n800", "GPHR_P_c").mean;
    const double mth = report.cell("d0.30_n800", "GPHR_TH_c").mean;
    const double mb = report.cell("d0.30_n800", "GPHR_B_c").mean;
    const bool bands = within(mp, 0.2934, 0.03) && within(mth, 0.2889, 0.03) &&
                       within(mb, 0.2928, 0.03);
    const bool pairwise = std::abs(mp - mth) <= 0.02 && std::abs(mp - mb) <= 0.02 &&
                          std::abs(mth - mb) <= 0.02;
    criterion("criterion 5 (table-2 lag-window insensitivity, contaminated n=800)",
              bands && pairwise,
              "P " + fmt(mp) + " (0.2934+-0.03), TH " + fmt(mth) + " (0.2889+-0.03), B " +
                  fmt(mb) + " (0.2928+-0.03), max pairwise " +
                  fmt(std::max({std::abs(mp - mth), std::abs(mp - mb), std::abs(mth - mb)})) +
                  " <= 0.02");
}

// --------------------------------------------------------------------------
void criterion_6_table3_differencing() {
    McConfig config;
    config.arfima.d = 0.0;  // d_X = 1.0, estimates reported on the W scale
    config.n = 300;
    config.replicates = 1000;
    config.outliers = {{{10.0, 0.05}}};
    config.differencing = true;
    config.master_seed = 20110401;
    config.cell_id = "dx1.00_n300";
    EstimatorConfig g, r;
    g.label = "GPH";
    g.method = DMethod::gph;
    r.label = "GPHR";
    r.method = DMethod::gphr;
    config.estimators = {g, r};
    const auto report = run_monte_carlo(config);
    const auto& gph_c = report.cell("dx1.00_n300", "GPH_c");
    const auto& gphr_c = report.cell("dx1.00_n300", "GPHR_c");
    const bool ok = within(gph_c.mean, -0.3230, 0.04) && within(gphr_c.mean, -0.0426, 0.03) &&
                    std::abs(gphr_c.bias) < 0.08 && std::abs(gph_c.bias) > 0.25;
    criterion("criterion 6 (table-3 differencing study, d_X=1.0, n=300)", ok,
              "GPH_c " + fmt(gph_c.mean) + " (-0.3230+-0.04), GPHR_c " + fmt(gphr_c.mean) +
                  " (-0.0426+-0.03), |bias| " + fmt(std::abs(gphr_c.bias)) + "<0.08 vs " +
                  fmt(std::abs(gph_c.bias)) + ">0.25");
}

// --------------------------------------------------------------------------
void criterion_7_hurvich_beltrao() {
    bool ok = true;
    std::ostringstream detail;
    for (int j : {1, 2, 5}) {
        const double l = hurvich_beltrao_L(j, 0.0);
        if (!within(l, 1.0, 1e-3)) ok = false;
        detail << "L_" << j << "(0)=" << fmt(l, 6) << " ";
    }
    const double l45 = hurvich_beltrao_L(1, 0.45);
    if (!(l45 > 1.0)) ok = false;
    detail << "L_1(0.45)=" << fmt(l45, 4) << ">1";
    criterion("criterion 7 (Hurvich-Beltrao diagnostics)", ok, detail.str());
}

// --------------------------------------------------------------------------
void criterion_8_gph_asymptotic_sd() {
    const int reps = 1000, n = 800;
    std::vector<double> ds(reps);
    for (int r = 0; r < reps; ++r) {
        const auto x = simulate_arfima(ArfimaSpec{}, n, derive_seed(808080, r, 0));
        ds[r] = gph(x, BandwidthSpec{}).d_hat;
    }
    double mean = 0.0;
    for (double v : ds) mean += v;
    mean /= reps;
    double ss = 0.0;
    for (double v : ds) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / (reps - 1));
    const double se_asym = std::numbers::pi / std::sqrt(24.0 * 107.0);
    const double ratio = sd / se_asym;
    criterion("criterion 8 (GPH asymptotic variance)", ratio > 1.0 / 1.3 && ratio < 1.3,
              "MC sd " + fmt(sd) + " vs pi/sqrt(24 m') " + fmt(se_asym) + ", ratio " +
                  fmt(ratio, 3) + " within factor 1.3");
}

// --------------------------------------------------------------------------
void criterion_9_contamination_theory() {
    // variance uplift: var(z) - var(x) -> sum w^2 p = 5 over replicates
    const OutlierSpec outliers{{{10.0, 0.05}}};
    const int reps = 500, n = 1000;
    std::vector<double> uplift(reps);
    ArfimaSpec spec;
    spec.d = 0.3;
    for (int r = 0; r < reps; ++r) {
        const auto x = simulate_arfima(spec, n, derive_seed(909090, r, 0));
        const auto z = contaminate(x, outliers, derive_seed(909090, r, 1)).as_series();
        uplift[r] = sample_acvf(z, 0) - sample_acvf(x, 0);
    }
    double mean = 0.0;
    for (double v : uplift) mean += v;
    mean /= reps;
    double ss = 0.0;
    for (double v : uplift) ss += (v - mean) * (v - mean);
    const double se = std::sqrt(ss / (reps - 1)) / std::sqrt(double(reps));
    const bool mc_ok = std::abs(mean - 5.0) < 4.0 * se;

    // pointwise spectral uplift 5/(2 pi)
    bool point_ok = true;
    const double expected = 5.0 / (2.0 * std::numbers::pi);
    for (double w : {0.1, 0.5, 1.0, 2.0, std::numbers::pi}) {
        const double diff =
            contaminated_spectrum(spec, outliers, w) - arfima_spectral_density(spec, w);
        if (std::abs(diff - expected) > 1e-12) point_ok = false;
    }
    criterion("criterion 9 (contamination theory checks)", mc_ok && point_ok,
              "variance uplift " + fmt(mean) + " vs 5 (4-sigma band " + fmt(4.0 * se) +
                  "), spectral uplift 5/(2pi) pointwise to 1e-12");
}

// --------------------------------------------------------------------------
void criterion_10_determinism() {
    // library pipeline: simulate -> contaminate -> estimate, twice
    ArfimaSpec spec;
    spec.d = 0.3;
    const auto x1 = simulate_arfima(spec, 300, 777);
    const auto x2 = simulate_arfima(spec, 300, 777);
    const OutlierSpec outliers{{{10.0, 0.05}}};
    const auto z1 = contaminate(x1, outliers, 888);
    const auto z2 = contaminate(x2, outliers, 888);
    const auto w300 = WindowSpec::from_beta(WindowKind::truncated, 300, 0.7);
    const double d1 = gph_robust(z1.as_series(), BandwidthSpec{}, w300).d_hat;
    const double d2 = gph_robust(z2.as_series(), BandwidthSpec{}, w300).d_hat;
    const bool pipeline_ok = x1.values == x2.values && z1.values == z2.values && d1 == d2;

    // mc report across thread counts
    McConfig config;
    config.arfima.d = 0.2;
    config.n = 128;
    config.replicates = 200;
    config.outliers = outliers;
    config.master_seed = 1234;
    config.cell_id = "det";
    EstimatorConfig g, r;
    g.label = "GPH";
    g.method = DMethod::gph;
    r.label = "GPHR";
    r.method = DMethod::gphr;
    config.estimators = {g, r};
    config.threads = 1;
    const std::string csv1 = report_to_csv(run_monte_carlo(config));
    config.threads = 4;
    const std::string csv4 = report_to_csv(run_monte_carlo(config));
    criterion("criterion 10 (seeded pipelines bit-reproducible)",
              pipeline_ok && csv1 == csv4,
              std::string("simulate/contaminate/estimate identical across runs; mc report ") +
                  (csv1 == csv4 ? "identical" : "DIFFERS") + " across 1 vs 4 threads");
}

// --------------------------------------------------------------------------
void workflow_original_vs_modified() {
    // synthetic stand-in for the application study: estimate on the
    // contaminated series, then on the series with the hit indices
    // replaced by the sample mean; the classical estimate moves much more
    ArfimaSpec spec;
    spec.d = 0.3;
    const OutlierSpec outliers{{{10.0, 0.05}}};
    const int reps = 60, n = 300;
    const auto w300 = WindowSpec::from_beta(WindowKind::truncated, n, 0.7);
    double shift_gph = 0.0, shift_gphr = 0.0;
    for (int r = 0; r < reps; ++r) {
        const auto x = simulate_arfima(spec, n, derive_seed(550550, r, 0));
        const auto z = contaminate(x, outliers, derive_seed(550550, r, 1));
        TimeSeries original = z.as_series();
        double mean = 0.0;
        for (double v : original.values) mean += v;
        mean /= n;
        TimeSeries modified = original;
        for (const auto& hit : z.hits) modified.values[hit.index] = mean;
        const double gph_od = gph(original, BandwidthSpec{}).d_hat;
        const double gph_md = gph(modified, BandwidthSpec{}).d_hat;
        const double gphr_od = gph_robust(original, BandwidthSpec{}, w300).d_hat;
        const double gphr_md = gph_robust(modified, BandwidthSpec{}, w300).d_hat;
        shift_gph += std::abs(gph_od - gph_md);
        shift_gphr += std::abs(gphr_od - gphr_md);
    }
    shift_gph /= reps;
    shift_gphr /= reps;
    criterion("workflow (original vs mean-modified series)", shift_gph > shift_gphr,
              "mean |GPH shift| " + fmt(shift_gph) + " > mean |GPHR shift| " +
                  fmt(shift_gphr));
}

}  // namespace

int main() {
    std::printf("robustlm acceptance suite (desk scale: 1000 replicates, master seed 20110401)\n");
    const auto t0 = std::chrono::steady_clock::now();

    criterion_1_qn_oracle();
    criterion_2_robust_identities();

    const McReport t1 = reproduce_table(1, 1000, 20110401);
    criteria_3_and_4_table1(t1);
    criterion_5_table2_windows();
    criterion_6_table3_differencing();
    criterion_7_hurvich_beltrao();
    criterion_8_gph_asymptotic_sd();
    criterion_9_contamination_theory();
    criterion_10_determinism();
    workflow_original_vs_modified();

    std::printf("%s: %d criterion(s) failed, total %.1f s\n",
                g_failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED", g_failures,
                elapsed_s(t0));
    return g_failures == 0 ? 0 : 1;
}
