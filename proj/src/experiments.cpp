#include "robustlm/experiments.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "robustlm/autocovariance.hpp"
#include "robustlm/rng.hpp"

#include "json.hpp"

namespace robustlm {

namespace {

struct ReplicateSlot {
    double estimate = std::numeric_limits<double>::quiet_NaN();
    int dropped = 0;
    bool failed = false;
};

// evaluates every estimator on one series; gphr columns with the same Qn
// constant and curve scale share one robust ACVF curve
void evaluate_series(const TimeSeries& series, const McConfig& config,
                     const std::vector<WindowSpec>& windows, int max_robust_m,
                     std::vector<ReplicateSlot>& out) {
    const int n = static_cast<int>(series.size());
    std::map<std::pair<double, int>, AcvfSequence> curves;
    for (std::size_t e = 0; e < config.estimators.size(); ++e) {
        const EstimatorConfig& est = config.estimators[e];
        ReplicateSlot& slot = out[e];
        try {
            DEstimate result;
            if (est.method == DMethod::gph) {
                result = gph(series, est.bandwidth);
            } else {
                const auto key = std::make_pair(est.qn.c, static_cast<int>(est.robust_scale));
                auto it = curves.find(key);
                if (it == curves.end()) {
                    AcvfSequence curve =
                        est.robust_scale == RobustSpectrumScale::normalized_acf
                            ? robust_normalized_acvf_curve(series, max_robust_m, est.qn)
                            : acvf_curve(series, max_robust_m, AcvfMethod::robust, est.qn);
                    it = curves.emplace(key, std::move(curve)).first;
                }
                result = gph_robust_from_curve(it->second, n, est.bandwidth, windows[e]);
            }
            slot.estimate = result.d_hat;
            slot.dropped = result.dropped_frequencies;
        } catch (const std::exception&) {
            slot.failed = true;
        }
    }
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

WindowSpec EstimatorConfig::resolve_window(int n) const {
    if (explicit_M > 0) {
        WindowSpec w{window_kind, explicit_M};
        w.validate(n);
        return w;
    }
    return WindowSpec::from_beta(window_kind, n, beta);
}

const McCell& McReport::cell(const std::string& cell_id, const std::string& estimator) const {
    for (const auto& c : cells)
        if (c.cell_id == cell_id && c.estimator == estimator) return c;
    throw std::out_of_range("McReport: no cell " + cell_id + " / " + estimator);
}

McReport run_monte_carlo(const McConfig& config) {
    if (config.replicates < 1)
        throw std::invalid_argument("run_monte_carlo: replicates must be >= 1");
    if (config.estimators.empty())
        throw std::invalid_argument("run_monte_carlo: no estimators configured");
    config.arfima.validate_stationary();
    config.outliers.validate();
    {
        std::set<std::string> labels;
        for (const auto& e : config.estimators)
            if (!labels.insert(e.label).second)
                throw std::invalid_argument("run_monte_carlo: duplicate estimator label '" +
                                            e.label + "'");
    }

    const int n_est = static_cast<int>(config.estimators.size());
    const int reps = config.replicates;
    const bool with_outliers = !config.outliers.empty();
    const double true_d = std::isnan(config.true_d) ? config.arfima.d : config.true_d;

    // resolve windows/bandwidths up front so configuration errors surface
    // before the replicate loop
    std::vector<WindowSpec> windows(n_est, WindowSpec{WindowKind::truncated, 1});
    int max_robust_m = 0;
    for (int e = 0; e < n_est; ++e) {
        const auto& est = config.estimators[e];
        est.bandwidth.resolve(config.n);
        if (est.method == DMethod::gphr) {
            windows[e] = est.resolve_window(config.n);
            if (config.n - windows[e].M < 2)
                throw std::invalid_argument("run_monte_carlo: window M = " +
                                            std::to_string(windows[e].M) +
                                            " too large for n = " + std::to_string(config.n));
            max_robust_m = std::max(max_robust_m, windows[e].M);
        }
    }

    // slot layout: [replicate][estimator][clean/contaminated]
    std::vector<std::vector<ReplicateSlot>> clean_slots(reps),
        contam_slots(with_outliers ? reps : 0);

    std::atomic<int> next{0};
    auto worker = [&]() {
        for (int r = next.fetch_add(1); r < reps; r = next.fetch_add(1)) {
            clean_slots[r].assign(n_est, {});
            if (with_outliers) contam_slots[r].assign(n_est, {});
            try {
                const std::uint64_t sim_seed = derive_seed(config.master_seed, r, 0);
                const std::uint64_t contam_seed = derive_seed(config.master_seed, r, 1);
                const TimeSeries base = simulate_arfima(config.arfima, config.n, sim_seed);

                TimeSeries clean, contaminated;
                if (config.differencing) {
                    const TimeSeries integrated = integrate(base, 0.0);
                    clean = difference(integrated);
                    if (with_outliers)
                        contaminated = difference(
                            contaminate(integrated, config.outliers, contam_seed).as_series());
                } else {
                    clean = base;
                    if (with_outliers)
                        contaminated =
                            contaminate(base, config.outliers, contam_seed).as_series();
                }

                evaluate_series(clean, config, windows, max_robust_m, clean_slots[r]);
                if (with_outliers)
                    evaluate_series(contaminated, config, windows, max_robust_m,
                                    contam_slots[r]);
            } catch (const std::exception&) {
                // simulation-level failure: count against every column
                for (auto& s : clean_slots[r]) s.failed = true;
                if (with_outliers)
                    for (auto& s : contam_slots[r]) s.failed = true;
            }
        }
    };

    int n_threads = config.threads > 0
                        ? config.threads
                        : std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min(n_threads, reps);
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    McReport report;
    report.master_seed = config.master_seed;
    report.scale = reps;
    report.paired = with_outliers;
    report.source = "custom";

    auto aggregate = [&](const std::vector<std::vector<ReplicateSlot>>& slots, int e,
                         bool contaminated) {
        McCell cell;
        cell.cell_id = config.cell_id;
        cell.estimator = config.estimators[e].label + (contaminated ? "_c" : "");
        cell.contaminated = contaminated;
        cell.true_d = true_d;
        std::vector<double> values;
        values.reserve(reps);
        for (int r = 0; r < reps; ++r) {
            const ReplicateSlot& s = slots[r][e];
            if (s.failed) {
                ++cell.failures;
            } else {
                values.push_back(s.estimate);
                cell.dropped_total += s.dropped;
            }
        }
        cell.replicates = static_cast<int>(values.size());
        if (cell.failures > 0 &&
            static_cast<double>(cell.failures) > 0.01 * static_cast<double>(reps))
            throw std::runtime_error("run_monte_carlo: cell '" + cell.estimator + "' had " +
                                     std::to_string(cell.failures) + "/" +
                                     std::to_string(reps) + " failures (> 1%)");
        if (cell.replicates == 0)
            throw std::runtime_error("run_monte_carlo: cell '" + cell.estimator +
                                     "' has no successful replicates");
        double mean = 0.0;
        for (double v : values) mean += v;
        mean /= cell.replicates;
        double ss = 0.0, mse = 0.0;
        for (double v : values) {
            ss += (v - mean) * (v - mean);
            mse += (v - true_d) * (v - true_d);
        }
        cell.mean = mean;
        cell.bias = mean - true_d;
        cell.mse = mse / cell.replicates;
        if (cell.replicates > 1) {
            cell.sd = std::sqrt(ss / (cell.replicates - 1));
        } else {
            cell.sd = 0.0;
            cell.degenerate_sd = true;
        }
        report.cells.push_back(std::move(cell));
    };

    for (int e = 0; e < n_est; ++e) aggregate(clean_slots, e, false);
    if (with_outliers)
        for (int e = 0; e < n_est; ++e) aggregate(contam_slots, e, true);
    return report;
}

namespace {

std::string cell_label(const char* prefix, double d, int n) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s%.2f_n%d", prefix, d, n);
    return buf;
}

EstimatorConfig gph_config() {
    EstimatorConfig e;
    e.label = "GPH";
    e.method = DMethod::gph;
    e.bandwidth.alpha = 0.7;
    return e;
}

EstimatorConfig gphr_config(const std::string& label, WindowKind kind) {
    EstimatorConfig e;
    e.label = label;
    e.method = DMethod::gphr;
    e.bandwidth.alpha = 0.7;
    e.window_kind = kind;
    e.beta = 0.7;
    return e;
}

const OutlierSpec kStudyOutliers{{{10.0, 0.05}}};

}  // namespace

McReport reproduce_table(int table_id, int scale, std::uint64_t master_seed) {
    if (scale < 100) throw std::invalid_argument("reproduce_table: scale must be >= 100");
    McReport merged;
    merged.master_seed = master_seed;
    merged.scale = scale;
    merged.paired = true;
    merged.source = "table" + std::to_string(table_id);

    int sub = 0;
    auto run_cell = [&](McConfig config) {
        config.replicates = scale;
        config.master_seed = derive_seed(master_seed, 1000 * table_id + sub++, 7);
        McReport r = run_monte_carlo(config);
        for (auto& c : r.cells) merged.cells.push_back(std::move(c));
    };

    if (table_id == 1) {
        for (double d : {0.3, 0.45}) {
            for (int n : {100, 300, 800}) {
                McConfig config;
                config.arfima.d = d;
                config.n = n;
                config.outliers = kStudyOutliers;
                config.estimators = {gph_config(), gphr_config("GPHR", WindowKind::truncated)};
                config.cell_id = cell_label("d", d, n);
                run_cell(std::move(config));
            }
        }
    } else if (table_id == 2) {
        for (int n : {100, 300, 800}) {
            McConfig config;
            config.arfima.d = 0.3;
            config.n = n;
            config.outliers = kStudyOutliers;
            config.estimators = {gphr_config("GPHR_P", WindowKind::parzen),
                                 gphr_config("GPHR_TH", WindowKind::tukey_hamming),
                                 gphr_config("GPHR_B", WindowKind::bartlett)};
            config.cell_id = cell_label("d", 0.3, n);
            run_cell(std::move(config));
        }
    } else if (table_id == 3) {
        struct Row {
            double d_x;
            std::vector<int> ns;
        };
        for (const Row& row : {Row{0.8, {300, 800}}, Row{1.0, {100, 300, 800}}}) {
            for (int n : row.ns) {
                McConfig config;
                config.arfima.d = row.d_x - 1.0;  // differenced-scale memory parameter
                config.n = n;
                config.outliers = kStudyOutliers;
                config.differencing = true;
                config.estimators = {gph_config(), gphr_config("GPHR", WindowKind::truncated)};
                config.cell_id = cell_label("dx", row.d_x, n);
                run_cell(std::move(config));
            }
        }
    } else {
        throw std::invalid_argument("reproduce_table: table id must be 1, 2 or 3");
    }
    return merged;
}

std::string report_to_csv(const McReport& report) {
    std::ostringstream out;
    out << "cell-id,estimator,mean,sd,bias,mse,replicates,failures\n";
    for (const auto& c : report.cells) {
        out << c.cell_id << ',' << c.estimator << ',' << format_double(c.mean) << ','
            << format_double(c.sd) << ',' << format_double(c.bias) << ','
            << format_double(c.mse) << ',' << c.replicates << ',' << c.failures << '\n';
    }
    return out.str();
}

std::string report_to_json(const McReport& report) {
    nlohmann::json j;
    j["masterSeed"] = report.master_seed;
    j["scale"] = report.scale;
    j["paired"] = report.paired;
    j["source"] = report.source;
    j["cells"] = nlohmann::json::array();
    for (const auto& c : report.cells) {
        nlohmann::json cell;
        cell["cellId"] = c.cell_id;
        cell["estimator"] = c.estimator;
        cell["contaminated"] = c.contaminated;
        cell["trueD"] = c.true_d;
        cell["mean"] = c.mean;
        cell["sd"] = c.sd;
        cell["bias"] = c.bias;
        cell["mse"] = c.mse;
        cell["replicates"] = c.replicates;
        cell["failures"] = c.failures;
        cell["droppedTotal"] = c.dropped_total;
        cell["degenerateSd"] = c.degenerate_sd;
        j["cells"].push_back(std::move(cell));
    }
    return j.dump(2) + "\n";
}

}  // namespace robustlm
