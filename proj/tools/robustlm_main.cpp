// robustlm command line: simulate / contaminate / acf / spectrum /
// estimate / modify-mean / mc. Exit codes: 0 success, 1 computation
// refusal, 2 input error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "robustlm/autocovariance.hpp"
#include "robustlm/contamination.hpp"
#include "robustlm/estimators.hpp"
#include "robustlm/experiments.hpp"
#include "robustlm/io.hpp"
#include "robustlm/spectral.hpp"

using nlohmann::json;
using namespace robustlm;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

struct CommonInput {
    std::string path;
    std::string column = "0";

    TimeSeries load() const { return read_series_csv(path, ColumnSelector::parse(column)); }
};

void add_input_options(CLI::App* cmd, CommonInput& input) {
    cmd->add_option("-i,--input", input.path, "input CSV file")->required();
    cmd->add_option("-c,--column", input.column, "column name or 0-based index (default 0)");
}

std::vector<std::string> spec_comments(const ArfimaSpec& spec, int n, std::uint64_t seed,
                                       int integrate_order) {
    std::ostringstream phi, theta;
    for (std::size_t i = 0; i < spec.phi.size(); ++i) phi << (i ? "," : "") << spec.phi[i];
    for (std::size_t i = 0; i < spec.theta.size(); ++i) theta << (i ? "," : "") << spec.theta[i];
    std::ostringstream head;
    head << "robustlm simulate d=" << spec.d + integrate_order << " (stationary core d="
         << spec.d << ") phi=[" << phi.str() << "] theta=[" << theta.str()
         << "] sigma2=" << spec.sigma2 << " mu=" << spec.mu << " n=" << n << " seed=" << seed
         << " integrate=" << integrate_order;
    return {head.str()};
}

RobustSpectrumScale parse_scale(const std::string& name) {
    if (name == "normalized") return RobustSpectrumScale::normalized_acf;
    if (name == "raw") return RobustSpectrumScale::raw_acvf;
    throw InputError("unknown robust scale '" + name + "' (expected normalized|raw)");
}

// ---------------------------------------------------------------- simulate
int cmd_simulate(const ArfimaSpec& spec, int n, std::uint64_t seed, int integrate_order,
                 const std::string& out_path) {
    if (n < 2) throw InputError("simulate: n must be >= 2");
    if (integrate_order < 0) throw InputError("simulate: --integrate must be >= 0");
    TimeSeries series = simulate_arfima(spec, n, seed);
    for (int k = 0; k < integrate_order; ++k) {
        const TimeSeries walk = integrate(series, 0.0);
        // keep n observations per integration step: drop the leading
        // initial value so the output stays length n
        series.values.assign(walk.values.begin() + 1, walk.values.end());
    }
    write_series_csv(out_path, series.values, spec_comments(spec, n, seed, integrate_order));
    return 0;
}

// -------------------------------------------------------------- contaminate
int cmd_contaminate(const CommonInput& input, const std::vector<double>& magnitudes,
                    const std::vector<double>& probs, std::uint64_t seed,
                    const std::string& out_path) {
    if (magnitudes.size() != probs.size())
        throw InputError("contaminate: --magnitude and --prob counts differ");
    OutlierSpec spec;
    for (std::size_t j = 0; j < magnitudes.size(); ++j)
        spec.entries.push_back({magnitudes[j], probs[j]});
    const TimeSeries series = input.load();
    const ContaminatedSeries z = contaminate(series, spec, seed);
    std::ostringstream head;
    head << "robustlm contaminate seed=" << seed << " hits=" << z.hits.size() << " types=";
    for (std::size_t j = 0; j < spec.entries.size(); ++j)
        head << (j ? ";" : "") << "(" << spec.entries[j].magnitude << ","
             << spec.entries[j].probability << ")";
    write_series_csv(out_path, z.values, {head.str(), "source: " + input.path});
    return 0;
}

// ---------------------------------------------------------------------- acf
int cmd_acf(const CommonInput& input, int max_lag, const std::string& method, double qn_c,
            const std::string& out_path) {
    const TimeSeries series = input.load();
    QnConfig qn;
    qn.c = qn_c;
    std::ostringstream out;
    out << "lag,acvf,acf\n";
    if (method == "classical") {
        const double g0 = sample_acvf(series, 0);
        for (int h = 0; h <= max_lag; ++h) {
            const double g = sample_acvf(series, h);
            out << h << ',' << fmt(g) << ',' << fmt(g / g0) << '\n';
        }
    } else if (method == "robust") {
        for (int h = 0; h <= max_lag; ++h)
            out << h << ',' << fmt(robust_acvf(series, h, qn)) << ','
                << fmt(robust_acf(series, h, qn)) << '\n';
    } else {
        throw InputError("acf: unknown method '" + method + "' (classical|robust)");
    }
    if (out_path.empty())
        std::cout << out.str();
    else
        write_text_file(out_path, out.str());
    return 0;
}

// ------------------------------------------------------------------ spectrum
int cmd_spectrum(const CommonInput& input, const std::string& method,
                 const std::string& window_name, double beta, int explicit_m, double qn_c,
                 const std::string& scale_name, const std::string& out_path) {
    const TimeSeries series = input.load();
    const int n = static_cast<int>(series.size());
    const FourierGrid grid = FourierGrid::for_length(n);
    SpectralEstimate est;
    if (method == "classical") {
        est = periodogram(series, grid);
    } else if (method == "robust") {
        const WindowKind kind = window_kind_from_name(window_name);
        const WindowSpec window = explicit_m > 0 ? WindowSpec{kind, explicit_m}
                                                 : WindowSpec::from_beta(kind, n, beta);
        QnConfig qn;
        qn.c = qn_c;
        est = robust_pseudo_periodogram(series, window, qn, grid, parse_scale(scale_name));
    } else {
        throw InputError("spectrum: unknown method '" + method + "' (classical|robust)");
    }
    std::ostringstream out;
    out << "j,omega,value\n";
    for (int j = 1; j <= grid.count(); ++j)
        out << j << ',' << fmt(grid.omega(j)) << ',' << fmt(est.at(j)) << '\n';
    if (est.method == SpectralMethod::robust_pseudo && est.non_positive_count > 0)
        std::cerr << "note: " << est.non_positive_count << " non-positive ordinates\n";
    if (out_path.empty())
        std::cout << out.str();
    else
        write_text_file(out_path, out.str());
    return 0;
}

// ------------------------------------------------------------------ estimate
int cmd_estimate(const CommonInput& input, const std::string& method,
                 std::vector<double> alphas, double beta, int explicit_m,
                 const std::string& window_name, double qn_c, const std::string& scale_name,
                 bool as_json, bool after_diff) {
    TimeSeries series = input.load();
    if (series.size() < 30)
        throw std::invalid_argument("estimate: need at least 30 observations, got " +
                                    std::to_string(series.size()));
    if (alphas.empty()) alphas = {0.7};
    const WindowKind kind = window_kind_from_name(window_name);
    QnConfig qn;
    qn.c = qn_c;
    const RobustSpectrumScale scale = parse_scale(scale_name);

    json rows = json::array();
    std::ostringstream table;
    table << "method,alpha,mPrime,M,dHat,seOls,seAsymptotic,dropped\n";
    for (double alpha : alphas) {
        BandwidthSpec bw;
        bw.alpha = alpha;
        const int n = static_cast<int>(series.size()) - (after_diff ? 1 : 0);
        const WindowSpec window = explicit_m > 0 ? WindowSpec{kind, explicit_m}
                                                 : WindowSpec::from_beta(kind, n, beta);
        DEstimate est;
        if (after_diff) {
            est = estimate_after_difference(
                series, method == "gph" ? DMethod::gph : DMethod::gphr, bw, window, qn, scale);
        } else if (method == "gph") {
            est = gph(series, bw);
        } else if (method == "gphr") {
            est = gph_robust(series, bw, window, qn, scale);
        } else {
            throw InputError("estimate: unknown method '" + method + "' (gph|gphr)");
        }
        table << method << ',' << alpha << ',' << est.m_prime_used << ','
              << (method == "gph" ? 0 : window.M) << ',' << fmt6(est.d_hat) << ','
              << fmt6(est.se_ols) << ',' << fmt6(est.se_asymptotic) << ','
              << est.dropped_frequencies << '\n';
        json row;
        row["method"] = method;
        row["alpha"] = alpha;
        row["mPrime"] = est.m_prime_used;
        row["M"] = method == "gph" ? 0 : window.M;
        row["dHat"] = est.d_hat;
        row["seOls"] = est.se_ols;
        row["seAsymptotic"] = est.se_asymptotic;
        row["dropped"] = est.dropped_frequencies;
        row["afterDifferencing"] = est.after_differencing;
        rows.push_back(std::move(row));
    }
    if (as_json)
        std::cout << rows.dump(2) << "\n";
    else
        std::cout << table.str();
    return 0;
}

// --------------------------------------------------------------- modify-mean
int cmd_modify_mean(const CommonInput& input, const std::string& indices_text,
                    const std::string& out_path) {
    const TimeSeries series = input.load();
    std::vector<std::size_t> indices;
    std::stringstream ss(indices_text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        long v = 0;
        try {
            v = std::stol(tok);
        } catch (const std::exception&) {
            throw InputError("modify-mean: bad index '" + tok + "'");
        }
        if (v < 0 || v >= static_cast<long>(series.size()))
            throw InputError("modify-mean: index " + tok + " out of range [0, " +
                             std::to_string(series.size() - 1) + "]");
        indices.push_back(static_cast<std::size_t>(v));
    }
    double mean = 0.0;
    for (double v : series.values) mean += v;
    mean /= static_cast<double>(series.size());
    std::vector<double> modified = series.values;
    for (std::size_t idx : indices) modified[idx] = mean;
    std::ostringstream head;
    head << "robustlm modify-mean replaced=" << indices.size() << " indices=" << indices_text
         << " mean=" << fmt(mean);
    write_series_csv(out_path, modified, {head.str(), "source: " + input.path});
    return 0;
}

// ------------------------------------------------------------------------ mc
EstimatorConfig estimator_from_json(const json& spec) {
    EstimatorConfig est;
    if (!spec.contains("label") || !spec["label"].is_string())
        throw InputError("mc config: estimator entry missing string field 'label'");
    est.label = spec["label"];
    if (!spec.contains("method") || !spec["method"].is_string())
        throw InputError("mc config: estimator '" + est.label +
                         "' missing string field 'method'");
    const std::string method = spec["method"];
    if (method == "gph")
        est.method = DMethod::gph;
    else if (method == "gphr")
        est.method = DMethod::gphr;
    else
        throw InputError("mc config: estimator '" + est.label + "' has unknown method '" +
                         method + "'");
    if (spec.contains("alpha")) est.bandwidth.alpha = spec["alpha"].get<double>();
    if (spec.contains("mPrime")) est.bandwidth.explicit_m = spec["mPrime"].get<int>();
    if (spec.contains("beta")) est.beta = spec["beta"].get<double>();
    if (spec.contains("M")) est.explicit_M = spec["M"].get<int>();
    if (spec.contains("window")) est.window_kind = window_kind_from_name(spec["window"]);
    if (spec.contains("qnC")) est.qn.c = spec["qnC"].get<double>();
    if (spec.contains("robustScale")) est.robust_scale = parse_scale(spec["robustScale"]);
    return est;
}

McConfig custom_config_from_json(const json& c) {
    McConfig config;
    if (!c.contains("n")) throw InputError("mc config: custom block missing field 'n'");
    config.n = c["n"].get<int>();
    if (!c.contains("replicates"))
        throw InputError("mc config: custom block missing field 'replicates'");
    config.replicates = c["replicates"].get<int>();
    if (c.contains("masterSeed")) config.master_seed = c["masterSeed"].get<std::uint64_t>();
    if (c.contains("differencing")) config.differencing = c["differencing"].get<bool>();
    if (c.contains("trueD")) config.true_d = c["trueD"].get<double>();
    if (c.contains("cellId")) config.cell_id = c["cellId"].get<std::string>();

    if (c.contains("arfima")) {
        const json& a = c["arfima"];
        if (a.contains("d")) config.arfima.d = a["d"].get<double>();
        if (a.contains("phi")) config.arfima.phi = a["phi"].get<std::vector<double>>();
        if (a.contains("theta")) config.arfima.theta = a["theta"].get<std::vector<double>>();
        if (a.contains("sigma2")) config.arfima.sigma2 = a["sigma2"].get<double>();
        if (a.contains("mu")) config.arfima.mu = a["mu"].get<double>();
    }
    if (c.contains("outliers")) {
        for (const auto& o : c["outliers"]) {
            if (!o.contains("magnitude") || !o.contains("probability"))
                throw InputError(
                    "mc config: outlier entries need 'magnitude' and 'probability'");
            config.outliers.entries.push_back(
                {o["magnitude"].get<double>(), o["probability"].get<double>()});
        }
    }
    if (!c.contains("estimators") || !c["estimators"].is_array() || c["estimators"].empty())
        throw InputError("mc config: custom block needs a non-empty 'estimators' array");
    for (const auto& e : c["estimators"]) config.estimators.push_back(estimator_from_json(e));
    return config;
}

int cmd_mc(const std::string& config_path, const std::string& out_csv,
           const std::string& out_json, int threads) {
    std::ifstream in(config_path);
    if (!in) throw InputError("cannot open config '" + config_path + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw InputError("mc config '" + config_path + "': " + std::string(e.what()));
    }

    McReport report;
    if (doc.contains("table")) {
        const int table_id = doc["table"].get<int>();
        const int scale = doc.value("scale", 1000);
        if (scale < 100)
            throw InputError("mc config: scale must be >= 100, got " + std::to_string(scale));
        const std::uint64_t seed = doc.value("masterSeed", 20110401ULL);
        report = reproduce_table(table_id, scale, seed);
    } else if (doc.contains("custom")) {
        McConfig config = custom_config_from_json(doc["custom"]);
        if (config.replicates < 100)
            throw InputError("mc config: replicates must be >= 100, got " +
                             std::to_string(config.replicates));
        config.threads = threads;
        report = run_monte_carlo(config);
    } else {
        throw InputError("mc config: expected a top-level 'table' or 'custom' block");
    }

    const std::string csv = report_to_csv(report);
    std::cout << csv;
    if (!out_csv.empty()) write_text_file(out_csv, csv);
    if (!out_json.empty()) write_text_file(out_json, report_to_json(report));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"robust long-memory estimation for ARFIMA series with additive outliers"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "worker thread cap for mc runs")
        ->envname("ROBUSTLM_THREADS");

    // simulate
    auto* sim = app.add_subcommand("simulate", "simulate an ARFIMA(p,d,q) series");
    double sim_d = 0.0, sim_sigma2 = 1.0, sim_mu = 0.0;
    std::vector<double> sim_phi, sim_theta;
    int sim_n = 0, sim_integrate = 0;
    std::uint64_t sim_seed = 1;
    std::string sim_out;
    sim->add_option("--d", sim_d, "memory parameter of the written series")->required();
    sim->add_option("--phi", sim_phi, "AR coefficients");
    sim->add_option("--theta", sim_theta, "MA coefficients");
    sim->add_option("--sigma2", sim_sigma2, "innovation variance");
    sim->add_option("--mu", sim_mu, "process mean");
    sim->add_option("--n", sim_n, "series length")->required();
    sim->add_option("--seed", sim_seed, "random seed");
    sim->add_option("--integrate", sim_integrate,
                    "integer integrations applied after simulating d - k");
    sim->add_option("-o,--out", sim_out, "output CSV")->required();

    // contaminate
    auto* cont = app.add_subcommand("contaminate", "add Bernoulli-Rademacher outliers");
    CommonInput cont_in;
    add_input_options(cont, cont_in);
    std::vector<double> cont_mag, cont_prob;
    std::uint64_t cont_seed = 1;
    std::string cont_out;
    cont->add_option("--magnitude", cont_mag, "outlier magnitude (repeatable)")->required();
    cont->add_option("--prob", cont_prob, "occurrence probability per type")->required();
    cont->add_option("--seed", cont_seed, "random seed");
    cont->add_option("-o,--out", cont_out, "output CSV")->required();

    // acf
    auto* acf = app.add_subcommand("acf", "autocovariance/autocorrelation table");
    CommonInput acf_in;
    add_input_options(acf, acf_in);
    int acf_maxlag = 20;
    std::string acf_method = "robust", acf_out;
    double acf_qnc = 2.2191;
    acf->add_option("--max-lag", acf_maxlag, "largest lag");
    acf->add_option("--method", acf_method, "classical|robust");
    acf->add_option("--qn-c", acf_qnc, "Qn consistency constant");
    acf->add_option("-o,--out", acf_out, "output CSV (default stdout)");

    // spectrum
    auto* spec = app.add_subcommand("spectrum", "periodogram or robust pseudo-periodogram");
    CommonInput spec_in;
    add_input_options(spec, spec_in);
    std::string spec_method = "robust", spec_window = "truncated", spec_out,
                spec_scale = "normalized";
    double spec_beta = 0.7, spec_qnc = 2.2191;
    int spec_M = 0;
    spec->add_option("--method", spec_method, "classical|robust");
    spec->add_option("--window", spec_window, "truncated|bartlett|parzen|tukey-hamming");
    spec->add_option("--beta", spec_beta, "truncation exponent, M = floor(n^beta)");
    spec->add_option("--M", spec_M, "explicit truncation point (overrides --beta)");
    spec->add_option("--qn-c", spec_qnc, "Qn consistency constant");
    spec->add_option("--robust-scale", spec_scale, "normalized|raw robust curve");
    spec->add_option("-o,--out", spec_out, "output CSV (default stdout)");

    // estimate
    auto* est = app.add_subcommand("estimate", "GPH / GPHR estimation of d");
    CommonInput est_in;
    add_input_options(est, est_in);
    std::string est_method = "gphr", est_window = "truncated", est_scale = "normalized";
    std::vector<double> est_alphas;
    double est_beta = 0.7, est_qnc = 2.2191;
    int est_M = 0;
    bool est_json = false, est_diff = false;
    est->add_option("--method", est_method, "gph|gphr");
    est->add_option("--alpha", est_alphas, "bandwidth exponent(s), one row per value");
    est->add_option("--beta", est_beta, "truncation exponent for gphr");
    est->add_option("--M", est_M, "explicit truncation point for gphr");
    est->add_option("--window", est_window, "lag window for gphr");
    est->add_option("--qn-c", est_qnc, "Qn consistency constant");
    est->add_option("--robust-scale", est_scale, "normalized|raw robust curve");
    est->add_flag("--difference", est_diff, "difference first, report d+1");
    est->add_flag("--json", est_json, "emit JSON rows");

    // modify-mean
    auto* mod = app.add_subcommand(
        "modify-mean", "replace listed observations by the original sample mean");
    CommonInput mod_in;
    add_input_options(mod, mod_in);
    std::string mod_indices, mod_out;
    mod->add_option("--indices", mod_indices, "comma-separated 0-based indices")->required();
    mod->add_option("-o,--out", mod_out, "output CSV")->required();

    // mc
    auto* mc = app.add_subcommand("mc", "Monte Carlo study from a JSON config");
    std::string mc_config, mc_csv, mc_json;
    mc->add_option("--config", mc_config, "JSON config file")->required();
    mc->add_option("--out-csv", mc_csv, "write the report CSV here");
    mc->add_option("--out-json", mc_json, "write the report JSON here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) {
            ArfimaSpec model;
            model.d = sim_d - sim_integrate;
            model.phi = sim_phi;
            model.theta = sim_theta;
            model.sigma2 = sim_sigma2;
            model.mu = sim_mu;
            return cmd_simulate(model, sim_n, sim_seed, sim_integrate, sim_out);
        }
        if (cont->parsed())
            return cmd_contaminate(cont_in, cont_mag, cont_prob, cont_seed, cont_out);
        if (acf->parsed()) return cmd_acf(acf_in, acf_maxlag, acf_method, acf_qnc, acf_out);
        if (spec->parsed())
            return cmd_spectrum(spec_in, spec_method, spec_window, spec_beta, spec_M, spec_qnc,
                                spec_scale, spec_out);
        if (est->parsed())
            return cmd_estimate(est_in, est_method, est_alphas, est_beta, est_M, est_window,
                                est_qnc, est_scale, est_json, est_diff);
        if (mod->parsed()) return cmd_modify_mean(mod_in, mod_indices, mod_out);
        if (mc->parsed()) return cmd_mc(mc_config, mc_csv, mc_json, threads);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
