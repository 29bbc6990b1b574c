#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "poegp/bench.hpp"
#include "poegp/version.hpp"

using nlohmann::json;

namespace {

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    json j;
    in >> j;
    return j;
}

json hyp_to_json(const poegp::Hyperparameters& h, const poegp::Dataset& data) {
    json j;
    j["log_lengthscales"] = std::vector<double>(
        h.log_lengthscales.data(), h.log_lengthscales.data() + h.dim());
    j["log_signal_std"] = h.log_signal_std;
    j["log_noise_std"] = h.log_noise_std;
    j["feature_means"] = std::vector<double>(
        data.feature_means.data(), data.feature_means.data() + data.dim());
    j["feature_stds"] = std::vector<double>(
        data.feature_stds.data(), data.feature_stds.data() + data.dim());
    j["target_mean"] = data.target_mean;
    j["target_std"] = data.target_std;
    return j;
}

poegp::Hyperparameters hyp_from_json(const json& j) {
    const std::vector<double> ls = j.at("log_lengthscales").get<std::vector<double>>();
    poegp::Hyperparameters h(static_cast<int>(ls.size()));
    for (size_t i = 0; i < ls.size(); ++i) h.log_lengthscales(i) = ls[i];
    h.log_signal_std = j.at("log_signal_std").get<double>();
    h.log_noise_std = j.at("log_noise_std").get<double>();
    return h;
}

int run_synth(int n, double noise_std, uint64_t seed, const std::string& out) {
    const poegp::Dataset d = poegp::synth_1d(n, seed, noise_std);
    poegp::write_csv(poegp::table_from_dataset(d), out);
    std::cout << "wrote " << d.n() << " rows to " << out << "\n";
    return 0;
}

int run_fit(const std::string& data_path, const std::string& target, int ppe,
            const std::string& strategy, int max_iters, uint64_t seed, int threads,
            const std::string& out) {
    const poegp::RawTable table = poegp::read_csv(data_path);
    const int target_col = table.resolve_column(target);
    const auto data = poegp::dataset_from_table(table, target_col);
    poegp::FitOptions opts;
    opts.lbfgs.max_iters = max_iters;

    json j;
    if (ppe > 0) {
        poegp::Partition part;
        if (poegp::partition_strategy_from_string(strategy) ==
            poegp::PartitionStrategy::Random)
            part = poegp::random_partition(data->n(), ppe, seed);
        else
            part = poegp::kmeans_partition(data->X, ppe, seed);
        poegp::TrainOptions topts;
        topts.fit = opts;
        topts.threads = threads;
        const poegp::ExpertPool pool =
            poegp::train_pool(data, part, poegp::default_init(*data), topts);
        j = hyp_to_json(pool.shared_hyp, *data);
        j["lml"] = pool.fit_info.lml;
        j["iterations"] = pool.fit_info.iterations;
        j["converged"] = pool.fit_info.converged;
        j["line_search_failed"] = pool.fit_info.line_search_failed;
        j["num_experts"] = pool.num_experts();
    } else {
        const poegp::FitResult r = poegp::fit(*data, poegp::default_init(*data), opts);
        j = hyp_to_json(r.hyp, *data);
        j["lml"] = r.lml;
        j["iterations"] = r.iterations;
        j["converged"] = r.converged;
        j["line_search_failed"] = r.line_search_failed;
        j["num_experts"] = 1;
    }
    j["version"] = POEGP_VERSION;
    std::ofstream os(out);
    if (!os) throw std::runtime_error("cannot open for writing: " + out);
    os << j.dump(2) << "\n";
    std::cout << "lml " << j["lml"].get<double>() << ", wrote " << out << "\n";
    return 0;
}

int run_predict(const std::string& data_path, const std::string& target,
                const std::string& hyp_path, const std::string& test_path,
                const std::string& space_name, const std::string& out) {
    const json hj = load_json(hyp_path);
    const poegp::Hyperparameters hyp = hyp_from_json(hj);
    const poegp::RawTable train_table = poegp::read_csv(data_path);
    const int target_col = train_table.resolve_column(target);
    const auto train = poegp::dataset_from_table(train_table, target_col);
    const poegp::TrainedGP gp = poegp::train_gp(train, hyp);

    const poegp::RawTable test_table = poegp::read_csv(test_path);
    // The test file may carry the target column; map feature columns by name
    // when possible, by position otherwise.
    std::vector<int> test_cols;
    for (int c = 0; c < train_table.cols(); ++c) {
        if (c == target_col) continue;
        const auto it = std::find(test_table.columns.begin(), test_table.columns.end(),
                                  train_table.columns[c]);
        if (it != test_table.columns.end()) {
            test_cols.push_back(static_cast<int>(it - test_table.columns.begin()));
        } else if (test_table.cols() == train_table.cols()) {
            test_cols.push_back(c);
        } else if (test_table.cols() == train_table.cols() - 1) {
            test_cols.push_back(c < target_col ? c : c - 1);
        } else {
            throw std::invalid_argument("predict: cannot locate feature column '" +
                                        train_table.columns[c] + "' in the test file");
        }
    }
    Eigen::MatrixXd Xt(test_table.n(), train->dim());
    for (int fc = 0; fc < train->dim(); ++fc)
        Xt.col(fc) = (test_table.values.col(test_cols[fc]).array() -
                      train->feature_means(fc)) /
                     train->feature_stds(fc);
    const poegp::Space space = space_name == "y" ? poegp::Space::Y : poegp::Space::F;
    Eigen::VectorXd m, v;
    poegp::predict_batch(gp, Xt, space, m, v);

    // Report in the original target units.
    poegp::RawTable outt;
    outt.columns = {"mean", "variance"};
    outt.values.resize(m.size(), 2);
    outt.values.col(0) = m.array() * train->target_std + train->target_mean;
    outt.values.col(1) = v.array() * train->target_std * train->target_std;
    poegp::write_csv(outt, out);
    std::cout << "wrote " << m.size() << " predictions to " << out << "\n";
    return 0;
}

int finish_report(const poegp::ExperimentResult& res, const json& provenance,
                  const std::string& out, const std::string& json_out, bool no_timing) {
    if (!out.empty())
        poegp::emit_report(res.rows, poegp::ReportFormat::Csv, out, !no_timing);
    if (!json_out.empty())
        poegp::emit_report(res.rows, poegp::ReportFormat::Json, json_out, !no_timing,
                           &provenance);
    int cells_failed = 0, cells_total = 0;
    for (const auto& r : res.rows) {
        if (r.method == "full_gp" || r.method == "linear") continue;
        ++cells_total;
        if (!std::isfinite(r.nlpd)) ++cells_failed;
    }
    for (const auto& r : res.rows)
        std::cout << r.cell << (r.sweep_axis.empty() ? "" : " @" + std::to_string(r.sweep_value))
                  << ": nlpd " << r.nlpd << ", rmse " << r.rmse
                  << (r.failed ? " [failures: " + std::to_string(r.precision_failures) + "]" : "")
                  << "\n";
    return (cells_total > 0 && cells_failed == cells_total) ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Product-of-experts Gaussian process regression benchmark"};
    app.set_version_flag("--version", POEGP_VERSION);
    app.require_subcommand(1);

    // synth
    auto* synth = app.add_subcommand("synth", "generate the 1-D synthetic gap dataset");
    int synth_n = 300;
    double synth_noise = 0.1;
    uint64_t synth_seed = 0;
    std::string synth_out = "synth.csv";
    synth->add_option("--n", synth_n, "number of rows");
    synth->add_option("--noise-std", synth_noise, "observation noise std");
    synth->add_option("--seed", synth_seed, "RNG seed");
    int synth_threads = 0;
    synth->add_option("--threads", synth_threads, "accepted for interface uniformity");
    synth->add_option("--out", synth_out, "output CSV path");

    // fit
    auto* fit = app.add_subcommand("fit", "fit shared hyperparameters on a CSV dataset");
    std::string fit_data, fit_target, fit_strategy = "kmeans", fit_out = "hyp.json";
    int fit_ppe = 0, fit_iters = 100, fit_threads = 0;
    uint64_t fit_seed = 0;
    fit->add_option("--data", fit_data, "training CSV")->required();
    fit->add_option("--target", fit_target, "target column name (default: last)");
    fit->add_option("--points-per-expert", fit_ppe,
                    "train a pool with this expert size (default: single full GP)");
    fit->add_option("--strategy", fit_strategy, "random|kmeans");
    fit->add_option("--max-iters", fit_iters, "optimizer iteration cap");
    fit->add_option("--seed", fit_seed, "RNG seed");
    fit->add_option("--threads", fit_threads, "worker threads (0 = auto)");
    fit->add_option("--out", fit_out, "output hyperparameter JSON");

    // predict
    auto* predict = app.add_subcommand("predict", "predict with fitted hyperparameters");
    std::string pr_data, pr_target, pr_hyp, pr_test, pr_space = "y", pr_out = "preds.csv";
    predict->add_option("--data", pr_data, "training CSV")->required();
    predict->add_option("--target", pr_target, "target column name (default: last)");
    predict->add_option("--hyp", pr_hyp, "hyperparameter JSON from fit")->required();
    predict->add_option("--test", pr_test, "CSV of test inputs")->required();
    predict->add_option("--space", pr_space, "f|y");
    uint64_t pr_seed = 0;
    int pr_threads = 0;
    predict->add_option("--seed", pr_seed, "accepted for interface uniformity");
    predict->add_option("--threads", pr_threads, "accepted for interface uniformity");
    predict->add_option("--out", pr_out, "output CSV path");

    // bench
    auto* bench = app.add_subcommand("bench", "run an experiment config");
    std::string bench_config, bench_out, bench_json;
    std::optional<uint64_t> bench_seed;
    std::optional<int> bench_threads;
    bool bench_no_timing = false;
    bench->add_option("--config", bench_config, "experiment JSON")->required();
    bench->add_option("--out", bench_out, "metrics CSV path");
    bench->add_option("--json", bench_json, "full JSON report path");
    bench->add_option("--seed", bench_seed, "override config seed");
    bench->add_option("--threads", bench_threads, "override config threads");
    bench->add_flag("--no-timing", bench_no_timing, "zero wall-clock fields in reports");

    // sweep
    auto* sw = app.add_subcommand("sweep", "sweep temperature or points-per-expert");
    std::string sw_config, sw_axis = "temperature", sw_out, sw_json;
    std::vector<double> sw_values;
    std::optional<uint64_t> sw_seed;
    std::optional<int> sw_threads;
    bool sw_no_timing = false;
    sw->add_option("--config", sw_config, "experiment JSON")->required();
    sw->add_option("--axis", sw_axis, "temperature|points_per_expert");
    sw->add_option("--values", sw_values, "swept values")->required()->delimiter(',');
    sw->add_option("--out", sw_out, "metrics CSV path");
    sw->add_option("--json", sw_json, "full JSON report path");
    sw->add_option("--seed", sw_seed, "override config seed");
    sw->add_option("--threads", sw_threads, "override config threads");
    sw->add_flag("--no-timing", sw_no_timing, "zero wall-clock fields in reports");

    CLI11_PARSE(app, argc, argv);

    try {
        if (synth->parsed()) return run_synth(synth_n, synth_noise, synth_seed, synth_out);
        if (fit->parsed())
            return run_fit(fit_data, fit_target, fit_ppe, fit_strategy, fit_iters, fit_seed,
                           fit_threads, fit_out);
        if (predict->parsed())
            return run_predict(pr_data, pr_target, pr_hyp, pr_test, pr_space, pr_out);
        if (bench->parsed()) {
            poegp::ExperimentConfig cfg = poegp::config_from_json(load_json(bench_config));
            if (bench_seed) cfg.seed = *bench_seed;
            if (bench_threads) cfg.threads = *bench_threads;
            const poegp::ExperimentResult res = poegp::run_experiment(cfg);
            json prov = poegp::config_to_json(cfg);
            prov["n_train"] = res.n_train;
            prov["n_test"] = res.n_test;
            prov["dims"] = res.dims;
            return finish_report(res, prov, bench_out, bench_json, bench_no_timing);
        }
        if (sw->parsed()) {
            poegp::ExperimentConfig cfg = poegp::config_from_json(load_json(sw_config));
            if (sw_seed) cfg.seed = *sw_seed;
            if (sw_threads) cfg.threads = *sw_threads;
            const poegp::ExperimentResult res =
                poegp::sweep(cfg, poegp::sweep_axis_from_string(sw_axis), sw_values);
            json prov = poegp::config_to_json(cfg);
            prov["sweep_axis"] = sw_axis;
            prov["sweep_values"] = sw_values;
            return finish_report(res, prov, sw_out, sw_json, sw_no_timing);
        }
    } catch (const poegp::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
