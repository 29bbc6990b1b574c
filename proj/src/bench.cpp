#include "poegp/bench.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "poegp/parallel.hpp"
#include "poegp/rng.hpp"
#include "poegp/version.hpp"

namespace poegp {

using nlohmann::json;

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Sub-seed streams derived from the experiment seed.
enum SeedStream : uint64_t { kSplitStream = 0, kPartitionStream = 1, kMasterStream = 2,
                             kSynthStream = 3 };
}  // namespace

Dataset synth_1d(int n, uint64_t seed, double noise_std) {
    if (n < 10) throw std::invalid_argument("synth_1d: n must be >= 10");
    if (noise_std < 0.0) throw std::invalid_argument("synth_1d: negative noise_std");
    Rng rng(seed);
    Eigen::MatrixXd X(n, 1);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
        double x;
        do {
            x = -1.0 + 2.0 * rng.uniform();
        } while (x > 0.2 && x < 0.5);
        X(i, 0) = x;
        y(i) = std::sin(12.0 * x) + 0.66 * std::cos(25.0 * x) + noise_std * rng.normal();
    }
    return Dataset(std::move(X), std::move(y));
}

double rmse(const Eigen::VectorXd& predictions, const Eigen::VectorXd& targets) {
    if (predictions.size() == 0 || predictions.size() != targets.size())
        throw std::invalid_argument("rmse: inputs must be non-empty and equally sized");
    return std::sqrt((predictions - targets).squaredNorm() /
                     static_cast<double>(predictions.size()));
}

void ExperimentConfig::validate() const {
    if (!(test_fraction > 0.0 && test_fraction < 1.0))
        throw std::invalid_argument("ExperimentConfig: test_fraction must be in (0, 1)");
    if (dataset.csv_path.empty() == !dataset.synthetic.has_value())
        throw std::invalid_argument(
            "ExperimentConfig: dataset needs exactly one of csv path or synthetic spec");
    if (partition.points_per_expert < 1)
        throw std::invalid_argument("ExperimentConfig: points_per_expert must be >= 1");
    if (cells.empty())
        throw std::invalid_argument("ExperimentConfig: no aggregation cells");
    for (const auto& c : cells) c.validate();
    if (grbcm_master_fraction >= 1.0)
        throw std::invalid_argument("ExperimentConfig: grbcm_master_fraction must be < 1");
}

std::shared_ptr<const Dataset> dataset_from_table(const RawTable& table, int target_col) {
    return prepare_data(table, target_col, 0.0, 0).train;
}

PreparedData prepare_data(const RawTable& table, int target_col, double test_fraction,
                          uint64_t seed) {
    const int n = table.n();
    const int cols = table.cols();
    if (target_col < 0 || target_col >= cols)
        throw std::invalid_argument("prepare_data: target column out of range");
    if (n < 2 && test_fraction > 0.0)
        throw std::invalid_argument("prepare_data: too few rows to split");

    PreparedData out;
    int n_test = 0;
    if (test_fraction > 0.0) {
        n_test = std::max(1, static_cast<int>(std::lround(test_fraction * n)));
        if (n_test >= n)
            throw std::invalid_argument("prepare_data: test fraction leaves no training rows");
        Rng rng(seed);
        std::vector<int> order = rng.permutation(n);
        out.test_rows.assign(order.begin(), order.begin() + n_test);
        out.train_rows.assign(order.begin() + n_test, order.end());
        std::sort(out.test_rows.begin(), out.test_rows.end());
        std::sort(out.train_rows.begin(), out.train_rows.end());
    } else {
        out.train_rows.resize(n);
        std::iota(out.train_rows.begin(), out.train_rows.end(), 0);
    }
    const int n_train = static_cast<int>(out.train_rows.size());
    const int d = cols - 1;

    // Column means/stds over the training rows only.
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(cols);
    for (const int r : out.train_rows) mean += table.values.row(r).transpose();
    mean /= n_train;
    Eigen::VectorXd var = Eigen::VectorXd::Zero(cols);
    for (const int r : out.train_rows)
        var += (table.values.row(r).transpose() - mean).array().square().matrix();
    var /= n_train;
    Eigen::VectorXd sd = var.array().sqrt();
    for (int c = 0; c < cols; ++c) {
        if (!(sd(c) > 1e-12)) {
            std::cerr << "warning: column '" << table.columns[c]
                      << "' is constant on the training split; std clamped to 1\n";
            sd(c) = 1.0;
        }
    }

    auto dataset = std::make_shared<Dataset>();
    dataset->X.resize(n_train, d);
    dataset->y.resize(n_train);
    dataset->feature_means.resize(d);
    dataset->feature_stds.resize(d);
    int fc = 0;
    std::vector<int> feature_cols;
    for (int c = 0; c < cols; ++c)
        if (c != target_col) feature_cols.push_back(c);
    for (const int c : feature_cols) {
        dataset->feature_means(fc) = mean(c);
        dataset->feature_stds(fc) = sd(c);
        ++fc;
    }
    dataset->target_mean = mean(target_col);
    dataset->target_std = sd(target_col);
    for (int i = 0; i < n_train; ++i) {
        const int r = out.train_rows[i];
        for (size_t k = 0; k < feature_cols.size(); ++k)
            dataset->X(i, k) = (table.values(r, feature_cols[k]) - dataset->feature_means(k)) /
                               dataset->feature_stds(k);
        dataset->y(i) = (table.values(r, target_col) - dataset->target_mean) /
                        dataset->target_std;
    }
    dataset->validate();
    out.train = std::move(dataset);

    out.test_X.resize(n_test, d);
    out.test_y.resize(n_test);
    for (int i = 0; i < n_test; ++i) {
        const int r = out.test_rows[i];
        for (size_t k = 0; k < feature_cols.size(); ++k)
            out.test_X(i, k) = (table.values(r, feature_cols[k]) - out.train->feature_means(k)) /
                               out.train->feature_stds(k);
        out.test_y(i) = (table.values(r, target_col) - out.train->target_mean) /
                        out.train->target_std;
    }
    return out;
}

RawTable table_from_dataset(const Dataset& d, const std::string& target_name) {
    RawTable t;
    for (int k = 0; k < d.dim(); ++k) t.columns.push_back("x" + std::to_string(k + 1));
    t.columns.push_back(target_name);
    t.values.resize(d.n(), d.dim() + 1);
    t.values.leftCols(d.dim()) = d.X;
    t.values.col(d.dim()) = d.y;
    return t;
}

// ---------------------------------------------------------------------------
// Config <-> JSON

namespace {
AggregationConfig cell_from_json(const json& j) {
    AggregationConfig c;
    c.method = method_from_string(j.at("method").get<std::string>());
    c.weighting.functional = functional_from_string(j.value("functional", "var"));
    c.weighting.transform = transform_from_string(j.value("transform", "softmax"));
    c.weighting.temperature = j.value("temperature", 100.0);
    c.weighting.normalized =
        j.value("normalized", c.weighting.transform == WeightTransform::Softmax);
    const std::string space = j.value("space", "f");
    if (space != "f" && space != "y")
        throw std::invalid_argument("cell space must be 'f' or 'y'");
    c.space = space == "f" ? Space::F : Space::Y;
    c.barycenter_mode =
        barycenter_mode_from_string(j.value("barycenter_mode", "variance_average"));
    c.validate();
    return c;
}

json cell_to_json(const AggregationConfig& c) {
    json j;
    j["method"] = to_string(c.method);
    j["functional"] = to_string(c.weighting.functional);
    j["transform"] = to_string(c.weighting.transform);
    j["temperature"] = c.weighting.temperature;
    j["normalized"] = c.weighting.normalized;
    j["space"] = to_string(c.space);
    j["barycenter_mode"] = to_string(c.barycenter_mode);
    return j;
}
}  // namespace

ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig c;
    const json& d = j.at("dataset");
    c.dataset.name = d.value("name", "");
    if (d.contains("csv")) {
        c.dataset.csv_path = d.at("csv").get<std::string>();
        c.dataset.target_column = d.value("target", "");
        if (c.dataset.name.empty()) c.dataset.name = c.dataset.csv_path;
    }
    if (d.contains("synthetic")) {
        SyntheticSpec s;
        s.n = d.at("synthetic").value("n", 300);
        s.noise_std = d.at("synthetic").value("noise_std", 0.1);
        c.dataset.synthetic = s;
        if (c.dataset.name.empty()) c.dataset.name = "synthetic";
    }
    c.test_fraction = j.value("test_fraction", 0.1);
    c.seed = j.value("seed", static_cast<uint64_t>(0));
    if (j.contains("partition")) {
        const json& p = j.at("partition");
        c.partition.strategy =
            partition_strategy_from_string(p.value("strategy", "kmeans"));
        c.partition.points_per_expert = p.value("points_per_expert", 100);
        c.partition.kmeans_max_iter = p.value("max_iter", 100);
    }
    for (const json& cj : j.at("cells")) c.cells.push_back(cell_from_json(cj));
    if (j.contains("optimizer")) {
        const json& o = j.at("optimizer");
        c.optimizer.lbfgs.max_iters = o.value("max_iters", 100);
        c.optimizer.lbfgs.grad_tol = o.value("grad_tol", 1e-6);
        c.optimizer.lbfgs.history = o.value("history", 10);
    }
    c.grbcm_master_fraction = j.value("grbcm_master_fraction", 0.0);
    c.full_gp_cap = j.value("full_gp_cap", 2000);
    c.threads = j.value("threads", 0);
    c.validate();
    return c;
}

json config_to_json(const ExperimentConfig& c) {
    json j;
    json d;
    d["name"] = c.dataset.name;
    if (!c.dataset.csv_path.empty()) {
        d["csv"] = c.dataset.csv_path;
        d["target"] = c.dataset.target_column;
    }
    if (c.dataset.synthetic) {
        d["synthetic"] = {{"n", c.dataset.synthetic->n},
                          {"noise_std", c.dataset.synthetic->noise_std}};
    }
    j["dataset"] = d;
    j["test_fraction"] = c.test_fraction;
    j["seed"] = c.seed;
    j["partition"] = {{"strategy", to_string(c.partition.strategy)},
                      {"points_per_expert", c.partition.points_per_expert},
                      {"max_iter", c.partition.kmeans_max_iter}};
    json cells = json::array();
    for (const auto& cell : c.cells) cells.push_back(cell_to_json(cell));
    j["cells"] = cells;
    j["optimizer"] = {{"max_iters", c.optimizer.lbfgs.max_iters},
                      {"grad_tol", c.optimizer.lbfgs.grad_tol},
                      {"history", c.optimizer.lbfgs.history}};
    j["grbcm_master_fraction"] = c.grbcm_master_fraction;
    j["full_gp_cap"] = c.full_gp_cap;
    j["threads"] = c.threads;
    return j;
}

// ---------------------------------------------------------------------------
// Experiment machinery

namespace {

std::string sizes_string(const std::vector<int>& sizes) {
    std::string s;
    for (size_t i = 0; i < sizes.size(); ++i) {
        if (i) s += '|';
        s += std::to_string(sizes[i]);
    }
    return s;
}

struct PoolBundle {
    PreparedData prep;
    ExpertPool pool;
    double train_seconds = 0.0;
    // Lazily computed prediction grids, one per space.
    std::optional<ExpertPredictions> expert_preds[2];
    std::optional<GrbcmPredictions> grbcm_preds[2];
};

RawTable load_table(const DatasetSpec& spec, uint64_t seed) {
    if (spec.synthetic)
        return table_from_dataset(
            synth_1d(spec.synthetic->n, mix_seed(seed, kSynthStream),
                     spec.synthetic->noise_std));
    return read_csv(spec.csv_path);
}

PoolBundle build_pool(const ExperimentConfig& config, int ppe_override = 0) {
    const RawTable table = load_table(config.dataset, config.seed);
    const int target = table.resolve_column(config.dataset.target_column);

    PoolBundle b;
    b.prep = prepare_data(table, target, config.test_fraction,
                          mix_seed(config.seed, kSplitStream));
    const int n_train = b.prep.train->n();
    const int ppe = std::min(ppe_override > 0 ? ppe_override : config.partition.points_per_expert,
                             n_train);

    Partition part;
    if (config.partition.strategy == PartitionStrategy::Random)
        part = random_partition(n_train, ppe, mix_seed(config.seed, kPartitionStream));
    else
        part = kmeans_partition(b.prep.train->X, ppe, mix_seed(config.seed, kPartitionStream),
                                config.partition.kmeans_max_iter);

    const auto t0 = std::chrono::steady_clock::now();
    TrainOptions topts;
    topts.fit = config.optimizer;
    topts.threads = config.threads;
    b.pool = train_pool(b.prep.train, part, default_init(*b.prep.train), topts);

    bool need_grbcm = false;
    for (const auto& c : config.cells)
        if (c.method == Method::GRBCM) need_grbcm = true;
    if (need_grbcm)
        build_grbcm(b.pool, config.grbcm_master_fraction, mix_seed(config.seed, kMasterStream),
                    config.threads);
    b.train_seconds = seconds_since(t0);
    return b;
}

const ExpertPredictions& expert_preds_for(PoolBundle& b, Space space, int threads) {
    auto& slot = b.expert_preds[space == Space::F ? 0 : 1];
    if (!slot) slot = predict_experts(b.pool, b.prep.test_X, space, threads);
    return *slot;
}

const GrbcmPredictions& grbcm_preds_for(PoolBundle& b, Space space, int threads) {
    auto& slot = b.grbcm_preds[space == Space::F ? 0 : 1];
    if (!slot) slot = predict_grbcm(b.pool, b.prep.test_X, space, threads);
    return *slot;
}

MetricsRow row_skeleton(const AggregationConfig& cfg) {
    MetricsRow row;
    row.cell = cfg.cell_id();
    row.method = to_string(cfg.method);
    row.functional = to_string(cfg.weighting.functional);
    row.transform = to_string(cfg.weighting.transform);
    row.temperature = cfg.weighting.temperature;
    row.normalized = cfg.weighting.normalized;
    row.space = to_string(cfg.space);
    row.barycenter_mode = to_string(cfg.barycenter_mode);
    return row;
}

MetricsRow evaluate_cell(PoolBundle& b, const ExperimentConfig& config,
                         const AggregationConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    MetricsRow row = row_skeleton(cfg);
    row.expert_sizes = sizes_string(b.pool.partition.group_sizes());
    row.jitter_events = b.pool.jitter_events;

    const int t = static_cast<int>(b.prep.test_X.rows());
    const double noise_var = b.pool.shared_hyp.noise_var();
    std::vector<double> nlpds(t), errs(t);
    std::vector<char> ok(t, 0);
    std::vector<std::string> errors(t);

    if (cfg.method == Method::GRBCM) {
        const GrbcmPredictions& gp = grbcm_preds_for(b, cfg.space, config.threads);
        parallel_for(t, config.threads, [&](int i) {
            try {
                ExpertSlice slice;
                slice.means = gp.child_means.row(i).transpose();
                slice.variances = gp.child_variances.row(i).transpose();
                slice.prior_variance = gp.master_variance(i);
                AggregateResult r =
                    aggregate(cfg, slice, gp.master_mean(i), gp.master_variance(i));
                GaussianPrediction pred = r.prediction;
                if (cfg.space == Space::F) {
                    pred.variance += noise_var;
                    pred.space = Space::Y;
                }
                nlpds[i] = nlpd(pred, b.prep.test_y(i));
                errs[i] = (pred.mean - b.prep.test_y(i)) * (pred.mean - b.prep.test_y(i));
                ok[i] = 1;
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        });
    } else {
        const ExpertPredictions& ep = expert_preds_for(b, cfg.space, config.threads);
        parallel_for(t, config.threads, [&](int i) {
            try {
                ExpertSlice slice;
                slice.means = ep.means.row(i).transpose();
                slice.variances = ep.variances.row(i).transpose();
                slice.prior_variance = ep.prior_variance(i);
                AggregateResult r = aggregate(cfg, slice);
                GaussianPrediction pred = r.prediction;
                if (cfg.space == Space::F) {
                    pred.variance += noise_var;
                    pred.space = Space::Y;
                }
                nlpds[i] = nlpd(pred, b.prep.test_y(i));
                errs[i] = (pred.mean - b.prep.test_y(i)) * (pred.mean - b.prep.test_y(i));
                ok[i] = 1;
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        });
    }

    double nlpd_sum = 0.0, err_sum = 0.0;
    int n_ok = 0;
    for (int i = 0; i < t; ++i) {
        if (ok[i]) {
            nlpd_sum += nlpds[i];
            err_sum += errs[i];
            ++n_ok;
        } else {
            ++row.precision_failures;
            if (row.error.empty()) row.error = errors[i];
        }
    }
    row.failed = row.precision_failures > 0;
    row.nlpd = n_ok > 0 ? nlpd_sum / n_ok : kNaN;
    row.rmse = n_ok > 0 ? std::sqrt(err_sum / n_ok) : kNaN;
    row.wall_seconds = seconds_since(t0);
    return row;
}

MetricsRow full_gp_baseline(const PoolBundle& b, const ExperimentConfig& config) {
    const auto t0 = std::chrono::steady_clock::now();
    MetricsRow row;
    row.cell = "full_gp";
    row.method = "full_gp";
    row.space = "y";
    row.expert_sizes = std::to_string(b.prep.train->n());
    try {
        const FitResult fr = fit(*b.prep.train, default_init(*b.prep.train), config.optimizer);
        const TrainedGP gp = train_gp(b.prep.train, fr.hyp, "full GP covariance");
        if (gp.factor.jitter > 0.0) row.jitter_events = 1;
        Eigen::VectorXd m, v;
        predict_batch(gp, b.prep.test_X, Space::Y, m, v);
        double nlpd_sum = 0.0;
        for (int i = 0; i < m.size(); ++i)
            nlpd_sum += nlpd({m(i), v(i), Space::Y}, b.prep.test_y(i));
        row.nlpd = nlpd_sum / m.size();
        row.rmse = rmse(m, b.prep.test_y);
    } catch (const std::exception& e) {
        row.failed = true;
        row.error = e.what();
        row.nlpd = kNaN;
        row.rmse = kNaN;
    }
    row.wall_seconds = seconds_since(t0);
    return row;
}

MetricsRow linear_baseline(const PoolBundle& b) {
    const auto t0 = std::chrono::steady_clock::now();
    MetricsRow row;
    row.cell = "linear";
    row.method = "linear";
    row.space = "y";
    row.expert_sizes = std::to_string(b.prep.train->n());
    const Dataset& train = *b.prep.train;
    const int n = train.n();
    const int d = train.dim();
    Eigen::MatrixXd A(n, d + 1);
    A.leftCols(d) = train.X;
    A.col(d).setOnes();
    // Tiny ridge keeps collinear features from blowing up the solve.
    Eigen::MatrixXd G = A.transpose() * A;
    G.diagonal().array() += 1e-8;
    const Eigen::VectorXd w = G.ldlt().solve(A.transpose() * train.y);
    const Eigen::VectorXd resid = train.y - A * w;
    const double sigma2 = std::max(resid.squaredNorm() / n, 1e-12);

    Eigen::MatrixXd At(b.prep.test_X.rows(), d + 1);
    At.leftCols(d) = b.prep.test_X;
    At.col(d).setOnes();
    const Eigen::VectorXd pred = At * w;
    double nlpd_sum = 0.0;
    for (int i = 0; i < pred.size(); ++i)
        nlpd_sum += nlpd({pred(i), sigma2, Space::Y}, b.prep.test_y(i));
    row.nlpd = nlpd_sum / pred.size();
    row.rmse = rmse(pred, b.prep.test_y);
    row.wall_seconds = seconds_since(t0);
    return row;
}

void fill_result_info(ExperimentResult& res, const PoolBundle& b) {
    res.pool_hyp = b.pool.shared_hyp;
    res.expert_sizes = b.pool.partition.group_sizes();
    res.n_train = b.prep.train->n();
    res.n_test = static_cast<int>(b.prep.test_y.size());
    res.dims = b.prep.train->dim();
    res.train_seconds = b.train_seconds;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
    config.validate();
    PoolBundle b = build_pool(config);
    ExperimentResult res;
    fill_result_info(res, b);
    for (const auto& cfg : config.cells) res.rows.push_back(evaluate_cell(b, config, cfg));
    if (config.full_gp_cap > 0 && b.prep.train->n() <= config.full_gp_cap) {
        res.rows.push_back(full_gp_baseline(b, config));
        res.rows.push_back(linear_baseline(b));
    }
    return res;
}

const char* to_string(SweepAxis a) {
    return a == SweepAxis::Temperature ? "temperature" : "points_per_expert";
}

SweepAxis sweep_axis_from_string(const std::string& s) {
    if (s == "temperature" || s == "T") return SweepAxis::Temperature;
    if (s == "points_per_expert" || s == "ppe") return SweepAxis::PointsPerExpert;
    throw std::invalid_argument("unknown sweep axis: " + s);
}

ExperimentResult sweep(const ExperimentConfig& config, SweepAxis axis,
                       const std::vector<double>& values) {
    config.validate();
    if (values.empty()) throw std::invalid_argument("sweep: no values");
    ExperimentResult res;
    if (axis == SweepAxis::Temperature) {
        PoolBundle b = build_pool(config);
        fill_result_info(res, b);
        for (const double v : values) {
            for (AggregationConfig cfg : config.cells) {
                cfg.weighting.temperature = v;
                MetricsRow row = evaluate_cell(b, config, cfg);
                row.sweep_axis = to_string(axis);
                row.sweep_value = v;
                res.rows.push_back(std::move(row));
            }
        }
    } else {
        for (const double v : values) {
            const int ppe = static_cast<int>(std::lround(v));
            if (ppe < 1) throw std::invalid_argument("sweep: points_per_expert must be >= 1");
            PoolBundle b = build_pool(config, ppe);
            fill_result_info(res, b);  // info reflects the last pool
            for (const auto& cfg : config.cells) {
                MetricsRow row = evaluate_cell(b, config, cfg);
                row.sweep_axis = to_string(axis);
                row.sweep_value = v;
                res.rows.push_back(std::move(row));
            }
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// Reports

namespace {
std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string sanitize(const std::string& s) {
    std::string out = s;
    for (char& c : out)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return out;
}
}  // namespace

std::string render_report(const std::vector<MetricsRow>& rows, ReportFormat format,
                          bool include_timing, const json* provenance) {
    if (rows.empty()) throw std::invalid_argument("render_report: no rows");
    if (format == ReportFormat::Csv) {
        std::string out =
            "cell,method,functional,transform,temperature,normalized,space,barycenter_mode,"
            "sweep_axis,sweep_value,nlpd,rmse,wall_seconds,expert_sizes,jitter_events,"
            "precision_failures,failed,error\n";
        for (const MetricsRow& r : rows) {
            out += sanitize(r.cell) + ',' + sanitize(r.method) + ',' + r.functional + ',' +
                   r.transform + ',' + fmt_double(r.temperature) + ',' +
                   (r.normalized ? "1" : "0") + ',' + r.space + ',' + r.barycenter_mode + ',' +
                   r.sweep_axis + ',' + fmt_double(r.sweep_value) + ',' + fmt_double(r.nlpd) +
                   ',' + fmt_double(r.rmse) + ',' +
                   fmt_double(include_timing ? r.wall_seconds : 0.0) + ',' + r.expert_sizes +
                   ',' + std::to_string(r.jitter_events) + ',' +
                   std::to_string(r.precision_failures) + ',' + (r.failed ? "1" : "0") + ',' +
                   sanitize(r.error) + '\n';
        }
        return out;
    }
    json j;
    j["version"] = POEGP_VERSION;
    if (provenance) j["provenance"] = *provenance;
    json arr = json::array();
    for (const MetricsRow& r : rows) {
        json o;
        o["cell"] = r.cell;
        o["method"] = r.method;
        o["functional"] = r.functional;
        o["transform"] = r.transform;
        o["temperature"] = r.temperature;
        o["normalized"] = r.normalized;
        o["space"] = r.space;
        o["barycenter_mode"] = r.barycenter_mode;
        if (!r.sweep_axis.empty()) {
            o["sweep_axis"] = r.sweep_axis;
            o["sweep_value"] = r.sweep_value;
        }
        o["nlpd"] = r.nlpd;
        o["rmse"] = r.rmse;
        o["wall_seconds"] = include_timing ? r.wall_seconds : 0.0;
        o["expert_sizes"] = r.expert_sizes;
        o["jitter_events"] = r.jitter_events;
        o["precision_failures"] = r.precision_failures;
        o["failed"] = r.failed;
        if (!r.error.empty()) o["error"] = r.error;
        arr.push_back(o);
    }
    j["rows"] = arr;
    return j.dump(2) + "\n";
}

void emit_report(const std::vector<MetricsRow>& rows, ReportFormat format,
                 const std::string& path, bool include_timing, const json* provenance) {
    const std::string body = render_report(rows, format, include_timing, provenance);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open report path: " + path);
    out << body;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace poegp
