#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "poegp/aggregate.hpp"
#include "poegp/csv.hpp"
#include "poegp/ensemble.hpp"

namespace poegp {

// 1-D benchmark generator: inputs uniform on [-1, 1] minus the gap
// (0.2, 0.5), targets sin(12x) + 0.66 cos(25x) plus Gaussian noise. The gap
// creates the density transition where product-of-expert pathologies show.
Dataset synth_1d(int n, uint64_t seed, double noise_std);

double rmse(const Eigen::VectorXd& predictions, const Eigen::VectorXd& targets);

struct SyntheticSpec {
    int n = 300;
    double noise_std = 0.1;
};

struct DatasetSpec {
    std::string name;           // label used in reports
    std::string csv_path;       // one of csv_path / synthetic
    std::string target_column;  // empty = last column
    std::optional<SyntheticSpec> synthetic;
};

struct PartitionSpec {
    PartitionStrategy strategy = PartitionStrategy::KMeans;
    int points_per_expert = 100;
    int kmeans_max_iter = 100;
};

struct ExperimentConfig {
    DatasetSpec dataset;
    double test_fraction = 0.1;
    uint64_t seed = 0;
    PartitionSpec partition;
    std::vector<AggregationConfig> cells;
    FitOptions optimizer;
    double grbcm_master_fraction = 0.0;  // <= 0: master sized to the mean cell
    int full_gp_cap = 2000;              // baselines run when n_train <= cap; 0 disables
    int threads = 0;

    void validate() const;
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& c);

// One metrics row per aggregation cell (or baseline). NLPD and RMSE are in
// standardized target units; they stay finite unless `failed` is set.
struct MetricsRow {
    std::string cell;
    std::string method;
    std::string functional;
    std::string transform;
    double temperature = 0.0;
    bool normalized = true;
    std::string space;
    std::string barycenter_mode;
    std::string sweep_axis;  // empty outside sweeps
    double sweep_value = 0.0;
    double nlpd = 0.0;
    double rmse = 0.0;
    double wall_seconds = 0.0;
    std::string expert_sizes;  // "s1|s2|..."
    int jitter_events = 0;
    int precision_failures = 0;
    bool failed = false;
    std::string error;

    static constexpr int kFieldCount = 18;
};

struct ExperimentResult {
    std::vector<MetricsRow> rows;
    Hyperparameters pool_hyp;
    std::vector<int> expert_sizes;
    int n_train = 0;
    int n_test = 0;
    int dims = 0;
    double train_seconds = 0.0;
};

// Splits by seed, trains one shared pool, evaluates every cell on it, and
// appends full-GP and linear baselines when the training set is small enough.
// Per-cell numerical failures are recorded in the row; the run continues.
ExperimentResult run_experiment(const ExperimentConfig& config);

enum class SweepAxis { Temperature, PointsPerExpert };
const char* to_string(SweepAxis a);
SweepAxis sweep_axis_from_string(const std::string& s);

// One row per (cell, value). Temperature sweeps reuse one trained pool;
// points-per-expert sweeps retrain per value.
ExperimentResult sweep(const ExperimentConfig& config, SweepAxis axis,
                       const std::vector<double>& values);

enum class ReportFormat { Csv, Json };

// Byte-stable given identical rows. Wall-clock fields are zeroed when
// include_timing is false so determinism checks can compare bytes.
std::string render_report(const std::vector<MetricsRow>& rows, ReportFormat format,
                          bool include_timing = true,
                          const nlohmann::json* provenance = nullptr);
void emit_report(const std::vector<MetricsRow>& rows, ReportFormat format,
                 const std::string& path, bool include_timing = true,
                 const nlohmann::json* provenance = nullptr);

// Internals reused by the CLI and tests.
struct PreparedData {
    std::shared_ptr<const Dataset> train;  // standardized with train statistics
    Eigen::MatrixXd test_X;                // standardized likewise
    Eigen::VectorXd test_y;
    std::vector<int> train_rows;
    std::vector<int> test_rows;
};

// Seeded shuffle split; standardizes features and target with statistics of
// the training rows only. Constant columns get std clamped to 1 (warning on
// stderr).
PreparedData prepare_data(const RawTable& table, int target_col, double test_fraction,
                          uint64_t seed);

// Standardize a whole table as training data (no split); what `fit` on a
// plain CSV does.
std::shared_ptr<const Dataset> dataset_from_table(const RawTable& table, int target_col);

RawTable table_from_dataset(const Dataset& d, const std::string& target_name = "y");

}  // namespace poegp
