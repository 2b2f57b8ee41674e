#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sebn/cpd.hpp"
#include "sebn/dataset.hpp"
#include "sebn/io.hpp"
#include "sebn/lgbn.hpp"
#include "sebn/structure_search.hpp"
#include "sebn/synthetic.hpp"

namespace sebn::harness {

using io::json;

/// One cell of a model grid.
struct ModelSpec {
  std::string label;
  LearningMode mode = LearningMode::OneStep;
  std::optional<HsScaleMap> hs;  ///< none: no Horseshoe term
  double hs_weight = 1.0;
  double threshold = 0.2;
  int max_iterations = 200;
  int patience = 20;
  double step_size = 0.05;

  SearchConfig search_config(std::uint64_t seed) const;
  void validate() const;
};

json model_spec_to_json(const ModelSpec& spec);
ModelSpec model_spec_from_json(const json& doc);

/// One line of results.csv.
struct MetricsRow {
  std::uint64_t seed = 0;
  int n = 0;
  std::string mode;
  std::optional<double> hs_expert;
  std::optional<double> hs_nonexpert;
  double hs_weight = 0.0;
  double threshold = 0.0;
  std::optional<int> shd;
  std::optional<double> test_loglik;
  double wall_time_s = 0.0;
  std::string status = "ok";
};

/// seed,n,mode,hs_expert,hs_nonexpert,hs_weight,threshold,shd,test_loglik,wall_time_s,status
std::string metrics_header();
std::string format_row(const MetricsRow& row);
/// Row without the wall-time column; identical for repeated runs of a cell.
std::string format_row_deterministic(const MetricsRow& row);
MetricsRow parse_row(const std::string& line);

/// Everything a learning run needs besides the model spec.
struct LearnInputs {
  Dataset data;
  ExpertGraph expert;
  std::vector<double> noise_variances;
  std::optional<GroundTruth> truth;  ///< enables SHD and oracle-linear mode
};

struct LearnOutcome {
  LearnedStructure learned;
  MetricsRow row;
  json learned_doc;  ///< learned.json contents
};

/// Reads a dataset directory plus optional expert and truth graphs. The truth
/// defaults to `<data>/truth.json` when present and the expert to its linear
/// edges. Noise variance comes from `noise`, then the truth, then a per-node
/// least-squares estimate.
LearnInputs load_learn_inputs(const std::filesystem::path& data_dir, const std::filesystem::path& expert_path = {},
                              std::filesystem::path truth_path = {}, std::optional<double> noise = std::nullopt);

/// Fit + exact structure search + metrics.
LearnOutcome run_learn(const LearnInputs& inputs, const ModelSpec& spec, std::uint64_t seed, int workers = 1);

/// Sum over nodes of the posterior-predictive test log-likelihood.
double network_test_loglik(const std::vector<NodeCpd>& cpds, const Dataset& data);

json learned_to_json(const LearnedStructure& learned, const ModelSpec& spec, std::uint64_t seed);

struct LoadedModel {
  LearnedGraph graph;
  std::vector<NodeCpd> cpds;
};
LoadedModel learned_from_json(const json& doc);

// --- datasets on disk -------------------------------------------------------

/// Writes train.csv / val.csv / test.csv into `dir`.
void write_dataset(const std::filesystem::path& dir, const Dataset& data);
Dataset read_dataset(const std::filesystem::path& dir);

json truth_to_json(const GroundTruth& truth, const GenConfig& config);
struct LoadedTruth {
  GroundTruth truth;
  std::optional<double> noise_variance;
};
LoadedTruth truth_from_json(const json& doc);

/// Generates one seed's structure and splits and writes them to `dir`.
void generate_case(const GenConfig& config, const std::filesystem::path& dir);

/// Per-node noise variances estimated as least-squares residual variances of
/// each node on its expert parents (used when noise is not known a priori).
std::vector<double> estimate_noise_variances(const Eigen::MatrixXd& train, const ExpertGraph& expert);

// --- sweeps ------------------------------------------------------------------

struct SyntheticSource {
  GenMode mode = GenMode::IndependentAddition;
  int min_nodes = 6;
  int max_nodes = 6;
  SplitSizes sizes;
  double noise_variance = 0.01;
  double root_variance = 0.01;
};

struct CsvSource {
  std::filesystem::path dir;
  std::optional<std::filesystem::path> expert;  ///< none: learn it with the LGBN baseline
  std::optional<double> noise_variance;         ///< none: estimate per node
};

struct ExperimentConfig {
  int schema_version = 1;
  std::optional<SyntheticSource> synthetic;
  std::optional<CsvSource> csv;
  std::vector<ModelSpec> grid;
  std::vector<std::uint64_t> seeds;
  int workers = 0;
  bool lgbn_baseline = false;
  std::optional<std::filesystem::path> output;

  void validate() const;
};

ExperimentConfig experiment_from_json(const json& doc);

/// Node count of a synthetic seed (uniform over [min, max]).
int nodes_for_seed(const SyntheticSource& source, std::uint64_t seed);

struct SummaryRow {
  std::string label;
  std::string mode;
  int runs = 0;
  int failed = 0;
  std::optional<double> mean_shd;
  std::optional<double> median_test_loglik;
};

struct SweepResult {
  std::vector<std::string> labels;        ///< grid label per row
  std::vector<MetricsRow> rows;           ///< seed-major, then grid order
  std::vector<SummaryRow> summary;
};

/// Runs every (seed, grid cell). When an output directory is configured,
/// writes results.csv, summary.csv and per-cell learned.json files.
SweepResult run_sweep(const ExperimentConfig& config);

std::vector<SummaryRow> summarize(const std::vector<std::string>& labels, const std::vector<MetricsRow>& rows);
void write_results(const std::filesystem::path& path, const std::vector<MetricsRow>& rows);
void write_summary(const std::filesystem::path& path, const std::vector<SummaryRow>& summary);

// --- UCI ---------------------------------------------------------------------

struct UciOptions {
  int expected_columns = 7;
  std::vector<std::string> drop;  ///< extra columns to drop by name
  bool standardize = true;        ///< z-score with statistics of the training portion
  std::uint64_t seed = 0;
};

struct UciPrepared {
  Dataset data;
  std::vector<std::string> dropped;
  int train_rows = 0;  ///< train + validation, i.e. the 9/10 training portion
};

/// Drops constant columns, shuffles, splits 9:1 train:test (floor), then
/// carves a validation set 9:1 out of the training portion.
UciPrepared uci_prepare(const io::CsvTable& raw, const UciOptions& options);

}  // namespace sebn::harness
