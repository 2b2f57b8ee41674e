#include "sebn/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "sebn/errors.hpp"
#include "sebn/parallel.hpp"

namespace sebn::harness {

namespace fs = std::filesystem;

// --- model specs ---------------------------------------------------------------

SearchConfig ModelSpec::search_config(std::uint64_t seed) const {
  SearchConfig sc;
  sc.amplitude_threshold = threshold;
  sc.train.mode = mode;
  sc.train.hs_scales = hs;
  sc.train.hs_weight = hs_weight;
  sc.train.max_iterations = max_iterations;
  sc.train.patience = patience;
  sc.train.step_size = step_size;
  sc.train.seed = seed;
  return sc;
}

void ModelSpec::validate() const { search_config(0).validate(); }

json model_spec_to_json(const ModelSpec& spec) {
  json doc;
  doc["label"] = spec.label;
  doc["mode"] = to_string(spec.mode);
  if (spec.hs)
    doc["hs"] = {{"tau_expert", spec.hs->tau_expert}, {"tau_nonexpert", spec.hs->tau_nonexpert}};
  else
    doc["hs"] = nullptr;
  doc["hs_weight"] = spec.hs_weight;
  doc["threshold"] = spec.threshold;
  doc["max_iterations"] = spec.max_iterations;
  doc["patience"] = spec.patience;
  doc["step_size"] = spec.step_size;
  return doc;
}

ModelSpec model_spec_from_json(const json& doc) {
  try {
    ModelSpec spec;
    spec.mode = learning_mode_from_string(doc.value("mode", std::string("one-step")));
    if (doc.contains("hs") && !doc["hs"].is_null()) {
      const auto& hs = doc["hs"];
      if (hs.contains("tau")) {
        spec.hs = HsScaleMap::uniform(hs["tau"].get<double>());
      } else {
        spec.hs = HsScaleMap{hs.at("tau_expert").get<double>(), hs.at("tau_nonexpert").get<double>()};
      }
    }
    spec.hs_weight = doc.value("hs_weight", 1.0);
    spec.threshold = doc.value("threshold", 0.2);
    spec.max_iterations = doc.value("max_iterations", 200);
    spec.patience = doc.value("patience", 20);
    spec.step_size = doc.value("step_size", 0.05);
    spec.label = doc.value("label", std::string());
    if (spec.label.empty()) {
      std::ostringstream label;
      label << to_string(spec.mode);
      if (spec.hs)
        label << "_hs" << io::format_double(spec.hs->tau_expert) << "-" << io::format_double(spec.hs->tau_nonexpert)
              << "_w" << io::format_double(spec.hs_weight);
      else
        label << "_nohs";
      spec.label = label.str();
    }
    spec.validate();
    return spec;
  } catch (const json::exception& e) {
    throw FormatError(std::string("model spec: ") + e.what());
  }
}

// --- metrics rows ----------------------------------------------------------------

std::string metrics_header() {
  return "seed,n,mode,hs_expert,hs_nonexpert,hs_weight,threshold,shd,test_loglik,wall_time_s,status";
}

namespace {

std::string opt(const std::optional<double>& v) { return v ? io::format_double(*v) : std::string(); }

std::string row_prefix(const MetricsRow& row) {
  std::ostringstream out;
  out << row.seed << ',' << row.n << ',' << row.mode << ',' << opt(row.hs_expert) << ',' << opt(row.hs_nonexpert) << ','
      << io::format_double(row.hs_weight) << ',' << io::format_double(row.threshold) << ','
      << (row.shd ? std::to_string(*row.shd) : std::string()) << ',' << opt(row.test_loglik);
  return out.str();
}

std::optional<double> parse_opt(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return std::stod(s);
}

}  // namespace

std::string format_row(const MetricsRow& row) {
  char wall[32];
  std::snprintf(wall, sizeof wall, "%.3f", row.wall_time_s);
  return row_prefix(row) + ',' + wall + ',' + row.status;
}

std::string format_row_deterministic(const MetricsRow& row) { return row_prefix(row) + ',' + row.status; }

MetricsRow parse_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  if (cells.size() != 11) throw FormatError("results row: expected 11 columns, got " + std::to_string(cells.size()));
  MetricsRow row;
  row.seed = std::stoull(cells[0]);
  row.n = std::stoi(cells[1]);
  row.mode = cells[2];
  row.hs_expert = parse_opt(cells[3]);
  row.hs_nonexpert = parse_opt(cells[4]);
  row.hs_weight = std::stod(cells[5]);
  row.threshold = std::stod(cells[6]);
  if (!cells[7].empty()) row.shd = std::stoi(cells[7]);
  row.test_loglik = parse_opt(cells[8]);
  row.wall_time_s = std::stod(cells[9]);
  row.status = cells[10];
  return row;
}

// --- learning runs -----------------------------------------------------------------

double network_test_loglik(const std::vector<NodeCpd>& cpds, const Dataset& data) {
  double total = 0.0;
  for (const auto& cpd : cpds) total += node_test_loglik(cpd, data.train, data.test);
  return total;
}

json learned_to_json(const LearnedStructure& learned, const ModelSpec& spec, std::uint64_t seed) {
  json doc = io::graph_to_json(learned.graph);
  const auto& names = learned.graph.expert().node_names();
  json cpds = json::array();
  for (const auto& cpd : learned.cpds) cpds.push_back(io::cpd_to_json(cpd, names));
  doc["cpds"] = cpds;
  doc["structure_score"] = learned.score;
  doc["model"] = model_spec_to_json(spec);
  doc["seed"] = seed;
  return doc;
}

LoadedModel learned_from_json(const json& doc) {
  LoadedModel model{io::graph_from_json(doc), {}};
  const auto& names = model.graph.expert().node_names();
  if (!doc.contains("cpds") || !doc["cpds"].is_array()) throw FormatError("learned JSON: missing cpds");
  for (const auto& c : doc["cpds"]) model.cpds.push_back(io::cpd_from_json(c, names));
  return model;
}

LearnInputs load_learn_inputs(const fs::path& data_dir, const fs::path& expert_path, fs::path truth_path,
                              std::optional<double> noise) {
  LearnInputs inputs;
  inputs.data = read_dataset(data_dir);
  if (truth_path.empty() && fs::exists(data_dir / "truth.json")) truth_path = data_dir / "truth.json";
  if (!truth_path.empty()) {
    auto loaded = truth_from_json(io::load_json(truth_path));
    if (!noise) noise = loaded.noise_variance;
    inputs.truth = std::move(loaded.truth);
  }
  if (!expert_path.empty())
    inputs.expert = io::expert_from_json(io::load_json(expert_path));
  else if (inputs.truth)
    inputs.expert = inputs.truth->expert;
  else
    throw ContractViolation("learn: need an expert graph or a truth.json");
  if (inputs.truth && inputs.truth->expert != inputs.expert)
    throw ContractViolation("learn: expert graph differs from the linear edges of the ground truth");
  if (noise)
    inputs.noise_variances.assign(static_cast<std::size_t>(inputs.expert.size()), *noise);
  else
    inputs.noise_variances = estimate_noise_variances(inputs.data.train, inputs.expert);
  return inputs;
}

LearnOutcome run_learn(const LearnInputs& inputs, const ModelSpec& spec, std::uint64_t seed, int workers) {
  const auto start = std::chrono::steady_clock::now();
  spec.validate();
  inputs.data.validate();
  if (inputs.data.names != inputs.expert.node_names())
    throw ContractViolation("learn: dataset columns do not match the expert graph nodes");
  if (inputs.truth && inputs.truth->expert.size() != inputs.expert.size())
    throw ContractViolation("learn: ground truth size does not match the expert graph");

  std::optional<std::vector<LinearTerm>> oracle;
  if (spec.mode == LearningMode::OracleLinear) {
    if (!inputs.truth) throw ContractViolation("learn: oracle-linear mode needs a ground truth");
    oracle = inputs.truth->linear;
  }
  StructureSearch search(inputs.data.train, inputs.data.validation, inputs.expert, inputs.noise_variances,
                         spec.search_config(seed), oracle);

  LearnOutcome out;
  out.learned = search.learn(workers);
  out.row.seed = seed;
  out.row.n = inputs.expert.size();
  out.row.mode = to_string(spec.mode);
  if (spec.hs) {
    out.row.hs_expert = spec.hs->tau_expert;
    out.row.hs_nonexpert = spec.hs->tau_nonexpert;
    out.row.hs_weight = spec.hs_weight;
  }
  out.row.threshold = spec.threshold;
  if (inputs.truth) {
    const LearnedGraph truth_graph(inputs.expert, inputs.truth->gp);
    out.row.shd = shd(out.learned.graph, truth_graph);
  }
  out.row.test_loglik = network_test_loglik(out.learned.cpds, inputs.data);
  out.learned_doc = learned_to_json(out.learned, spec, seed);
  out.row.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

// --- datasets on disk --------------------------------------------------------------

void write_dataset(const fs::path& dir, const Dataset& data) {
  data.validate();
  io::write_csv(dir / "train.csv", data.names, data.train);
  io::write_csv(dir / "val.csv", data.names, data.validation);
  io::write_csv(dir / "test.csv", data.names, data.test);
}

Dataset read_dataset(const fs::path& dir) {
  Dataset ds;
  auto train = io::read_csv(dir / "train.csv");
  auto val = io::read_csv(dir / "val.csv");
  auto test = io::read_csv(dir / "test.csv");
  if (val.header != train.header || test.header != train.header)
    throw FormatError(dir.string() + ": split headers disagree");
  ds.names = std::move(train.header);
  ds.train = std::move(train.values);
  ds.validation = std::move(val.values);
  ds.test = std::move(test.values);
  return ds;
}

json truth_to_json(const GroundTruth& truth, const GenConfig& config) {
  json doc = io::graph_to_json(truth.graph());
  doc["generator"] = {{"n", config.n},
                      {"mode", to_string(config.mode)},
                      {"p_linear", config.p_linear},
                      {"p_modify", config.p_modify},
                      {"p_add", config.p_add},
                      {"root_variance", config.root_variance},
                      {"noise_variance", config.noise_variance},
                      {"sizes", {{"train", config.sizes.train}, {"val", config.sizes.validation}, {"test", config.sizes.test}}},
                      {"seed", config.seed}};
  return doc;
}

LoadedTruth truth_from_json(const json& doc) {
  const LearnedGraph g = io::graph_from_json(doc);
  LoadedTruth out{make_ground_truth(g.expert(), g.gp_edges()), std::nullopt};
  if (doc.contains("generator") && doc["generator"].contains("noise_variance"))
    out.noise_variance = doc["generator"]["noise_variance"].get<double>();
  return out;
}

void generate_case(const GenConfig& config, const fs::path& dir) {
  const GroundTruth truth = gen_structure(config);
  write_dataset(dir, sample_dataset(truth, config));
  io::save_json(dir / "truth.json", truth_to_json(truth, config));
}

std::vector<double> estimate_noise_variances(const Eigen::MatrixXd& train, const ExpertGraph& expert) {
  std::vector<double> out;
  for (int i = 0; i < expert.size(); ++i)
    out.push_back(std::max(least_squares(train, i, expert.parents(i)).residual_variance, 1e-12));
  return out;
}

// --- sweeps --------------------------------------------------------------------------

void ExperimentConfig::validate() const {
  if (schema_version != 1) throw FormatError("experiment config: unsupported schema_version");
  if (synthetic.has_value() == csv.has_value()) throw FormatError("experiment config: exactly one dataset source is required");
  if (grid.empty()) throw FormatError("experiment config: model grid is empty");
  if (seeds.empty()) throw FormatError("experiment config: no seeds");
  auto sorted = seeds;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw FormatError("experiment config: seeds must be distinct");
  std::vector<std::string> labels;
  for (const auto& m : grid) labels.push_back(m.label);
  std::sort(labels.begin(), labels.end());
  if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
    throw FormatError("experiment config: grid labels must be distinct");
  if (synthetic && (synthetic->min_nodes < 2 || synthetic->max_nodes < synthetic->min_nodes))
    throw FormatError("experiment config: invalid node range");
}

ExperimentConfig experiment_from_json(const json& doc) {
  try {
    ExperimentConfig cfg;
    cfg.schema_version = doc.at("schema_version").get<int>();
    const auto& ds = doc.at("dataset");
    const auto kind = ds.at("kind").get<std::string>();
    if (kind == "synthetic") {
      SyntheticSource s;
      s.mode = gen_mode_from_string(ds.value("mode", std::string("id")));
      if (ds.at("nodes").is_object()) {
        s.min_nodes = ds["nodes"].at("min").get<int>();
        s.max_nodes = ds["nodes"].at("max").get<int>();
      } else {
        s.min_nodes = s.max_nodes = ds["nodes"].get<int>();
      }
      if (ds.contains("sizes")) {
        s.sizes.train = ds["sizes"].value("train", 500);
        s.sizes.validation = ds["sizes"].value("val", 100);
        s.sizes.test = ds["sizes"].value("test", 100);
      }
      s.noise_variance = ds.value("noise_variance", 0.01);
      s.root_variance = ds.value("root_variance", 0.01);
      cfg.synthetic = s;
    } else if (kind == "csv") {
      CsvSource s;
      s.dir = ds.at("dir").get<std::string>();
      if (ds.contains("expert") && !ds["expert"].is_null()) s.expert = ds["expert"].get<std::string>();
      if (ds.contains("noise_variance") && !ds["noise_variance"].is_null())
        s.noise_variance = ds["noise_variance"].get<double>();
      cfg.csv = s;
    } else {
      throw FormatError("experiment config: dataset kind must be synthetic or csv");
    }
    for (const auto& cell : doc.at("grid")) cfg.grid.push_back(model_spec_from_json(cell));
    const auto& seeds = doc.at("seeds");
    if (seeds.is_array()) {
      cfg.seeds = seeds.get<std::vector<std::uint64_t>>();
    } else {
      const auto first = seeds.at("first").get<std::uint64_t>();
      const auto count = seeds.at("count").get<std::uint64_t>();
      for (std::uint64_t s = 0; s < count; ++s) cfg.seeds.push_back(first + s);
    }
    cfg.workers = doc.value("workers", 0);
    cfg.lgbn_baseline = doc.value("lgbn_baseline", false);
    if (doc.contains("output") && !doc["output"].is_null()) cfg.output = doc["output"].get<std::string>();
    cfg.validate();
    return cfg;
  } catch (const json::exception& e) {
    throw FormatError(std::string("experiment config: ") + e.what());
  }
}

int nodes_for_seed(const SyntheticSource& source, std::uint64_t seed) {
  if (source.min_nodes == source.max_nodes) return source.min_nodes;
  std::mt19937_64 rng(seed ^ 0x9E3779B97F4A7C15ull);
  return std::uniform_int_distribution<int>(source.min_nodes, source.max_nodes)(rng);
}

namespace {

struct SeedInputs {
  LearnInputs inputs;
  fs::path dir;
};

SeedInputs prepare_seed(const ExperimentConfig& cfg, std::uint64_t seed) {
  SeedInputs out;
  if (cfg.output) out.dir = *cfg.output / ("seed" + std::to_string(seed));
  if (cfg.synthetic) {
    GenConfig gen = GenConfig::for_mode(cfg.synthetic->mode, nodes_for_seed(*cfg.synthetic, seed), seed);
    gen.sizes = cfg.synthetic->sizes;
    gen.noise_variance = cfg.synthetic->noise_variance;
    gen.root_variance = cfg.synthetic->root_variance;
    GroundTruth truth = gen_structure(gen);
    out.inputs.data = sample_dataset(truth, gen);
    out.inputs.expert = truth.expert;
    out.inputs.noise_variances.assign(static_cast<std::size_t>(gen.n), gen.noise_variance);
    if (cfg.output) {
      write_dataset(out.dir, out.inputs.data);
      io::save_json(out.dir / "truth.json", truth_to_json(truth, gen));
    }
    out.inputs.truth = std::move(truth);
  } else {
    out.inputs.data = read_dataset(cfg.csv->dir);
    if (cfg.csv->expert) {
      out.inputs.expert = io::expert_from_json(io::load_json(*cfg.csv->expert));
    } else {
      out.inputs.expert = fit_expert_graph(out.inputs.data.train, out.inputs.data.names).graph;
      if (cfg.output) io::save_json(out.dir / "expert.json", io::graph_to_json(LearnedGraph(out.inputs.expert, GpEdgeSet::empty(out.inputs.expert.size()))));
    }
    const int n = out.inputs.expert.size();
    if (cfg.csv->noise_variance)
      out.inputs.noise_variances.assign(static_cast<std::size_t>(n), *cfg.csv->noise_variance);
    else
      out.inputs.noise_variances = estimate_noise_variances(out.inputs.data.train, out.inputs.expert);
  }
  return out;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const auto k = v.size();
  return k % 2 ? v[k / 2] : 0.5 * (v[k / 2 - 1] + v[k / 2]);
}

}  // namespace

std::vector<SummaryRow> summarize(const std::vector<std::string>& labels, const std::vector<MetricsRow>& rows) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<const MetricsRow*>> groups;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!groups.contains(labels[i])) order.push_back(labels[i]);
    groups[labels[i]].push_back(&rows[i]);
  }
  std::vector<SummaryRow> out;
  for (const auto& label : order) {
    SummaryRow s;
    s.label = label;
    std::vector<double> shds, lls;
    for (const auto* r : groups[label]) {
      s.mode = r->mode;
      ++s.runs;
      if (r->status != "ok") {
        ++s.failed;
        continue;
      }
      if (r->shd) shds.push_back(*r->shd);
      if (r->test_loglik) lls.push_back(*r->test_loglik);
    }
    if (!shds.empty()) s.mean_shd = std::accumulate(shds.begin(), shds.end(), 0.0) / static_cast<double>(shds.size());
    if (!lls.empty()) s.median_test_loglik = median(lls);
    out.push_back(s);
  }
  return out;
}

void write_results(const fs::path& path, const std::vector<MetricsRow>& rows) {
  std::string text = metrics_header() + "\n";
  for (const auto& r : rows) text += format_row(r) + "\n";
  io::save_text(path, text);
}

void write_summary(const fs::path& path, const std::vector<SummaryRow>& summary) {
  std::string text = "label,mode,runs,failed,mean_shd,median_test_loglik\n";
  for (const auto& s : summary)
    text += s.label + "," + s.mode + "," + std::to_string(s.runs) + "," + std::to_string(s.failed) + "," +
            opt(s.mean_shd) + "," + opt(s.median_test_loglik) + "\n";
  io::save_text(path, text);
}

SweepResult run_sweep(const ExperimentConfig& config) {
  config.validate();
  std::vector<SeedInputs> seeds;
  seeds.reserve(config.seeds.size());
  for (auto seed : config.seeds) seeds.push_back(prepare_seed(config, seed));

  const std::size_t cells_per_seed = config.grid.size() + (config.lgbn_baseline ? 1 : 0);
  const std::size_t total = seeds.size() * cells_per_seed;
  SweepResult result;
  result.rows.resize(total);
  result.labels.resize(total);

  parallel_for(total, config.workers, [&](std::size_t index) {
    const std::size_t s = index / cells_per_seed;
    const std::size_t c = index % cells_per_seed;
    const auto seed = config.seeds[s];
    const auto& in = seeds[s].inputs;
    MetricsRow& row = result.rows[index];

    if (c == config.grid.size()) {
      result.labels[index] = "lgbn-baseline";
      const auto start = std::chrono::steady_clock::now();
      row.seed = seed;
      row.n = in.expert.size();
      row.mode = "lgbn";
      row.test_loglik = lgbn_test_loglik(fit_lgbn_parameters(in.data.train, in.expert), in.data.test);
      row.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      return;
    }

    const ModelSpec& spec = config.grid[c];
    result.labels[index] = spec.label;
    try {
      LearnOutcome outcome = run_learn(in, spec, seed, 1);
      if (config.output) io::save_json(seeds[s].dir / spec.label / "learned.json", outcome.learned_doc);
      row = outcome.row;
    } catch (const std::exception& e) {
      std::cerr << "sweep: seed " << seed << " cell " << spec.label << " failed: " << e.what() << "\n";
      row.seed = seed;
      row.n = in.expert.size();
      row.mode = to_string(spec.mode);
      if (spec.hs) {
        row.hs_expert = spec.hs->tau_expert;
        row.hs_nonexpert = spec.hs->tau_nonexpert;
        row.hs_weight = spec.hs_weight;
      }
      row.threshold = spec.threshold;
      row.status = "failed";
    }
  });

  result.summary = summarize(result.labels, result.rows);
  if (config.output) {
    write_results(*config.output / "results.csv", result.rows);
    write_summary(*config.output / "summary.csv", result.summary);
  }
  return result;
}

// --- UCI ------------------------------------------------------------------------------

UciPrepared uci_prepare(const io::CsvTable& raw, const UciOptions& options) {
  const auto cols = raw.values.cols();
  if (cols != options.expected_columns)
    throw FormatError("uci-prepare: expected " + std::to_string(options.expected_columns) + " columns, got " +
                      std::to_string(cols));
  if (raw.values.rows() < 20) throw FormatError("uci-prepare: too few rows to split");

  std::vector<std::string> names = raw.header;
  const bool generic = std::all_of(names.begin(), names.end(), [](const std::string& s) { return s.starts_with("V"); });
  if (generic && cols == 7) names = {"mcv", "alkphos", "sgpt", "sgot", "gammagt", "drinks", "selector"};

  UciPrepared out;
  std::vector<int> keep;
  for (Eigen::Index c = 0; c < cols; ++c) {
    const Eigen::VectorXd col = raw.values.col(c);
    const bool constant = (col.array() == col(0)).all();
    const bool requested = std::find(options.drop.begin(), options.drop.end(), names[static_cast<std::size_t>(c)]) !=
                           options.drop.end();
    if (constant || requested)
      out.dropped.push_back(names[static_cast<std::size_t>(c)]);
    else
      keep.push_back(static_cast<int>(c));
  }
  for (const auto& d : options.drop)
    if (std::find(names.begin(), names.end(), d) == names.end()) throw FormatError("uci-prepare: no column named " + d);
  if (keep.size() < 2) throw FormatError("uci-prepare: fewer than two usable columns");

  const Eigen::Index rows = raw.values.rows();
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(rows));
  std::iota(perm.begin(), perm.end(), Eigen::Index{0});
  std::mt19937_64 rng(options.seed);
  std::shuffle(perm.begin(), perm.end(), rng);

  const Eigen::Index n_train_portion = rows * 9 / 10;
  const Eigen::Index n_train = n_train_portion * 9 / 10;
  const Eigen::Index n_val = n_train_portion - n_train;
  const Eigen::Index n_test = rows - n_train_portion;

  const Eigen::MatrixXd selected = select_columns(raw.values, keep);
  auto take = [&](Eigen::Index begin, Eigen::Index count) {
    Eigen::MatrixXd m(count, selected.cols());
    for (Eigen::Index r = 0; r < count; ++r) m.row(r) = selected.row(perm[static_cast<std::size_t>(begin + r)]);
    return m;
  };
  Eigen::MatrixXd portion = take(0, n_train_portion);
  Eigen::MatrixXd test = take(n_train_portion, n_test);

  if (options.standardize) {
    const Eigen::RowVectorXd mean = portion.colwise().mean();
    const Eigen::RowVectorXd sd =
        ((portion.rowwise() - mean).array().square().colwise().sum() / static_cast<double>(n_train_portion - 1)).sqrt();
    portion = (portion.rowwise() - mean).array().rowwise() / sd.array();
    test = (test.rowwise() - mean).array().rowwise() / sd.array();
  }

  for (int c : keep) out.data.names.push_back(names[static_cast<std::size_t>(c)]);
  out.data.train = portion.topRows(n_train);
  out.data.validation = portion.bottomRows(n_val);
  out.data.test = test;
  out.train_rows = static_cast<int>(n_train_portion);
  return out;
}

}  // namespace sebn::harness
