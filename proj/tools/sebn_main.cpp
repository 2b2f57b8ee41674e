#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sebn/errors.hpp"
#include "sebn/graph.hpp"
#include "sebn/harness.hpp"
#include "sebn/io.hpp"
#include "sebn/lgbn.hpp"
#include "sebn/synthetic.hpp"

namespace fs = std::filesystem;
using namespace sebn;

namespace {

struct HsOption {
  std::string text = "none";

  std::optional<HsScaleMap> parse() const {
    if (text == "none") return std::nullopt;
    const auto comma = text.find(',');
    try {
      if (comma == std::string::npos) return HsScaleMap::uniform(std::stod(text));
      return HsScaleMap{std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
    } catch (const std::logic_error&) {
      throw ContractViolation("--hs expects none, TAU or TAU_EXPERT,TAU_NONEXPERT; got '" + text + "'");
    }
  }
};

void append_row(const fs::path& path, const harness::MetricsRow& row) {
  const bool fresh = !fs::exists(path) || fs::file_size(path) == 0;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::app | std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  if (fresh) out << harness::metrics_header() << '\n';
  out << harness::format_row(row) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semi-parametric expert Bayesian network learning"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Generate synthetic ground truth and train/val/test splits");
  std::string gen_mode = "id";
  int gen_nodes = 6;
  std::uint64_t gen_seed = 1;
  int gen_count = 1;
  fs::path gen_out;
  SplitSizes gen_sizes;
  gen->add_option("--mode", gen_mode, "id or ed")->check(CLI::IsMember({"id", "ed"}));
  gen->add_option("--nodes", gen_nodes, "Number of nodes")->check(CLI::Range(2, 26));
  gen->add_option("--seed", gen_seed, "First seed");
  gen->add_option("--count", gen_count, "Number of consecutive seeds")->check(CLI::PositiveNumber);
  gen->add_option("--train", gen_sizes.train)->check(CLI::PositiveNumber);
  gen->add_option("--val", gen_sizes.validation)->check(CLI::PositiveNumber);
  gen->add_option("--test", gen_sizes.test)->check(CLI::PositiveNumber);
  gen->add_option("--out", gen_out, "Output directory")->required();

  // learn
  auto* learn = app.add_subcommand("learn", "Learn GP additions to an expert graph on one dataset");
  fs::path learn_data, learn_expert, learn_truth, learn_out, learn_results;
  std::string learn_mode = "one-step";
  HsOption learn_hs;
  harness::ModelSpec learn_spec;
  std::uint64_t learn_seed = 0;
  int learn_workers = 0;
  std::optional<double> learn_noise;
  learn->add_option("--data", learn_data, "Directory with train.csv, val.csv, test.csv")->required();
  learn->add_option("--expert", learn_expert, "Expert graph JSON (default: truth.json linear edges)");
  learn->add_option("--truth", learn_truth, "Ground-truth graph JSON (default: <data>/truth.json if present)");
  learn->add_option("--mode", learn_mode, "oracle-linear, two-step or one-step");
  learn->add_option("--hs", learn_hs.text, "none, TAU or TAU_EXPERT,TAU_NONEXPERT");
  learn->add_option("--hs-weight", learn_spec.hs_weight);
  learn->add_option("--threshold", learn_spec.threshold, "GP amplitude pruning threshold");
  learn->add_option("--max-iterations", learn_spec.max_iterations);
  learn->add_option("--patience", learn_spec.patience);
  learn->add_option("--noise-variance", learn_noise, "Known noise variance (default: truth, else estimated)");
  learn->add_option("--seed", learn_seed);
  learn->add_option("--workers", learn_workers, "Threads for node fits (0: all cores)");
  learn->add_option("--out", learn_out, "Directory for learned.json")->required();
  learn->add_option("--results", learn_results, "Results CSV to append to (default: <out>/results.csv)");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Run a model grid over seeds from a JSON experiment config");
  fs::path sweep_config;
  std::optional<fs::path> sweep_out;
  std::optional<int> sweep_workers;
  sweep->add_option("config", sweep_config, "Experiment config JSON")->required()->check(CLI::ExistingFile);
  sweep->add_option("--out", sweep_out, "Override the output directory");
  sweep->add_option("--workers", sweep_workers, "Override the worker count");

  // uci-prepare
  auto* uci = app.add_subcommand("uci-prepare", "Split a raw UCI Liver Disorders CSV");
  fs::path uci_input, uci_out;
  harness::UciOptions uci_options;
  bool uci_raw = false;
  bool uci_expert = true;
  uci->add_option("--input", uci_input, "Raw CSV (header optional)")->required()->check(CLI::ExistingFile);
  uci->add_option("--out", uci_out)->required();
  uci->add_option("--seed", uci_options.seed);
  uci->add_option("--columns", uci_options.expected_columns, "Expected column count");
  uci->add_option("--drop", uci_options.drop, "Extra columns to drop by name");
  uci->add_flag("--no-standardize", uci_raw, "Keep raw units");
  uci->add_flag("!--no-expert", uci_expert, "Skip learning expert.json with BIC hill climbing");

  // shd
  auto* shd_cmd = app.add_subcommand("shd", "Structural Hamming distance between two graph JSON files");
  fs::path shd_a, shd_b;
  shd_cmd->add_option("a", shd_a)->required()->check(CLI::ExistingFile);
  shd_cmd->add_option("b", shd_b)->required()->check(CLI::ExistingFile);

  // export-dot
  auto* dot = app.add_subcommand("export-dot", "Render a graph JSON file as Graphviz DOT");
  fs::path dot_in;
  std::optional<fs::path> dot_out;
  dot->add_option("graph", dot_in)->required()->check(CLI::ExistingFile);
  dot->add_option("--out", dot_out, "Write to a file instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      for (int k = 0; k < gen_count; ++k) {
        const auto seed = gen_seed + static_cast<std::uint64_t>(k);
        GenConfig cfg = GenConfig::for_mode(gen_mode_from_string(gen_mode), gen_nodes, seed);
        cfg.sizes = gen_sizes;
        const auto dir = gen_out / ("seed" + std::to_string(seed));
        harness::generate_case(cfg, dir);
        std::cout << dir.string() << '\n';
      }
    } else if (*learn) {
      learn_spec.mode = learning_mode_from_string(learn_mode);
      learn_spec.hs = learn_hs.parse();
      learn_spec.label = "learn";

      const auto inputs = harness::load_learn_inputs(learn_data, learn_expert, learn_truth, learn_noise);
      const auto outcome = harness::run_learn(inputs, learn_spec, learn_seed, learn_workers);
      io::save_json(learn_out / "learned.json", outcome.learned_doc);
      append_row(learn_results.empty() ? learn_out / "results.csv" : learn_results, outcome.row);
      std::cout << harness::metrics_header() << '\n' << harness::format_row(outcome.row) << '\n';
    } else if (*sweep) {
      auto cfg = harness::experiment_from_json(io::load_json(sweep_config));
      if (sweep_out) cfg.output = *sweep_out;
      if (sweep_workers) cfg.workers = *sweep_workers;
      if (!cfg.output) throw ContractViolation("sweep: no output directory (set \"output\" or --out)");
      const auto result = harness::run_sweep(cfg);
      std::cout << "label,mode,runs,failed,mean_shd,median_test_loglik\n";
      for (const auto& s : result.summary)
        std::cout << s.label << ',' << s.mode << ',' << s.runs << ',' << s.failed << ','
                  << (s.mean_shd ? io::format_double(*s.mean_shd) : "") << ','
                  << (s.median_test_loglik ? io::format_double(*s.median_test_loglik) : "") << '\n';
    } else if (*uci) {
      uci_options.standardize = !uci_raw;
      const auto prepared = harness::uci_prepare(io::read_csv_auto(uci_input), uci_options);
      harness::write_dataset(uci_out, prepared.data);
      if (uci_expert) {
        const auto model = fit_expert_graph(prepared.data.train, prepared.data.names);
        io::save_json(uci_out / "expert.json",
                      io::graph_to_json(LearnedGraph(model.graph, GpEdgeSet::empty(model.graph.size()))));
      }
      for (const auto& d : prepared.dropped) std::cout << "dropped " << d << '\n';
      std::cout << "train " << prepared.data.train.rows() << " val " << prepared.data.validation.rows() << " test "
                << prepared.data.test.rows() << '\n';
    } else if (*shd_cmd) {
      std::cout << shd(io::graph_from_json(io::load_json(shd_a)), io::graph_from_json(io::load_json(shd_b))) << '\n';
    } else if (*dot) {
      const auto text = to_dot(io::graph_from_json(io::load_json(dot_in)));
      if (dot_out)
        io::save_text(*dot_out, text);
      else
        std::cout << text;
    }
  } catch (const ContractViolation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
