#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sebn/dataset.hpp"
#include "sebn/graph.hpp"

namespace sebn {

/// Independent-addition (GP edges equally likely anywhere) or expert-guided
/// (GP edges mostly on top of linear edges).
enum class GenMode { IndependentAddition, ExpertGuided };

std::string to_string(GenMode mode);
GenMode gen_mode_from_string(const std::string& text);

struct SplitSizes {
  int train = 500;
  int validation = 100;
  int test = 100;
};

struct GenConfig {
  int n = 6;
  GenMode mode = GenMode::IndependentAddition;
  double p_linear = 0.5;
  double p_modify = 0.5;
  double p_add = 0.5;
  double root_variance = 0.01;
  double noise_variance = 0.01;
  SplitSizes sizes;
  std::uint64_t seed = 0;

  /// Defaults for a regime: p_add 0.5 (ID) or 0.01 (ED).
  static GenConfig for_mode(GenMode mode, int n, std::uint64_t seed);
  void validate() const;
};

/// Generated ground truth: linear weights are 1, intercepts 0, and every GP
/// edge j -> i contributes cos(2 pi x_j).
struct GroundTruth {
  ExpertGraph expert;
  GpEdgeSet gp;
  std::vector<LinearTerm> linear;

  LearnedGraph graph() const { return LearnedGraph(expert, gp); }
};

GroundTruth gen_structure(const GenConfig& config);

/// Ancestral sampling in index order, independent substreams per split.
Dataset sample_dataset(const GroundTruth& truth, const GenConfig& config);

/// The five-node system used as a worked example:
///   X3 = X1 + X2 + cos(2 pi X1) + cos(2 pi X2) + e
///   X4 = X1 + X2 + X3 + cos(2 pi X1) + e
///   X5 = X1 + cos(2 pi X1) + cos(2 pi X2) + cos(2 pi X4) + e
GroundTruth five_node_example();

/// Truth with unit weights and zero intercepts for the given graphs.
GroundTruth make_ground_truth(ExpertGraph expert, GpEdgeSet gp);

}  // namespace sebn
