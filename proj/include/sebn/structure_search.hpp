#pragma once

#include <atomic>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sebn/cpd.hpp"
#include "sebn/graph.hpp"

namespace sebn {

struct SearchConfig {
  double amplitude_threshold = 0.2;
  TrainConfig train;

  void validate() const;
};

/// Candidates whose fitted amplitude is >= threshold, in candidate order.
std::vector<int> prune_parents(const NodeCpd& cpd, double threshold);

/// Copy of `cpd` with the sub-threshold GP terms removed.
NodeCpd pruned_cpd(const NodeCpd& cpd, double threshold);

/// Result of fitting one node against one candidate set, after pruning.
struct ScoredFit {
  NodeCpd cpd;                ///< pruned CPD
  std::vector<int> retained;  ///< GP parents that survived pruning
  double score = 0.0;         ///< validation log-likelihood of the pruned CPD
};

/// Thread-safe memo of node fits keyed on (node, candidate set). The first
/// stored result for a key wins; later inserts return the stored one.
class FitMemo {
 public:
  std::shared_ptr<const ScoredFit> find(int node, NodeSet candidates) const;
  std::shared_ptr<const ScoredFit> insert(int node, NodeSet candidates, ScoredFit fit);
  std::size_t size() const;

 private:
  static std::uint64_t key(int node, NodeSet candidates) {
    return (static_cast<std::uint64_t>(node) << 32) | candidates.bits();
  }

  mutable std::mutex mutex_;
  std::unordered_map<std::uint64_t, std::shared_ptr<const ScoredFit>> entries_;
};

/// Best network score per node subset and the leaf that achieved it.
class ScoreCache {
 public:
  struct Entry {
    double score = 0.0;
    std::optional<int> leaf;
  };

  ScoreCache();
  const Entry* find(NodeSet subset) const;
  void store(NodeSet subset, Entry entry);
  std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<NodeSet, Entry> entries_;
};

struct LearnedStructure {
  LearnedGraph graph;
  std::vector<NodeCpd> cpds;  ///< pruned CPD per node, index = node
  double score = 0.0;
};

/// Exact search over orderings consistent with the expert graph.
///
/// Every node score comes from a fit with all admissible predecessors as GP
/// candidates, pruned at the amplitude threshold and scored on validation
/// data. Fits are memoized on (node, candidate set), so the dynamic program
/// and the brute-force enumeration share identical sub-scores.
class StructureSearch {
 public:
  StructureSearch(Eigen::MatrixXd train, Eigen::MatrixXd validation, ExpertGraph expert,
                  std::vector<double> noise_variances, SearchConfig config,
                  std::optional<std::vector<LinearTerm>> oracle_linear = std::nullopt);

  int size() const { return expert_.size(); }
  const ExpertGraph& expert() const { return expert_; }

  /// Fit (or fetch) node `x` with GP candidates `subset \ {x}`. `x` must be leaf-eligible in `subset`.
  double best_score(NodeSet subset, int x);
  std::shared_ptr<const ScoredFit> scored_fit(NodeSet subset, int x);

  /// Best total score over expert-consistent orderings of `subset`. Records
  /// the chosen leaf of every visited subset in `cache`.
  double opt_ord(NodeSet subset, ScoreCache& cache);

  /// Walks leaf back-pointers from `full` down to the empty set.
  LearnedStructure reconstruct(const ScoreCache& cache, NodeSet full);

  /// Enumerates every expert-consistent total order (n <= 6) and keeps the best.
  std::pair<double, LearnedStructure> brute_force_structure();

  /// (node, subset) pairs the dynamic program will query, in a fixed order.
  std::vector<std::pair<int, NodeSet>> reachable_queries() const;

  /// Fits every reachable query up front on `workers` threads.
  void prefit(int workers);

  /// prefit + opt_ord + reconstruct on the full node set.
  LearnedStructure learn(int workers = 1);

  /// Number of node fits actually performed so far.
  std::size_t fit_count() const { return fits_performed_.load(); }

 private:
  ScoredFit compute(int x, NodeSet candidates) const;
  LearnedStructure assemble(const std::vector<std::pair<int, NodeSet>>& leaves_and_subsets, double score);

  Eigen::MatrixXd train_;
  Eigen::MatrixXd validation_;
  ExpertGraph expert_;
  std::vector<double> noise_variances_;
  SearchConfig config_;
  std::optional<std::vector<LinearTerm>> oracle_linear_;
  FitMemo memo_;
  std::atomic<std::size_t> fits_performed_{0};
};

}  // namespace sebn
