#include "sebn/structure_search.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>

#include "sebn/errors.hpp"
#include "sebn/parallel.hpp"

namespace sebn {

void SearchConfig::validate() const {
  if (!(amplitude_threshold > 0.0)) throw ContractViolation("SearchConfig: amplitude threshold must be positive");
  train.validate();
}

std::vector<int> prune_parents(const NodeCpd& cpd, double threshold) {
  std::vector<int> kept;
  for (std::size_t j = 0; j < cpd.gp_candidates.size(); ++j)
    if (cpd.gp_params[j].amplitude >= threshold) kept.push_back(cpd.gp_candidates[j]);
  return kept;
}

NodeCpd pruned_cpd(const NodeCpd& cpd, double threshold) {
  NodeCpd out = cpd;
  out.gp_candidates.clear();
  out.gp_params.clear();
  for (std::size_t j = 0; j < cpd.gp_candidates.size(); ++j) {
    if (cpd.gp_params[j].amplitude >= threshold) {
      out.gp_candidates.push_back(cpd.gp_candidates[j]);
      out.gp_params.push_back(cpd.gp_params[j]);
    }
  }
  return out;
}

std::shared_ptr<const ScoredFit> FitMemo::find(int node, NodeSet candidates) const {
  std::lock_guard lock(mutex_);
  auto it = entries_.find(key(node, candidates));
  return it == entries_.end() ? nullptr : it->second;
}

std::shared_ptr<const ScoredFit> FitMemo::insert(int node, NodeSet candidates, ScoredFit fit) {
  std::lock_guard lock(mutex_);
  auto [it, inserted] = entries_.try_emplace(key(node, candidates), nullptr);
  if (inserted) it->second = std::make_shared<const ScoredFit>(std::move(fit));
  return it->second;
}

std::size_t FitMemo::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

ScoreCache::ScoreCache() { entries_[NodeSet{}] = Entry{0.0, std::nullopt}; }

const ScoreCache::Entry* ScoreCache::find(NodeSet subset) const {
  auto it = entries_.find(subset);
  return it == entries_.end() ? nullptr : &it->second;
}

void ScoreCache::store(NodeSet subset, Entry entry) { entries_[subset] = entry; }

StructureSearch::StructureSearch(Eigen::MatrixXd train, Eigen::MatrixXd validation, ExpertGraph expert,
                                 std::vector<double> noise_variances, SearchConfig config,
                                 std::optional<std::vector<LinearTerm>> oracle_linear)
    : train_(std::move(train)),
      validation_(std::move(validation)),
      expert_(std::move(expert)),
      noise_variances_(std::move(noise_variances)),
      config_(std::move(config)),
      oracle_linear_(std::move(oracle_linear)) {
  config_.validate();
  const int n = expert_.size();
  if (n < 1) throw ContractViolation("StructureSearch: empty graph");
  if (train_.cols() != n || validation_.cols() != n)
    throw ContractViolation("StructureSearch: data width does not match expert graph");
  if (static_cast<int>(noise_variances_.size()) != n)
    throw ContractViolation("StructureSearch: one noise variance per node is required");
  if (config_.train.mode == LearningMode::OracleLinear && (!oracle_linear_ || static_cast<int>(oracle_linear_->size()) != n))
    throw ContractViolation("StructureSearch: oracle-linear mode needs one true linear term per node");
}

ScoredFit StructureSearch::compute(int x, NodeSet candidates) const {
  std::optional<LinearTerm> oracle;
  if (config_.train.mode == LearningMode::OracleLinear) oracle = (*oracle_linear_)[static_cast<std::size_t>(x)];
  FitResult fit = fit_node(x, train_, validation_, expert_, candidates.members(),
                           noise_variances_[static_cast<std::size_t>(x)], config_.train, oracle);
  ScoredFit scored;
  scored.retained = prune_parents(fit.cpd, config_.amplitude_threshold);
  scored.cpd = pruned_cpd(fit.cpd, config_.amplitude_threshold);
  scored.score = node_test_loglik(scored.cpd, train_, validation_);
  return scored;
}

std::shared_ptr<const ScoredFit> StructureSearch::scored_fit(NodeSet subset, int x) {
  if (!subset.contains(x)) throw ContractViolation("best_score: node is not in the subset");
  if (!leaf_eligible(expert_, subset).contains(x))
    throw ContractViolation("best_score: node has an expert child inside the subset");
  for (int parent : expert_.parents(x))
    if (!subset.contains(parent)) throw ContractViolation("best_score: expert parent outside the subset");

  const NodeSet candidates = subset.without(x);
  if (auto hit = memo_.find(x, candidates)) return hit;
  ScoredFit fit = compute(x, candidates);
  ++fits_performed_;
  return memo_.insert(x, candidates, std::move(fit));
}

double StructureSearch::best_score(NodeSet subset, int x) { return scored_fit(subset, x)->score; }

double StructureSearch::opt_ord(NodeSet subset, ScoreCache& cache) {
  if (subset.empty()) return 0.0;
  if (const auto* hit = cache.find(subset)) return hit->score;

  double best = -std::numeric_limits<double>::infinity();
  std::optional<int> best_leaf;
  // Ascending order with strict improvement keeps the lowest index on ties.
  for (int x : leaf_eligible(expert_, subset).members()) {
    const double s = opt_ord(subset.without(x), cache) + best_score(subset, x);
    if (s > best || !best_leaf) {
      best = s;
      best_leaf = x;
    }
  }
  cache.store(subset, ScoreCache::Entry{best, best_leaf});
  return best;
}

LearnedStructure StructureSearch::assemble(const std::vector<std::pair<int, NodeSet>>& leaves_and_subsets,
                                           double score) {
  const int n = size();
  AdjacencyMatrix gp(n);
  std::vector<NodeCpd> cpds(static_cast<std::size_t>(n));
  for (const auto& [leaf, subset] : leaves_and_subsets) {
    const auto fit = memo_.find(leaf, subset.without(leaf));
    if (!fit) throw std::logic_error("reconstruct: missing fit for a chosen leaf");
    for (int parent : fit->retained) gp.set_edge(parent, leaf);
    cpds[static_cast<std::size_t>(leaf)] = fit->cpd;
  }
  return LearnedStructure{LearnedGraph(expert_, GpEdgeSet(std::move(gp))), std::move(cpds), score};
}

LearnedStructure StructureSearch::reconstruct(const ScoreCache& cache, NodeSet full) {
  const auto* top = cache.find(full);
  if (!top) throw std::logic_error("reconstruct: opt_ord has not been run on the full set");
  std::vector<std::pair<int, NodeSet>> chain;
  for (NodeSet s = full; !s.empty();) {
    const auto* entry = cache.find(s);
    if (!entry || !entry->leaf) throw std::logic_error("reconstruct: missing cache entry");
    chain.emplace_back(*entry->leaf, s);
    s = s.without(*entry->leaf);
  }
  return assemble(chain, top->score);
}

std::pair<double, LearnedStructure> StructureSearch::brute_force_structure() {
  const int n = size();
  if (n > 6) throw ContractViolation("brute_force_structure: refusing to enumerate orderings for n > 6");

  double best = -std::numeric_limits<double>::infinity();
  std::vector<int> best_order;
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n));

  // Extend prefixes by any node whose expert parents are all placed already.
  std::function<void(NodeSet)> extend = [&](NodeSet placed) {
    if (placed.size() == n) {
      double total = 0.0;
      NodeSet prefix;
      for (int x : order) {
        prefix = prefix.with(x);
        total += best_score(prefix, x);
      }
      if (total > best || best_order.empty()) {
        best = total;
        best_order = order;
      }
      return;
    }
    for (int x = 0; x < n; ++x) {
      if (placed.contains(x)) continue;
      const auto parents = expert_.parents(x);
      if (!std::all_of(parents.begin(), parents.end(), [&](int p) { return placed.contains(p); })) continue;
      order.push_back(x);
      extend(placed.with(x));
      order.pop_back();
    }
  };
  extend(NodeSet{});

  std::vector<std::pair<int, NodeSet>> chain;
  NodeSet prefix;
  for (int x : best_order) {
    prefix = prefix.with(x);
    chain.emplace_back(x, prefix);
  }
  return {best, assemble(chain, best)};
}

std::vector<std::pair<int, NodeSet>> StructureSearch::reachable_queries() const {
  std::set<NodeSet> visited;
  std::set<std::pair<NodeSet, int>> queries;
  std::vector<NodeSet> stack{NodeSet::full(size())};
  while (!stack.empty()) {
    const NodeSet s = stack.back();
    stack.pop_back();
    if (s.empty() || !visited.insert(s).second) continue;
    for (int x : leaf_eligible(expert_, s).members()) {
      queries.emplace(s, x);
      stack.push_back(s.without(x));
    }
  }
  std::vector<std::pair<int, NodeSet>> out;
  out.reserve(queries.size());
  for (const auto& [s, x] : queries) out.emplace_back(x, s);
  return out;
}

void StructureSearch::prefit(int workers) {
  const auto queries = reachable_queries();
  parallel_for(queries.size(), workers, [&](std::size_t i) { scored_fit(queries[i].second, queries[i].first); });
}

LearnedStructure StructureSearch::learn(int workers) {
  prefit(workers);
  ScoreCache cache;
  const NodeSet full = NodeSet::full(size());
  opt_ord(full, cache);
  return reconstruct(cache, full);
}

}  // namespace sebn
