#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sebn/node_set.hpp"

namespace sebn {

/// Square 0/1 matrix where cell (child, parent) set means an edge parent -> child.
class AdjacencyMatrix {
 public:
  AdjacencyMatrix() = default;
  explicit AdjacencyMatrix(int n);

  /// Builds from rows, row i listing the parents of node i (entry (i, j) = 1 means j -> i).
  static AdjacencyMatrix from_rows(const std::vector<std::vector<int>>& rows);

  int size() const { return n_; }
  bool has_edge(int parent, int child) const { return cells_[index(parent, child)] != 0; }
  void set_edge(int parent, int child, bool present = true);

  std::vector<int> parents(int child) const;
  std::vector<int> children(int parent) const;
  int edge_count() const;

  bool operator==(const AdjacencyMatrix&) const = default;

 private:
  std::size_t index(int parent, int child) const;

  int n_ = 0;
  std::vector<std::uint8_t> cells_;
};

/// The fixed linear expert DAG. Construction rejects cycles and self loops.
class ExpertGraph {
 public:
  ExpertGraph() = default;
  explicit ExpertGraph(AdjacencyMatrix linear, std::vector<std::string> node_names = {});

  static ExpertGraph empty(int n);

  int size() const { return linear_.size(); }
  const AdjacencyMatrix& linear() const { return linear_; }
  const std::vector<std::string>& node_names() const { return names_; }
  std::vector<int> parents(int node) const { return linear_.parents(node); }

  /// All nodes reachable from `node` along expert edges (excluding itself).
  NodeSet descendants(int node) const;

  bool operator==(const ExpertGraph&) const = default;

 private:
  AdjacencyMatrix linear_;
  std::vector<std::string> names_;
};

/// Nonlinear (GP) edges learned on top of, or generated alongside, an expert graph.
class GpEdgeSet {
 public:
  GpEdgeSet() = default;
  explicit GpEdgeSet(AdjacencyMatrix gp);

  static GpEdgeSet empty(int n) { return GpEdgeSet(AdjacencyMatrix(n)); }

  int size() const { return gp_.size(); }
  const AdjacencyMatrix& gp() const { return gp_; }
  AdjacencyMatrix& gp() { return gp_; }

  bool operator==(const GpEdgeSet&) const = default;

 private:
  AdjacencyMatrix gp_;
};

/// Expert graph plus GP edges. The union is required to be acyclic.
class LearnedGraph {
 public:
  LearnedGraph() = default;
  LearnedGraph(ExpertGraph expert, GpEdgeSet gp_edges);

  int size() const { return expert_.size(); }
  const ExpertGraph& expert() const { return expert_; }
  const GpEdgeSet& gp_edges() const { return gp_; }

  bool operator==(const LearnedGraph&) const = default;

 private:
  ExpertGraph expert_;
  GpEdgeSet gp_;
};

struct DagCheck {
  bool ok = true;
  std::vector<int> cycle;  ///< Nodes of one directed cycle in traversal order, empty when ok.
};

/// Acyclicity of a single edge set.
DagCheck check_acyclic(const AdjacencyMatrix& edges);

/// Acyclicity of the union of linear and GP edges.
DagCheck validate_dag(const ExpertGraph& expert, const GpEdgeSet& gp);

/// Kahn's algorithm, lowest index first among ready nodes. Throws on cycles.
std::vector<int> topological_order(const AdjacencyMatrix& edges);

/// Nodes of `subset` with no expert edge into another member of `subset`.
/// These are the only admissible last elements of an expert-consistent order.
NodeSet leaf_eligible(const ExpertGraph& expert, NodeSet subset);

/// Structural Hamming distance over typed edges (linear and GP counted
/// separately). A same-kind edge that flips direction counts once.
int shd(const LearnedGraph& a, const LearnedGraph& b);

/// Graphviz rendering: linear edges solid, GP edges dashed and labelled `gp`.
std::string to_dot(const LearnedGraph& graph);

/// Default X1..Xn labels.
std::vector<std::string> default_node_names(int n);

}  // namespace sebn
