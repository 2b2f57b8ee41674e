#include "sebn/graph.hpp"

#include <algorithm>
#include <sstream>

namespace sebn {

AdjacencyMatrix::AdjacencyMatrix(int n) : n_(n) {
  if (n < 0) throw ContractViolation("AdjacencyMatrix: negative size");
  cells_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
}

AdjacencyMatrix AdjacencyMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  const int n = static_cast<int>(rows.size());
  AdjacencyMatrix m(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n)
      throw ContractViolation("AdjacencyMatrix::from_rows: matrix is not square");
    for (int j = 0; j < n; ++j)
      if (rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0) m.set_edge(j, i);
  }
  return m;
}

std::size_t AdjacencyMatrix::index(int parent, int child) const {
  if (parent < 0 || parent >= n_ || child < 0 || child >= n_)
    throw ContractViolation("AdjacencyMatrix: node index out of range");
  return static_cast<std::size_t>(child) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(parent);
}

void AdjacencyMatrix::set_edge(int parent, int child, bool present) { cells_[index(parent, child)] = present ? 1 : 0; }

std::vector<int> AdjacencyMatrix::parents(int child) const {
  std::vector<int> out;
  for (int j = 0; j < n_; ++j)
    if (has_edge(j, child)) out.push_back(j);
  return out;
}

std::vector<int> AdjacencyMatrix::children(int parent) const {
  std::vector<int> out;
  for (int i = 0; i < n_; ++i)
    if (has_edge(parent, i)) out.push_back(i);
  return out;
}

int AdjacencyMatrix::edge_count() const {
  return static_cast<int>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

namespace {

void require_empty_diagonal(const AdjacencyMatrix& m, const char* what) {
  for (int i = 0; i < m.size(); ++i)
    if (m.has_edge(i, i)) throw ContractViolation(std::string(what) + ": self loop on node " + std::to_string(i + 1));
}

AdjacencyMatrix union_of(const AdjacencyMatrix& a, const AdjacencyMatrix& b) {
  AdjacencyMatrix u(a.size());
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j)
      if (a.has_edge(j, i) || b.has_edge(j, i)) u.set_edge(j, i);
  return u;
}

}  // namespace

std::vector<std::string> default_node_names(int n) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) names.push_back("X" + std::to_string(i));
  return names;
}

ExpertGraph::ExpertGraph(AdjacencyMatrix linear, std::vector<std::string> node_names)
    : linear_(std::move(linear)), names_(std::move(node_names)) {
  if (names_.empty()) names_ = default_node_names(linear_.size());
  if (static_cast<int>(names_.size()) != linear_.size())
    throw ContractViolation("ExpertGraph: node name count does not match matrix size");
  if (linear_.size() > NodeSet::kMaxNodes) throw ContractViolation("ExpertGraph: more than 26 nodes");
  require_empty_diagonal(linear_, "ExpertGraph");
  if (auto check = check_acyclic(linear_); !check.ok) throw ContractViolation("ExpertGraph: linear edges contain a cycle");
}

ExpertGraph ExpertGraph::empty(int n) { return ExpertGraph(AdjacencyMatrix(n)); }

NodeSet ExpertGraph::descendants(int node) const {
  NodeSet seen;
  std::vector<int> stack{node};
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int c : linear_.children(v)) {
      if (!seen.contains(c)) {
        seen = seen.with(c);
        stack.push_back(c);
      }
    }
  }
  return seen;
}

GpEdgeSet::GpEdgeSet(AdjacencyMatrix gp) : gp_(std::move(gp)) { require_empty_diagonal(gp_, "GpEdgeSet"); }

LearnedGraph::LearnedGraph(ExpertGraph expert, GpEdgeSet gp_edges) : expert_(std::move(expert)), gp_(std::move(gp_edges)) {
  if (gp_.size() != expert_.size()) throw ContractViolation("LearnedGraph: GP edge set size does not match expert graph");
  if (auto check = validate_dag(expert_, gp_); !check.ok)
    throw ContractViolation("LearnedGraph: union of linear and GP edges is cyclic");
}

DagCheck check_acyclic(const AdjacencyMatrix& edges) {
  const int n = edges.size();
  // 0 = unvisited, 1 = on stack, 2 = done
  std::vector<int> state(static_cast<std::size_t>(n), 0);
  std::vector<int> path;
  DagCheck result;

  auto dfs = [&](auto&& self, int v) -> bool {
    state[static_cast<std::size_t>(v)] = 1;
    path.push_back(v);
    for (int c : edges.children(v)) {
      if (state[static_cast<std::size_t>(c)] == 1) {
        auto start = std::find(path.begin(), path.end(), c);
        result.cycle.assign(start, path.end());
        return true;
      }
      if (state[static_cast<std::size_t>(c)] == 0 && self(self, c)) return true;
    }
    path.pop_back();
    state[static_cast<std::size_t>(v)] = 2;
    return false;
  };

  for (int v = 0; v < n; ++v) {
    if (state[static_cast<std::size_t>(v)] == 0 && dfs(dfs, v)) {
      result.ok = false;
      auto smallest = std::min_element(result.cycle.begin(), result.cycle.end());
      std::rotate(result.cycle.begin(), smallest, result.cycle.end());
      return result;
    }
  }
  return result;
}

DagCheck validate_dag(const ExpertGraph& expert, const GpEdgeSet& gp) {
  if (expert.size() != gp.size()) throw ContractViolation("validate_dag: size mismatch");
  return check_acyclic(union_of(expert.linear(), gp.gp()));
}

std::vector<int> topological_order(const AdjacencyMatrix& edges) {
  const int n = edges.size();
  std::vector<int> indegree(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) indegree[static_cast<std::size_t>(i)] = static_cast<int>(edges.parents(i).size());
  std::vector<int> order;
  std::vector<bool> done(static_cast<std::size_t>(n), false);
  while (static_cast<int>(order.size()) < n) {
    int next = -1;
    for (int v = 0; v < n && next < 0; ++v)
      if (!done[static_cast<std::size_t>(v)] && indegree[static_cast<std::size_t>(v)] == 0) next = v;
    if (next < 0) throw ContractViolation("topological_order: graph has a cycle");
    done[static_cast<std::size_t>(next)] = true;
    order.push_back(next);
    for (int c : edges.children(next)) --indegree[static_cast<std::size_t>(c)];
  }
  return order;
}

NodeSet leaf_eligible(const ExpertGraph& expert, NodeSet subset) {
  if (subset.empty()) throw ContractViolation("leaf_eligible: subset must be nonempty");
  NodeSet eligible;
  for (int x : subset.members()) {
    if (x >= expert.size()) throw ContractViolation("leaf_eligible: node outside graph");
    bool has_child_in_subset = false;
    for (int c : expert.linear().children(x)) has_child_in_subset = has_child_in_subset || subset.contains(c);
    if (!has_child_in_subset) eligible = eligible.with(x);
  }
  return eligible;
}

namespace {

int pair_distance(const AdjacencyMatrix& a, const AdjacencyMatrix& b, int i, int j) {
  const bool a_ij = a.has_edge(i, j), a_ji = a.has_edge(j, i);
  const bool b_ij = b.has_edge(i, j), b_ji = b.has_edge(j, i);
  if (a_ij == b_ij && a_ji == b_ji) return 0;
  const bool reversal = (a_ij != a_ji) && (b_ij != b_ji) && (a_ij == b_ji);
  if (reversal) return 1;
  return static_cast<int>(a_ij != b_ij) + static_cast<int>(a_ji != b_ji);
}

int typed_shd(const AdjacencyMatrix& a, const AdjacencyMatrix& b) {
  int total = 0;
  for (int i = 0; i < a.size(); ++i)
    for (int j = i + 1; j < a.size(); ++j) total += pair_distance(a, b, i, j);
  return total;
}

}  // namespace

int shd(const LearnedGraph& a, const LearnedGraph& b) {
  if (a.size() != b.size()) throw ContractViolation("shd: graphs have different node counts");
  return typed_shd(a.expert().linear(), b.expert().linear()) + typed_shd(a.gp_edges().gp(), b.gp_edges().gp());
}

std::string to_dot(const LearnedGraph& graph) {
  const auto& names = graph.expert().node_names();
  std::ostringstream out;
  out << "digraph sebn {\n";
  for (const auto& name : names) out << "  \"" << name << "\";\n";
  const auto& linear = graph.expert().linear();
  const auto& gp = graph.gp_edges().gp();
  for (int i = 0; i < graph.size(); ++i)
    for (int j = 0; j < graph.size(); ++j)
      if (linear.has_edge(j, i))
        out << "  \"" << names[static_cast<std::size_t>(j)] << "\" -> \"" << names[static_cast<std::size_t>(i)]
            << "\" [style=solid];\n";
  for (int i = 0; i < graph.size(); ++i)
    for (int j = 0; j < graph.size(); ++j)
      if (gp.has_edge(j, i))
        out << "  \"" << names[static_cast<std::size_t>(j)] << "\" -> \"" << names[static_cast<std::size_t>(i)]
            << "\" [style=dashed, label=\"gp\"];\n";
  out << "}\n";
  return out.str();
}

}  // namespace sebn
