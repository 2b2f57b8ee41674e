#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "sebn/cpd.hpp"
#include "sebn/graph.hpp"
#include "sebn/structure_search.hpp"
#include "sebn/synthetic.hpp"

namespace sebn::io {

using nlohmann::json;

struct CsvTable {
  std::vector<std::string> header;
  Eigen::MatrixXd values;
};

/// Comma-separated, header row, '.' decimal. Throws FormatError on ragged
/// rows or unparseable cells.
CsvTable read_csv(const std::filesystem::path& path);
/// Same, without a header row; columns are named `V1..Vk`.
CsvTable read_csv_headerless(const std::filesystem::path& path);
/// Detects whether the first row is a header (any non-numeric cell).
CsvTable read_csv_auto(const std::filesystem::path& path);

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header, const Eigen::MatrixXd& values);

/// Shortest round-trip decimal rendering of a double.
std::string format_double(double value);

// Graph JSON: {"nodes": [...], "linear_edges": [[parent, child], ...], "gp_edges": [...]}.
json graph_to_json(const LearnedGraph& graph);
LearnedGraph graph_from_json(const json& doc);
/// Expert graph from a graph document; any gp_edges are ignored.
ExpertGraph expert_from_json(const json& doc);

json cpd_to_json(const NodeCpd& cpd, const std::vector<std::string>& names);
NodeCpd cpd_from_json(const json& doc, const std::vector<std::string>& names);

json load_json(const std::filesystem::path& path);
/// Pretty-printed with a trailing newline.
void save_json(const std::filesystem::path& path, const json& doc);
void save_text(const std::filesystem::path& path, const std::string& text);

int node_index(const std::vector<std::string>& names, const std::string& name);

}  // namespace sebn::io
