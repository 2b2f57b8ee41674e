#include "sebn/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sebn/errors.hpp"

namespace sebn::io {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    const auto first = cell.find_first_not_of(" \t\r");
    const auto last = cell.find_last_not_of(" \t\r");
    cells.push_back(first == std::string::npos ? std::string() : cell.substr(first, last - first + 1));
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

bool parse_double(const std::string& text, double& out) {
  if (text.empty()) return false;
  const char* begin = text.data();
  if (*begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

std::vector<std::vector<std::string>> read_rows(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    rows.push_back(split_line(line));
  }
  return rows;
}

CsvTable to_table(std::vector<std::string> header, const std::vector<std::vector<std::string>>& rows,
                  std::size_t first, const std::filesystem::path& path) {
  CsvTable table;
  table.header = std::move(header);
  const auto width = table.header.size();
  table.values.resize(static_cast<Eigen::Index>(rows.size() - first), static_cast<Eigen::Index>(width));
  for (std::size_t r = first; r < rows.size(); ++r) {
    if (rows[r].size() != width)
      throw FormatError(path.string() + ": row " + std::to_string(r + 1) + " has " + std::to_string(rows[r].size()) +
                        " cells, expected " + std::to_string(width));
    for (std::size_t c = 0; c < width; ++c) {
      double v = 0.0;
      if (!parse_double(rows[r][c], v))
        throw FormatError(path.string() + ": row " + std::to_string(r + 1) + " column " + std::to_string(c + 1) +
                          " is not a number: '" + rows[r][c] + "'");
      table.values(static_cast<Eigen::Index>(r - first), static_cast<Eigen::Index>(c)) = v;
    }
  }
  return table;
}

std::vector<std::string> generic_names(std::size_t k) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= k; ++i) names.push_back("V" + std::to_string(i));
  return names;
}

}  // namespace

CsvTable read_csv(const std::filesystem::path& path) {
  const auto rows = read_rows(path);
  if (rows.empty()) throw FormatError(path.string() + ": missing header row");
  return to_table(rows.front(), rows, 1, path);
}

CsvTable read_csv_headerless(const std::filesystem::path& path) {
  const auto rows = read_rows(path);
  if (rows.empty()) throw FormatError(path.string() + ": empty file");
  return to_table(generic_names(rows.front().size()), rows, 0, path);
}

CsvTable read_csv_auto(const std::filesystem::path& path) {
  const auto rows = read_rows(path);
  if (rows.empty()) throw FormatError(path.string() + ": empty file");
  double dummy = 0.0;
  const bool numeric_first = std::all_of(rows.front().begin(), rows.front().end(),
                                         [&](const std::string& cell) { return parse_double(cell, dummy); });
  return numeric_first ? to_table(generic_names(rows.front().size()), rows, 0, path) : to_table(rows.front(), rows, 1, path);
}

std::string format_double(double value) {
  char buf[64];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, value);
    double back = 0.0;
    if (parse_double(buf, back) && back == value) break;
  }
  return buf;
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header, const Eigen::MatrixXd& values) {
  if (static_cast<Eigen::Index>(header.size()) != values.cols()) throw FormatError("write_csv: header width mismatch");
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
  out << '\n';
  for (Eigen::Index r = 0; r < values.rows(); ++r) {
    for (Eigen::Index c = 0; c < values.cols(); ++c) out << (c ? "," : "") << format_double(values(r, c));
    out << '\n';
  }
  if (!out) throw FormatError("failed writing " + path.string());
}

int node_index(const std::vector<std::string>& names, const std::string& name) {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw FormatError("unknown node name '" + name + "'");
  return static_cast<int>(it - names.begin());
}

namespace {

json edges_to_json(const AdjacencyMatrix& m, const std::vector<std::string>& names) {
  json edges = json::array();
  for (int child = 0; child < m.size(); ++child)
    for (int parent = 0; parent < m.size(); ++parent)
      if (m.has_edge(parent, child))
        edges.push_back({names[static_cast<std::size_t>(parent)], names[static_cast<std::size_t>(child)]});
  return edges;
}

AdjacencyMatrix edges_from_json(const json& edges, const std::vector<std::string>& names) {
  AdjacencyMatrix m(static_cast<int>(names.size()));
  if (edges.is_null()) return m;
  if (!edges.is_array()) throw FormatError("graph JSON: edge list must be an array");
  for (const auto& e : edges) {
    if (!e.is_array() || e.size() != 2) throw FormatError("graph JSON: each edge must be [parent, child]");
    m.set_edge(node_index(names, e[0].get<std::string>()), node_index(names, e[1].get<std::string>()));
  }
  return m;
}

std::vector<std::string> names_from_json(const json& doc) {
  if (!doc.contains("nodes") || !doc["nodes"].is_array()) throw FormatError("graph JSON: missing \"nodes\" array");
  auto names = doc["nodes"].get<std::vector<std::string>>();
  if (names.empty()) throw FormatError("graph JSON: no nodes");
  return names;
}

}  // namespace

json graph_to_json(const LearnedGraph& graph) {
  const auto& names = graph.expert().node_names();
  json doc;
  doc["nodes"] = names;
  doc["linear_edges"] = edges_to_json(graph.expert().linear(), names);
  doc["gp_edges"] = edges_to_json(graph.gp_edges().gp(), names);
  return doc;
}

ExpertGraph expert_from_json(const json& doc) {
  auto names = names_from_json(doc);
  auto linear = edges_from_json(doc.value("linear_edges", json::array()), names);
  try {
    return ExpertGraph(std::move(linear), std::move(names));
  } catch (const ContractViolation& e) {
    throw FormatError(std::string("graph JSON: ") + e.what());
  }
}

LearnedGraph graph_from_json(const json& doc) {
  ExpertGraph expert = expert_from_json(doc);
  auto gp = edges_from_json(doc.value("gp_edges", json::array()), expert.node_names());
  try {
    return LearnedGraph(std::move(expert), GpEdgeSet(std::move(gp)));
  } catch (const ContractViolation& e) {
    throw FormatError(std::string("graph JSON: ") + e.what());
  }
}

json cpd_to_json(const NodeCpd& cpd, const std::vector<std::string>& names) {
  auto name = [&](int i) { return names.at(static_cast<std::size_t>(i)); };
  json doc;
  doc["node"] = name(cpd.node);
  json lp = json::array();
  for (int p : cpd.linear_parents) lp.push_back(name(p));
  doc["linear_parents"] = lp;
  doc["weights"] = cpd.weights;
  doc["intercept"] = cpd.intercept;
  json gp = json::array();
  for (std::size_t j = 0; j < cpd.gp_candidates.size(); ++j)
    gp.push_back({{"parent", name(cpd.gp_candidates[j])},
                  {"amplitude", cpd.gp_params[j].amplitude},
                  {"lengthscale", cpd.gp_params[j].lengthscale}});
  doc["gp_terms"] = gp;
  doc["noise_variance"] = cpd.noise_variance;
  return doc;
}

NodeCpd cpd_from_json(const json& doc, const std::vector<std::string>& names) {
  try {
    NodeCpd cpd;
    cpd.node = node_index(names, doc.at("node").get<std::string>());
    for (const auto& p : doc.at("linear_parents")) cpd.linear_parents.push_back(node_index(names, p.get<std::string>()));
    cpd.weights = doc.at("weights").get<std::vector<double>>();
    cpd.intercept = doc.at("intercept").get<double>();
    for (const auto& t : doc.at("gp_terms")) {
      cpd.gp_candidates.push_back(node_index(names, t.at("parent").get<std::string>()));
      cpd.gp_params.push_back({t.at("amplitude").get<double>(), t.at("lengthscale").get<double>()});
    }
    cpd.noise_variance = doc.at("noise_variance").get<double>();
    cpd.validate();
    return cpd;
  } catch (const json::exception& e) {
    throw FormatError(std::string("CPD JSON: ") + e.what());
  } catch (const ContractViolation& e) {
    throw FormatError(std::string("CPD JSON: ") + e.what());
  }
}

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void save_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  out << text;
}

void save_json(const std::filesystem::path& path, const json& doc) { save_text(path, doc.dump(2) + "\n"); }

}  // namespace sebn::io
