#include "agmon/graph_io.hpp"

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "agmon/errors.hpp"

namespace agmon {

namespace {

using nlohmann::json;

std::pair<Graph, Potential> from_json(const json& doc) {
  if (!doc.is_object()) fail(errc::schema_violation, "top level must be an object");
  for (const char* key : {"n", "edges", "potential"})
    if (!doc.contains(key)) fail(errc::schema_violation, std::string("missing field '") + key + "'");

  if (!doc["n"].is_number_integer()) fail(errc::schema_violation, "field 'n' must be an integer");
  int n = doc["n"].get<int>();

  if (!doc["edges"].is_array()) fail(errc::schema_violation, "field 'edges' must be an array");
  std::vector<std::pair<int, int>> edges;
  int idx = 0;
  for (const auto& entry : doc["edges"]) {
    std::string where = "edges[" + std::to_string(idx) + "]";
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number_integer() ||
        !entry[1].is_number_integer())
      fail(errc::schema_violation, where + " must be a pair of integers");
    int u = entry[0].get<int>();
    int v = entry[1].get<int>();
    if (u >= v && u != v)
      fail(errc::schema_violation, where + " must satisfy u < v, got [" + std::to_string(u) + ", " +
                                       std::to_string(v) + "]");
    if (u < 0 || v >= n)
      fail(errc::schema_violation, where + " out of range for n=" + std::to_string(n));
    edges.emplace_back(u, v);  // u == v falls through to the SelfLoop check
    ++idx;
  }

  if (!doc["potential"].is_array())
    fail(errc::schema_violation, "field 'potential' must be an array");
  if (static_cast<int>(doc["potential"].size()) != n)
    fail(errc::schema_violation, "field 'potential' must hold n=" + std::to_string(n) +
                                     " values, got " + std::to_string(doc["potential"].size()));
  Potential w;
  idx = 0;
  for (const auto& entry : doc["potential"]) {
    if (!entry.is_number())
      fail(errc::schema_violation, "potential[" + std::to_string(idx) + "] must be a number");
    w.values.push_back(entry.get<double>());
    ++idx;
  }

  Graph g = Graph::from_edges(n, edges);
  validate_potential(g, w);
  return {std::move(g), std::move(w)};
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::io_error, "cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::pair<Graph, Potential> load_graph(const std::string& path) {
  std::string text = read_file(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(errc::parse_error, std::string("'") + path + "': " + e.what());
  }
  try {
    return from_json(doc);
  } catch (const error&) {
    throw;
  } catch (const json::exception& e) {
    fail(errc::schema_violation, std::string("'") + path + "': " + e.what());
  }
}

void save_graph(const std::string& path, const Graph& g, const Potential& w) {
  validate_potential(g, w);
  json doc;
  doc["n"] = g.n;
  doc["edges"] = json::array();
  for (const auto& [u, v] : g.edge_list()) doc["edges"].push_back({u, v});
  doc["potential"] = w.values;
  atomic_write(path, doc.dump(2) + "\n");
}

std::pair<Graph, Potential> load_graph_text(const std::string& edge_path,
                                            const std::string& potential_path) {
  auto strip = [](std::string line) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    return line;
  };

  std::istringstream edges_in(read_file(edge_path));
  std::vector<std::pair<int, int>> edges;
  int max_vertex = -1;
  std::string line;
  int lineno = 0;
  while (std::getline(edges_in, line)) {
    ++lineno;
    std::istringstream ls(strip(line));
    int u, v;
    if (!(ls >> u)) continue;  // blank / comment line
    if (!(ls >> v))
      fail(errc::parse_error, "'" + edge_path + "' line " + std::to_string(lineno) +
                                  ": expected two vertex indices");
    std::string extra;
    if (ls >> extra)
      fail(errc::parse_error, "'" + edge_path + "' line " + std::to_string(lineno) +
                                  ": trailing token '" + extra + "'");
    if (u < 0 || v < 0)
      fail(errc::schema_violation, "'" + edge_path + "' line " + std::to_string(lineno) +
                                       ": negative vertex index");
    edges.emplace_back(u, v);
    max_vertex = std::max({max_vertex, u, v});
  }
  if (edges.empty()) fail(errc::schema_violation, "'" + edge_path + "' holds no edges");

  std::istringstream pot_in(read_file(potential_path));
  Potential w;
  lineno = 0;
  while (std::getline(pot_in, line)) {
    ++lineno;
    std::istringstream ls(strip(line));
    double value;
    if (!(ls >> value)) continue;
    if (!std::isfinite(value))
      fail(errc::schema_violation, "'" + potential_path + "' line " + std::to_string(lineno) +
                                       ": value is not finite");
    w.values.push_back(value);
  }

  int n = max_vertex + 1;
  if (static_cast<int>(w.values.size()) != n)
    fail(errc::schema_violation, "'" + potential_path + "' holds " + std::to_string(w.values.size()) +
                                     " values for a graph on " + std::to_string(n) + " vertices");
  Graph g = Graph::from_edges(n, edges);
  return {std::move(g), std::move(w)};
}

void atomic_write(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path dir = target.parent_path();
  if (dir.empty()) dir = ".";
  fs::path tmp = dir / (target.filename().string() + ".tmp" + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(errc::io_error, "cannot open '" + tmp.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) fail(errc::io_error, "write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    fail(errc::io_error, "cannot move '" + tmp.string() + "' to '" + path + "': " + ec.message());
  }
}

}  // namespace agmon
