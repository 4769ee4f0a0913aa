#pragma once

#include <string>
#include <utility>

#include "agmon/graph.hpp"

namespace agmon {

// JSON instance format:
//   {"n": <int>, "edges": [[u, v], ...], "potential": [w0, ..., w_{n-1}]}
// with each edge listed once and u < v.  Structural problems raise
// SchemaViolation (naming the field/entry), malformed JSON raises ParseError,
// and graph-level defects surface through validate() (SelfLoop, ...).
std::pair<Graph, Potential> load_graph(const std::string& path);
void save_graph(const std::string& path, const Graph& g, const Potential& w);

// Plain-text alternative: one "u v" pair per line, plus a separate potential
// file with one value per line.  Blank lines and '#' comments are skipped.
std::pair<Graph, Potential> load_graph_text(const std::string& edge_path,
                                            const std::string& potential_path);

// Writes content to a temporary file in the target directory and renames it
// into place, so readers never observe a partial file.
void atomic_write(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

}  // namespace agmon
