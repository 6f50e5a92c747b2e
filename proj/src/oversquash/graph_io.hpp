#pragma once

#include <string>
#include <string_view>

#include "oversquash/graph.hpp"

namespace oversquash {

enum class GraphFormat { EdgeList, Json };

// Edge-list text: optional first line "# nodes <n>", then one "<u> <v>" pair
// per line (0-based). Without the header, n = max id + 1. Blank lines are
// skipped.
Graph parse_edge_list(std::string_view text);
std::string to_edge_list(const Graph& graph);

// JSON: {"num_nodes": n, "edges": [[u, v], ...]}
Graph parse_graph_json(std::string_view text);
std::string to_graph_json(const Graph& graph);

/// Detects JSON by its leading '{'.
Graph parse_graph(std::string_view text);

/// ".json" selects JSON, anything else the edge-list format.
GraphFormat format_for_path(const std::string& path);

Graph load_graph(const std::string& path);
void save_graph(const Graph& graph, const std::string& path, GraphFormat format);
std::string serialize_graph(const Graph& graph, GraphFormat format);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace oversquash
