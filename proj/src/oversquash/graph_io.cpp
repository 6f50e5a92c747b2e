#include "oversquash/graph_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "oversquash/error.hpp"

namespace oversquash {

namespace {

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

}  // namespace

Graph parse_edge_list(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int declared_nodes = -1;
    int max_id = -1;
    std::vector<Edge> edges;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto body = trim(line);
        if (body.empty()) continue;
        if (body.front() == '#') {
            std::istringstream hdr{std::string(body.substr(1))};
            std::string key;
            int n = -1;
            if (line_no == 1 && (hdr >> key >> n) && key == "nodes") {
                declared_nodes = n;
                continue;
            }
            fail(ErrorCode::Parse, "line " + std::to_string(line_no) +
                                       ": only '# nodes <n>' is allowed, as the first line");
        }
        std::istringstream fields{std::string(body)};
        long long u = 0, v = 0;
        std::string extra;
        if (!(fields >> u >> v) || (fields >> extra)) {
            fail(ErrorCode::Parse, "line " + std::to_string(line_no) +
                                       ": expected '<u> <v>', got '" + std::string(body) + "'");
        }
        if (u < 0 || v < 0 || u > kMaxNodes * 4LL || v > kMaxNodes * 4LL) {
            fail(ErrorCode::NodeOutOfRange,
                 "line " + std::to_string(line_no) + ": node id out of range");
        }
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
        max_id = std::max({max_id, static_cast<int>(u), static_cast<int>(v)});
    }
    const int n = declared_nodes >= 0 ? declared_nodes : max_id + 1;
    return Graph(n, edges);
}

std::string to_edge_list(const Graph& graph) {
    std::ostringstream out;
    out << "# nodes " << graph.num_nodes() << "\n";
    for (auto [a, b] : graph.edges()) out << a << " " << b << "\n";
    return out.str();
}

Graph parse_graph_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::Parse, std::string("invalid graph JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("num_nodes") || !doc.contains("edges")) {
        fail(ErrorCode::Parse, "graph JSON needs 'num_nodes' and 'edges'");
    }
    try {
        const int n = doc.at("num_nodes").get<int>();
        std::vector<Edge> edges;
        for (const auto& e : doc.at("edges")) {
            if (!e.is_array() || e.size() != 2) {
                fail(ErrorCode::Parse, "each edge must be a [u, v] pair");
            }
            edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
        return Graph(n, edges);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::Parse, std::string("invalid graph JSON: ") + e.what());
    }
}

std::string to_graph_json(const Graph& graph) {
    nlohmann::json doc;
    doc["num_nodes"] = graph.num_nodes();
    auto edges = nlohmann::json::array();
    for (auto [a, b] : graph.edges()) edges.push_back({a, b});
    doc["edges"] = std::move(edges);
    return doc.dump() + "\n";
}

Graph parse_graph(std::string_view text) {
    auto body = trim(text);
    if (!body.empty() && body.front() == '{') return parse_graph_json(body);
    return parse_edge_list(text);
}

GraphFormat format_for_path(const std::string& path) {
    if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) {
        return GraphFormat::Json;
    }
    return GraphFormat::EdgeList;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::Io, "cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::Io, "cannot open '" + path + "' for writing");
    out << content;
    if (!out) fail(ErrorCode::Io, "write to '" + path + "' failed");
}

Graph load_graph(const std::string& path) { return parse_graph(read_file(path)); }

std::string serialize_graph(const Graph& graph, GraphFormat format) {
    return format == GraphFormat::Json ? to_graph_json(graph) : to_edge_list(graph);
}

void save_graph(const Graph& graph, const std::string& path, GraphFormat format) {
    write_file(path, serialize_graph(graph, format));
}

}  // namespace oversquash
