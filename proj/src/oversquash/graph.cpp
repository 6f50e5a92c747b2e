#include "oversquash/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

#include "oversquash/error.hpp"

namespace oversquash {

namespace {

std::string edge_str(const Edge& e) {
    return "(" + std::to_string(e.first) + "," + std::to_string(e.second) + ")";
}

}  // namespace

Graph::Graph(int num_nodes, std::span<const Edge> edges) : n_(num_nodes) {
    require(num_nodes >= 1, ErrorCode::InvalidArgument,
            "num_nodes must be positive, got " + std::to_string(num_nodes));
    require(num_nodes <= kMaxNodes, ErrorCode::TooLarge,
            "num_nodes " + std::to_string(num_nodes) + " exceeds cap " +
                std::to_string(kMaxNodes));
    require(!edges.empty(), ErrorCode::EmptyGraph, "edge list is empty");

    edges_.reserve(edges.size());
    for (const Edge& e : edges) {
        auto [a, b] = e;
        if (a < 0 || a >= n_ || b < 0 || b >= n_) {
            fail(ErrorCode::NodeOutOfRange,
                 "edge " + edge_str(e) + " references a node outside [0, " +
                     std::to_string(n_) + ")");
        }
        require(a != b, ErrorCode::SelfLoop,
                "self-loop at node " + std::to_string(a));
        edges_.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(edges_.begin(), edges_.end());
    auto dup = std::adjacent_find(edges_.begin(), edges_.end());
    if (dup != edges_.end()) {
        fail(ErrorCode::DuplicateEdge, "duplicate edge " + edge_str(*dup));
    }

    adj_.assign(n_, {});
    for (auto [a, b] : edges_) {
        adj_[a].push_back(b);
        adj_[b].push_back(a);
    }
    for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());

    std::vector<char> seen(n_, 0);
    std::deque<NodeId> queue{0};
    seen[0] = 1;
    int reached = 1;
    while (!queue.empty()) {
        NodeId v = queue.front();
        queue.pop_front();
        for (NodeId u : adj_[v]) {
            if (!seen[u]) {
                seen[u] = 1;
                ++reached;
                queue.push_back(u);
            }
        }
    }
    if (reached != n_) {
        auto it = std::find(seen.begin(), seen.end(), 0);
        fail(ErrorCode::Disconnected,
             "graph is disconnected: node " +
                 std::to_string(std::distance(seen.begin(), it)) +
                 " is unreachable from node 0");
    }

    min_degree_ = std::numeric_limits<int>::max();
    for (const auto& nbrs : adj_) {
        min_degree_ = std::min(min_degree_, static_cast<int>(nbrs.size()));
        max_degree_ = std::max(max_degree_, static_cast<int>(nbrs.size()));
    }
}

std::vector<int> Graph::degrees() const {
    std::vector<int> d(n_);
    for (int v = 0; v < n_; ++v) d[v] = degree(v);
    return d;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    if (u < 0 || u >= n_ || v < 0 || v >= n_) return false;
    const auto& nbrs = adj_[u];
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<Edge> Graph::non_edges() const {
    std::vector<Edge> out;
    for (NodeId v = 0; v < n_; ++v) {
        for (NodeId u = v + 1; u < n_; ++u) {
            if (!has_edge(v, u)) out.emplace_back(v, u);
        }
    }
    return out;
}

Graph Graph::with_edges(std::span<const Edge> extra) const {
    std::vector<Edge> all(edges_);
    all.insert(all.end(), extra.begin(), extra.end());
    return Graph(n_, all);
}

Matrix Graph::adjacency_matrix() const {
    Matrix a = Matrix::Zero(n_, n_);
    for (auto [x, y] : edges_) {
        a(x, y) = 1.0;
        a(y, x) = 1.0;
    }
    return a;
}

Graph build_graph(int num_nodes, std::span<const Edge> edges) {
    return Graph(num_nodes, edges);
}

const char* shift_kind_name(ShiftKind kind) noexcept {
    switch (kind) {
        case ShiftKind::Adjacency: return "adjacency";
        case ShiftKind::RandomWalk: return "random_walk";
        case ShiftKind::Symmetric: return "symmetric";
    }
    return "unknown";
}

ShiftKind parse_shift_kind(const std::string& name) {
    if (name == "adjacency" || name == "A" || name == "gin") return ShiftKind::Adjacency;
    if (name == "random_walk" || name == "rw" || name == "sage") return ShiftKind::RandomWalk;
    if (name == "symmetric" || name == "sym" || name == "gcn") return ShiftKind::Symmetric;
    fail(ErrorCode::InvalidArgument, "unknown shift operator '" + name + "'");
}

const char* transfer_kind_name(TransferKind kind) noexcept {
    switch (kind) {
        case TransferKind::Ring: return "ring";
        case TransferKind::CrossedRing: return "crossed_ring";
        case TransferKind::CliquePath: return "clique_path";
    }
    return "unknown";
}

TransferKind parse_transfer_kind(const std::string& name) {
    if (name == "ring") return TransferKind::Ring;
    if (name == "crossed_ring") return TransferKind::CrossedRing;
    if (name == "clique_path") return TransferKind::CliquePath;
    fail(ErrorCode::InvalidArgument, "unknown transfer topology '" + name + "'");
}

TransferGraph make_ring(int r) {
    require(r >= 2, ErrorCode::InvalidDistance,
            "ring requires r >= 2, got " + std::to_string(r));
    const int n = 2 * r;
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return {Graph(n, edges), {TransferKind::Ring, r, 0, r}};
}

TransferGraph make_crossed_ring(int r) {
    require(r >= 3, ErrorCode::InvalidDistance,
            "crossed ring requires r >= 3, got " + std::to_string(r));
    const int n = 2 * r;
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    // Arm one holds node j at distance j; arm two holds node 2r - j.
    auto arm_one = [](int j) { return j; };
    auto arm_two = [n](int j) { return n - j; };
    for (int j = 1; j + 1 <= r - 1; ++j) {
        edges.emplace_back(arm_one(j), arm_two(j + 1));
        edges.emplace_back(arm_two(j), arm_one(j + 1));
    }
    return {Graph(n, edges), {TransferKind::CrossedRing, r, 0, r}};
}

TransferGraph make_clique_path(int r) {
    require(r >= 3, ErrorCode::InvalidDistance,
            "clique path requires r >= 3, got " + std::to_string(r));
    const int clique = r - 1;
    const int path = r - 1;
    const int n = clique + path;
    std::vector<Edge> edges;
    for (int a = 0; a < clique; ++a) {
        for (int b = a + 1; b < clique; ++b) edges.emplace_back(a, b);
    }
    const int head = clique;
    edges.emplace_back(1, head);
    for (int i = head; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return {Graph(n, edges), {TransferKind::CliquePath, r, 0, n - 1}};
}

TransferGraph make_transfer(TransferKind kind, int r) {
    switch (kind) {
        case TransferKind::Ring: return make_ring(r);
        case TransferKind::CrossedRing: return make_crossed_ring(r);
        case TransferKind::CliquePath: return make_clique_path(r);
    }
    fail(ErrorCode::InvalidArgument, "unknown transfer kind");
}

Matrix shift_operator(const Graph& graph, ShiftKind kind) {
    const int n = graph.num_nodes();
    Matrix s = Matrix::Zero(n, n);
    for (auto [a, b] : graph.edges()) {
        const double da = graph.degree(a);
        const double db = graph.degree(b);
        switch (kind) {
            case ShiftKind::Adjacency:
                s(a, b) = s(b, a) = 1.0;
                break;
            case ShiftKind::RandomWalk:
                s(a, b) = 1.0 / da;
                s(b, a) = 1.0 / db;
                break;
            case ShiftKind::Symmetric:
                s(a, b) = s(b, a) = 1.0 / std::sqrt(da * db);
                break;
        }
    }
    return s;
}

MessagePassingMatrix message_passing_matrix(const Graph& graph, ShiftKind kind,
                                            double c_r, double c_a) {
    require(c_r >= 0.0 && c_a >= 0.0, ErrorCode::NegativeCoefficient,
            "c_r and c_a must be non-negative (got c_r=" + std::to_string(c_r) +
                ", c_a=" + std::to_string(c_a) + ")");
    Matrix s = c_a * shift_operator(graph, kind);
    s.diagonal().array() += c_r;
    return {kind, c_r, c_a, std::move(s)};
}

double matrix_power_entry(const Matrix& S, int m, NodeId v, NodeId u) {
    require(m >= 0, ErrorCode::InvalidArgument, "power must be non-negative");
    require(S.rows() == S.cols(), ErrorCode::ShapeMismatch, "matrix is not square");
    require(v >= 0 && v < S.rows() && u >= 0 && u < S.rows(),
            ErrorCode::NodeOutOfRange, "node index out of range");
    Vector x = Vector::Unit(S.rows(), u);
    for (int i = 0; i < m; ++i) x = S * x;
    return x(v);
}

Matrix matrix_power(const Matrix& S, int m) {
    require(m >= 0, ErrorCode::InvalidArgument, "power must be non-negative");
    Matrix out = Matrix::Identity(S.rows(), S.cols());
    for (int i = 0; i < m; ++i) out = out * S;
    return out;
}

std::uint64_t walk_count(const Graph& graph, NodeId v, NodeId u, int max_len) {
    require(max_len >= 0, ErrorCode::InvalidArgument, "walk length must be non-negative");
    const int n = graph.num_nodes();
    require(v >= 0 && v < n && u >= 0 && u < n, ErrorCode::NodeOutOfRange,
            "node index out of range");
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    // walks[x] = number of walks of the current length from x to u.
    std::vector<std::uint64_t> walks(n, 0), next(n, 0);
    walks[u] = 1;
    std::uint64_t total = walks[v];
    for (int len = 1; len <= max_len; ++len) {
        for (int x = 0; x < n; ++x) {
            std::uint64_t acc = 0;
            for (NodeId y : graph.neighbors(x)) {
                if (acc > kMax - walks[y]) fail(ErrorCode::Overflow, "walk count overflows 64 bits");
                acc += walks[y];
            }
            next[x] = acc;
        }
        walks.swap(next);
        if (total > kMax - walks[v]) fail(ErrorCode::Overflow, "walk count overflows 64 bits");
        total += walks[v];
    }
    return total;
}

std::vector<int> bfs_distances(const Graph& graph, NodeId v) {
    const int n = graph.num_nodes();
    require(v >= 0 && v < n, ErrorCode::NodeOutOfRange, "node index out of range");
    std::vector<int> dist(n, -1);
    std::deque<NodeId> queue{v};
    dist[v] = 0;
    while (!queue.empty()) {
        NodeId x = queue.front();
        queue.pop_front();
        for (NodeId y : graph.neighbors(x)) {
            if (dist[y] < 0) {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    return dist;
}

std::vector<std::uint64_t> shortest_path_counts(const Graph& graph, NodeId v) {
    const auto dist = bfs_distances(graph, v);
    const int n = graph.num_nodes();
    std::vector<NodeId> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](NodeId a, NodeId b) { return dist[a] < dist[b]; });
    std::vector<std::uint64_t> count(n, 0);
    count[v] = 1;
    for (NodeId x : order) {
        for (NodeId y : graph.neighbors(x)) {
            if (dist[y] == dist[x] + 1) count[y] += count[x];
        }
    }
    return count;
}

int diameter(const Graph& graph) {
    int best = 0;
    for (NodeId v = 0; v < graph.num_nodes(); ++v) {
        const auto d = bfs_distances(graph, v);
        best = std::max(best, *std::max_element(d.begin(), d.end()));
    }
    return best;
}

bool is_bipartite(const Graph& graph) {
    const auto dist = bfs_distances(graph, 0);
    for (auto [a, b] : graph.edges()) {
        if (dist[a] % 2 == dist[b] % 2) return false;
    }
    return true;
}

}  // namespace oversquash
