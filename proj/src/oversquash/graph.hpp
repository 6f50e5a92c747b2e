#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace oversquash {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

using NodeId = int;
using Edge = std::pair<NodeId, NodeId>;

inline constexpr int kMaxNodes = 2048;

/// Simple, undirected, connected graph with 0-based contiguous node ids.
///
/// Construction validates every invariant; a `Graph` that exists is always
/// valid. Edges are stored canonically as (min, max) pairs in lexicographic
/// order, so two graphs built from permuted edge lists compare equal.
class Graph {
public:
    /// Throws `Error` with SelfLoop, DuplicateEdge, Disconnected,
    /// NodeOutOfRange, EmptyGraph or TooLarge.
    Graph(int num_nodes, std::span<const Edge> edges);

    int num_nodes() const noexcept { return n_; }
    int num_edges() const noexcept { return static_cast<int>(edges_.size()); }
    int degree(NodeId v) const { return static_cast<int>(adj_[v].size()); }
    int min_degree() const noexcept { return min_degree_; }
    int max_degree() const noexcept { return max_degree_; }

    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::vector<NodeId>& neighbors(NodeId v) const { return adj_[v]; }
    std::vector<int> degrees() const;

    bool has_edge(NodeId u, NodeId v) const;

    /// All unordered non-adjacent pairs (v < u) in lexicographic order.
    std::vector<Edge> non_edges() const;

    /// Copy with extra edges appended; revalidates.
    Graph with_edges(std::span<const Edge> extra) const;

    Matrix adjacency_matrix() const;

    bool operator==(const Graph& other) const noexcept {
        return n_ == other.n_ && edges_ == other.edges_;
    }

private:
    int n_ = 0;
    int min_degree_ = 0;
    int max_degree_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<NodeId>> adj_;
};

Graph build_graph(int num_nodes, std::span<const Edge> edges);

enum class ShiftKind { Adjacency, RandomWalk, Symmetric };

const char* shift_kind_name(ShiftKind kind) noexcept;
ShiftKind parse_shift_kind(const std::string& name);

enum class TransferKind { Ring, CrossedRing, CliquePath };

const char* transfer_kind_name(TransferKind kind) noexcept;
TransferKind parse_transfer_kind(const std::string& name);

struct TransferTopology {
    TransferKind kind;
    int r;
    NodeId source;
    NodeId target;
};

struct TransferGraph {
    Graph graph;
    TransferTopology topology;
};

/// Cycle on 2r nodes with source 0 and target r. Requires r >= 2.
TransferGraph make_ring(int r);

/// Ring of 2r nodes plus ladder crosses between the two arms: the arm node at
/// distance j from the source is joined to the opposite-arm nodes at distances
/// j-1 and j+1 (source and target excluded). Requires r >= 3.
TransferGraph make_crossed_ring(int r);

/// (r-1)-clique holding the source (node 0); clique node 1 is attached to the
/// head of an (r-1)-node path whose far end is the target. Requires r >= 3.
TransferGraph make_clique_path(int r);

TransferGraph make_transfer(TransferKind kind, int r);

/// Dense graph shift operator: A, D^-1 A or D^-1/2 A D^-1/2.
Matrix shift_operator(const Graph& graph, ShiftKind kind);

/// S = c_r I + c_a A_hat.
struct MessagePassingMatrix {
    ShiftKind base;
    double c_r;
    double c_a;
    Matrix S;
};

MessagePassingMatrix message_passing_matrix(const Graph& graph, ShiftKind kind,
                                            double c_r, double c_a);

/// (S^m)_{vu} by repeated dense matrix-vector products.
double matrix_power_entry(const Matrix& S, int m, NodeId v, NodeId u);

/// S^m by repeated dense multiplication (S^0 = I).
Matrix matrix_power(const Matrix& S, int m);

/// Number of walks from v to u of length at most `max_len` in the unnormalized
/// adjacency: sum_{i=0..max_len} (A^i)_{vu}. Throws Overflow past 2^64.
std::uint64_t walk_count(const Graph& graph, NodeId v, NodeId u, int max_len);

/// Unweighted BFS distances from v.
std::vector<int> bfs_distances(const Graph& graph, NodeId v);

/// Number of distinct shortest paths from v to every node.
std::vector<std::uint64_t> shortest_path_counts(const Graph& graph, NodeId v);

int diameter(const Graph& graph);

bool is_bipartite(const Graph& graph);

}  // namespace oversquash
