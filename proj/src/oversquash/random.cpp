#include "oversquash/random.hpp"

#include <algorithm>
#include <string>

#include "oversquash/error.hpp"

namespace oversquash {

Graph random_connected_graph(int num_nodes, int extra_edges, Rng& rng) {
    require(num_nodes >= 2, ErrorCode::InvalidArgument,
            "random graph needs at least 2 nodes");
    std::vector<int> perm(num_nodes);
    for (int i = 0; i < num_nodes; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);

    std::vector<Edge> edges;
    for (int i = 1; i < num_nodes; ++i) {
        std::uniform_int_distribution<int> pick(0, i - 1);
        edges.emplace_back(perm[i], perm[pick(rng)]);
    }
    Graph tree(num_nodes, edges);
    auto candidates = tree.non_edges();
    std::shuffle(candidates.begin(), candidates.end(), rng);
    const int take = std::min<int>(extra_edges, static_cast<int>(candidates.size()));
    edges.insert(edges.end(), candidates.begin(), candidates.begin() + take);
    return Graph(num_nodes, edges);
}

Graph random_nonbipartite_graph(int num_nodes, int extra_edges, Rng& rng) {
    require(num_nodes >= 3, ErrorCode::InvalidArgument,
            "a non-bipartite graph needs at least 3 nodes");
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Graph g = random_connected_graph(num_nodes, extra_edges, rng);
        if (!is_bipartite(g)) return g;
        // Close an odd cycle: join two nodes at even distance >= 2.
        const auto dist = bfs_distances(g, 0);
        for (auto [a, b] : g.non_edges()) {
            if (dist[a] % 2 == dist[b] % 2) {
                std::vector<Edge> extra{{a, b}};
                return g.with_edges(extra);
            }
        }
    }
    fail(ErrorCode::InvalidArgument, "could not sample a non-bipartite graph");
}

Graph path_graph(int n) {
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return Graph(n, edges);
}

Graph cycle_graph(int n) {
    require(n >= 3, ErrorCode::InvalidArgument, "cycle needs at least 3 nodes");
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return Graph(n, edges);
}

Graph complete_graph(int n) {
    std::vector<Edge> edges;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) edges.emplace_back(a, b);
    }
    return Graph(n, edges);
}

Graph barbell_graph(int k) {
    require(k >= 2, ErrorCode::InvalidArgument, "barbell cliques need k >= 2");
    std::vector<Edge> edges;
    for (int offset : {0, k}) {
        for (int a = 0; a < k; ++a) {
            for (int b = a + 1; b < k; ++b) edges.emplace_back(offset + a, offset + b);
        }
    }
    edges.emplace_back(k - 1, k);
    return Graph(2 * k, edges);
}

}  // namespace oversquash
