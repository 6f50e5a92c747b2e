#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "oversquash/error.hpp"
#include "oversquash/graph.hpp"
#include "oversquash/graph_io.hpp"
#include "oversquash/random.hpp"

using namespace oversquash;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an oversquash::Error");
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("build_graph validates its input") {
    std::vector<Edge> k2{{0, 1}};
    Graph g(2, k2);
    CHECK(g.num_edges() == 1);
    CHECK(g.degrees() == std::vector<int>{1, 1});

    std::vector<Edge> tri{{0, 1}, {1, 2}, {2, 0}};
    CHECK(Graph(3, tri).degrees() == std::vector<int>{2, 2, 2});

    CHECK(code_of([] { std::vector<Edge> e{{0, 1}}; Graph(3, e); }) == ErrorCode::Disconnected);
    CHECK(code_of([] { std::vector<Edge> e{{0, 0}, {0, 1}}; Graph(2, e); }) == ErrorCode::SelfLoop);
    CHECK(code_of([] { std::vector<Edge> e{{0, 1}, {1, 0}}; Graph(2, e); }) ==
          ErrorCode::DuplicateEdge);
    CHECK(code_of([] { std::vector<Edge> e{{0, 5}}; Graph(2, e); }) == ErrorCode::NodeOutOfRange);
    CHECK(code_of([] { std::vector<Edge> e; Graph(1, e); }) == ErrorCode::EmptyGraph);
}

TEST_CASE("errors name the offending element") {
    try {
        std::vector<Edge> e{{0, 1}, {1, 2}, {2, 1}};
        Graph(3, e);
        FAIL("no throw");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("(1,2)") != std::string::npos);
    }
    try {
        std::vector<Edge> e{{0, 1}};
        Graph(3, e);
        FAIL("no throw");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("node 2") != std::string::npos);
    }
}

TEST_CASE("edge order does not matter for equality") {
    std::vector<Edge> a{{0, 1}, {1, 2}, {2, 3}};
    std::vector<Edge> b{{3, 2}, {1, 0}, {2, 1}};
    CHECK(Graph(4, a) == Graph(4, b));
}

TEST_CASE("ring closed form for the normalized shift") {
    for (int r = 2; r <= 12; ++r) {
        auto t = make_ring(r);
        CHECK(t.graph.num_nodes() == 2 * r);
        CHECK(bfs_distances(t.graph, t.topology.source)[t.topology.target] == r);
        const Matrix a = shift_operator(t.graph, ShiftKind::Symmetric);
        const double got = matrix_power_entry(a, r, t.topology.source, t.topology.target);
        CHECK(std::abs(got - std::pow(2.0, -(r - 1))) < 1e-12);
    }
    CHECK(make_ring(5).graph.num_nodes() == 10);
    CHECK(code_of([] { make_ring(1); }) == ErrorCode::InvalidDistance);
}

TEST_CASE("crossed ring and clique path keep distance r") {
    for (int r = 3; r <= 9; ++r) {
        for (auto kind : {TransferKind::Ring, TransferKind::CrossedRing, TransferKind::CliquePath}) {
            auto t = make_transfer(kind, r);
            CHECK(bfs_distances(t.graph, t.topology.source)[t.topology.target] == r);
        }
        auto cp = make_clique_path(r);
        CHECK(cp.graph.degree(cp.topology.target) == 1);
        CHECK(shortest_path_counts(cp.graph, cp.topology.source)[cp.topology.target] == 1);
    }
    CHECK(code_of([] { make_crossed_ring(2); }) == ErrorCode::InvalidDistance);
    CHECK(code_of([] { make_clique_path(2); }) == ErrorCode::InvalidDistance);
}

TEST_CASE("transfer matrix powers match walk enumeration") {
    for (int r = 3; r <= 7; ++r) {
        for (auto kind : {TransferKind::CrossedRing, TransferKind::CliquePath}) {
            auto t = make_transfer(kind, r);
            const Matrix a = shift_operator(t.graph, ShiftKind::Symmetric);
            const double got = matrix_power_entry(a, r, t.topology.source, t.topology.target);
            const double want = oracle::walk_sum(a, r, t.topology.source, t.topology.target);
            CHECK(std::abs(got - want) < 1e-12);
        }
    }
}

TEST_CASE("shift operators") {
    std::vector<Edge> k2e{{0, 1}};
    Graph k2(2, k2e);
    CHECK(shift_operator(k2, ShiftKind::Symmetric).isApprox(Matrix{{0, 1}, {1, 0}}));

    const Graph c4 = cycle_graph(4);
    const Matrix s = shift_operator(c4, ShiftKind::Symmetric);
    CHECK(s(0, 1) == doctest::Approx(0.5));
    CHECK(s(0, 2) == 0.0);

    const Matrix rw = shift_operator(complete_graph(3), ShiftKind::RandomWalk);
    for (int v = 0; v < 3; ++v) CHECK(rw.row(v).sum() == doctest::Approx(1.0));

    const auto mp = message_passing_matrix(k2, ShiftKind::Symmetric, 1.0, 1.0);
    CHECK(mp.S.isApprox(Matrix::Ones(2, 2)));
    CHECK(message_passing_matrix(k2, ShiftKind::Symmetric, 1.0, 0.0).S.isApprox(Matrix::Identity(2, 2)));
    CHECK(code_of([&] { message_passing_matrix(k2, ShiftKind::Symmetric, -1.0, 1.0); }) ==
          ErrorCode::NegativeCoefficient);
}

TEST_CASE("property: shift support equals the edge set") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const Graph g = oracle::random_graph(rng, 2, 10);
        for (auto kind : {ShiftKind::Adjacency, ShiftKind::RandomWalk, ShiftKind::Symmetric}) {
            const Matrix s = shift_operator(g, kind);
            for (int v = 0; v < g.num_nodes(); ++v) {
                for (int u = 0; u < g.num_nodes(); ++u) {
                    CHECK((s(v, u) != 0.0) == g.has_edge(v, u));
                }
            }
        }
        const Matrix sym = shift_operator(g, ShiftKind::Symmetric);
        CHECK((sym - sym.transpose()).cwiseAbs().maxCoeff() == 0.0);
        Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
        CHECK(es.eigenvalues().minCoeff() >= -1.0 - 1e-12);
        CHECK(es.eigenvalues().maxCoeff() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("property: matrix powers equal weighted-walk sums") {
    Rng rng(7);
    std::uniform_real_distribution<double> coef(0.0, 1.5);
    std::uniform_int_distribution<int> pick_m(0, 6);
    for (int trial = 0; trial < 40; ++trial) {
        const Graph g = oracle::random_graph(rng, 2, 8);
        const auto kind = static_cast<ShiftKind>(trial % 3);
        const auto mp = message_passing_matrix(g, kind, coef(rng), coef(rng));
        const int m = pick_m(rng);
        std::uniform_int_distribution<int> node(0, g.num_nodes() - 1);
        const int v = node(rng), u = node(rng);
        const double got = matrix_power_entry(mp.S, m, v, u);
        const double want = oracle::walk_sum(mp.S, m, v, u);
        CHECK(std::abs(got - want) <= 1e-12 * std::max(1.0, std::abs(want)));
        CHECK(std::abs(matrix_power(mp.S, m)(v, u) - want) <= 1e-12 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("walk counts") {
    const Graph p3 = path_graph(3);
    CHECK(walk_count(p3, 0, 2, 2) == 1);
    const Graph tri = complete_graph(3);
    CHECK(walk_count(tri, 0, 1, 2) == 2);
    CHECK(walk_count(tri, 0, 0, 0) == 1);
    CHECK(walk_count(tri, 0, 1, 0) == 0);

    Rng rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        const Graph g = oracle::random_graph(rng, 2, 8);
        std::uniform_int_distribution<int> node(0, g.num_nodes() - 1);
        const int v = node(rng), u = node(rng);
        std::uint64_t prev = 0;
        for (int len = 0; len <= 6; ++len) {
            const auto w = walk_count(g, v, u, len);
            std::uint64_t want = 0;
            for (int i = 0; i <= len; ++i) want += oracle::walks_exact(g, i, v, u);
            CHECK(w == want);
            CHECK(w >= prev);
            CHECK(w == walk_count(g, u, v, len));
            prev = w;
        }
    }
    CHECK(code_of([] { walk_count(complete_graph(40), 0, 1, 40); }) == ErrorCode::Overflow);
}

TEST_CASE("distances, diameter, bipartiteness") {
    const auto ring = make_ring(5);
    const auto d = bfs_distances(ring.graph, 0);
    CHECK(*std::max_element(d.begin(), d.end()) == 5);
    for (int v = 1; v < 4; ++v) CHECK(bfs_distances(complete_graph(4), 0)[v] == 1);
    CHECK(diameter(path_graph(8)) == 7);
    CHECK(is_bipartite(cycle_graph(6)));
    CHECK_FALSE(is_bipartite(cycle_graph(5)));
}

TEST_CASE("edge-list and JSON round trips") {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const Graph g = oracle::random_graph(rng, 2, 12);
        CHECK(parse_graph(to_edge_list(g)) == g);
        CHECK(parse_graph(to_graph_json(g)) == g);
    }
    CHECK(parse_edge_list("0 1\n\n1 2\n").num_nodes() == 3);
    CHECK(code_of([] { parse_edge_list("0 1\n# late header\n"); }) == ErrorCode::Parse);
    CHECK(code_of([] { parse_edge_list("0 x\n"); }) == ErrorCode::Parse);
    CHECK(code_of([] { parse_graph_json("{\"num_nodes\": 2}"); }) == ErrorCode::Parse);
    CHECK(code_of([] { parse_graph_json("{oops"); }) == ErrorCode::Parse);
}

TEST_CASE("random generators are reproducible") {
    Rng a(42), b(42);
    CHECK(random_connected_graph(12, 5, a) == random_connected_graph(12, 5, b));
    Rng c(9);
    for (int i = 0; i < 30; ++i) CHECK_FALSE(is_bipartite(random_nonbipartite_graph(8, 1, c)));
}
