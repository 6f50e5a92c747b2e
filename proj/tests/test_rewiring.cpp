#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "oversquash/error.hpp"
#include "oversquash/obstruction.hpp"
#include "oversquash/random.hpp"
#include "oversquash/rewiring.hpp"
#include "oversquash/spectral.hpp"

using namespace oversquash;

namespace {

// Sum of Res over pairs from the grounded-Laplacian oracle.
double total_resistance_oracle(const Graph& g) {
    double s = 0.0;
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
        for (NodeId u = v + 1; u < g.num_nodes(); ++u) s += resistance_pinv_oracle(g, v, u);
    }
    return s;
}

double gap_oracle(const Graph& g) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(normalized_laplacian(g), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(1);
}

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::Parse;
}

}  // namespace

TEST_CASE("rewire applies plans and validates them") {
    const Graph c8 = cycle_graph(8);
    RewiringPlan empty;
    const auto same = rewire(c8, empty);
    CHECK(same.graph == c8);
    CHECK(same.report.added_edges.empty());
    CHECK(same.report.before.total_resistance == same.report.after.total_resistance);
    CHECK(same.report.before.diameter == same.report.after.diameter);

    RewiringPlan chord;
    chord.budget = 1;
    chord.added_edges = {{4, 0}};
    const auto out = rewire(c8, chord);
    // One antipodal chord leaves (2,6) at distance 4, so only the
    // eccentricity of the chord's endpoints drops.
    CHECK(out.report.before.diameter == 4);
    CHECK(out.report.after.diameter == 4);
    const auto ecc = bfs_distances(out.graph, 0);
    CHECK(*std::max_element(ecc.begin(), ecc.end()) == 2);
    RewiringPlan two = chord;
    two.budget = 2;
    two.added_edges.push_back({2, 6});
    CHECK(rewire(c8, two).report.after.diameter < 4);
    CHECK(out.graph.has_edge(0, 4));
    REQUIRE(out.report.delta_total_resistance.size() == 1);
    CHECK(out.report.delta_total_resistance[0] < 0.0);
    CHECK(out.report.after.total_resistance ==
          doctest::Approx(total_resistance_oracle(out.graph)).epsilon(1e-10));

    RewiringPlan bad = chord;
    bad.added_edges = {{0, 1}};
    CHECK(code_of([&] { rewire(c8, bad); }) == ErrorCode::EdgeAlreadyPresent);
    bad.added_edges = {{0, 4}, {4, 0}};
    bad.budget = 2;
    CHECK(code_of([&] { rewire(c8, bad); }) == ErrorCode::EdgeAlreadyPresent);
    bad.added_edges = {{0, 4}, {1, 5}};
    bad.budget = 1;
    CHECK(code_of([&] { rewire(c8, bad); }) == ErrorCode::BudgetExceeded);
    bad.added_edges = {{0, 9}};
    CHECK(code_of([&] { rewire(c8, bad); }) == ErrorCode::NodeOutOfRange);
}

TEST_CASE("every single-edge addition strictly lowers total resistance") {
    Rng rng(404);
    int additions = 0;
    for (int trial = 0; trial < 30; ++trial) {
        const Graph g = oracle::random_graph(rng, 3, 9);
        const double before = total_resistance_oracle(g);
        for (const Edge& e : g.non_edges()) {
            const Edge one[] = {e};
            const double after = total_resistance_oracle(g.with_edges(one));
            CHECK(after < before - 1e-12);
            ++additions;
        }
    }
    CHECK(additions > 100);
}

TEST_CASE("spatial rewiring") {
    const auto p8 = spatial_rewire(path_graph(8), 1, SpatialMode::Resistance);
    REQUIRE(p8.added_edges.size() == 1);
    CHECK(p8.added_edges[0] == Edge{0, 7});

    CHECK(spatial_rewire(complete_graph(6), 3, SpatialMode::Resistance).added_edges.empty());
    CHECK(spatial_rewire(complete_graph(6), 3, SpatialMode::Diameter).added_edges.empty());

    const Graph c10 = cycle_graph(10);
    const auto plan = spatial_rewire(c10, 3, SpatialMode::Resistance);
    CHECK(plan.added_edges.size() == 3);
    const auto out = rewire(c10, plan);
    CHECK(out.report.after.max_commute_time < out.report.before.max_commute_time);
    for (double d : out.report.delta_total_resistance) CHECK(d < 0.0);

    // ties on C10: every antipodal pair has distance 5, so (0,5) comes first
    const auto dplan = spatial_rewire(c10, 1, SpatialMode::Diameter);
    CHECK(dplan.added_edges[0] == Edge{0, 5});

    // a target diameter stops the loop as soon as it is reached
    const auto stop = spatial_rewire(path_graph(6), 10, SpatialMode::Diameter, 2.0);
    CHECK(diameter(rewire(path_graph(6), stop).graph) <= 2);
    CHECK(static_cast<int>(stop.added_edges.size()) < 10);

    const auto thr = spatial_rewire(path_graph(8), 5, SpatialMode::Resistance, 100.0);
    CHECK(thr.added_edges.empty());

    CHECK(code_of([&] { spatial_rewire(c10, 0, SpatialMode::Diameter); }) ==
          ErrorCode::InvalidArgument);
}

TEST_CASE("max-gap greedy on the barbell joins the two cliques") {
    const Graph bb = barbell_graph(4);
    // exhaustive sweep with an independent eigensolver
    double best = -1.0;
    Edge want{-1, -1};
    for (const Edge& e : bb.non_edges()) {
        const Edge one[] = {e};
        const double gap = gap_oracle(bb.with_edges(one));
        if (gap > best + 1e-12) {
            best = gap;
            want = e;
        }
    }
    const auto plan = spectral_rewire(bb, 1, SpectralObjective::MaxGap);
    REQUIRE(plan.added_edges.size() == 1);
    CHECK(plan.added_edges[0] == want);
    CHECK(plan.added_edges[0].first < 4);
    CHECK(plan.added_edges[0].second >= 4);
}

TEST_CASE("spectral greedy: monotone gap and obstruction bound") {
    Rng rng(99);
    ObstructionConfig oc;
    for (int trial = 0; trial < 15; ++trial) {
        const Graph g = oracle::random_graph(rng, 5, 10);
        const auto plan = spectral_rewire(g, 3, SpectralObjective::MaxGap, 7);
        Graph cur = g;
        double gap = gap_oracle(cur);
        double bound = cheeger_obstruction_bound(oc, cur, spectral_decomposition(cur)).lambda_form;
        for (const Edge& e : plan.added_edges) {
            const Edge one[] = {e};
            cur = cur.with_edges(one);
            const double next = gap_oracle(cur);
            CHECK(next >= gap - 1e-12);
            const double nb =
                cheeger_obstruction_bound(oc, cur, spectral_decomposition(cur)).lambda_form;
            CHECK(nb <= bound + 1e-12);
            gap = next;
            bound = nb;
        }

        const auto rplan = spectral_rewire(g, 2, SpectralObjective::MinTotalResistance, 7);
        const auto out = rewire(g, rplan);
        if (!g.non_edges().empty()) {
            CHECK(out.report.after.total_resistance < out.report.before.total_resistance);
        }
        // greedy choice matches an exhaustive sweep for the first edge
        if (!rplan.added_edges.empty()) {
            double best = 1e300;
            Edge want{-1, -1};
            for (const Edge& e : g.non_edges()) {
                const Edge one[] = {e};
                const double r = total_resistance_oracle(g.with_edges(one));
                if (r < best - 1e-9) {
                    best = r;
                    want = e;
                }
            }
            CHECK(rplan.added_edges[0] == want);
        }
    }
}

TEST_CASE("budget past the non-edge count completes the graph; plans are deterministic") {
    const Graph g = path_graph(5);
    const auto plan = spectral_rewire(g, 20, SpectralObjective::MinTotalResistance);
    CHECK(plan.added_edges.size() == g.non_edges().size());
    RewiringPlan applied = plan;
    const auto out = rewire(g, applied);
    CHECK(out.graph == complete_graph(5));

    const auto a = spectral_rewire(cycle_graph(9), 3, SpectralObjective::MaxGap, 1);
    const auto b = spectral_rewire(cycle_graph(9), 3, SpectralObjective::MaxGap, 1);
    CHECK(a.added_edges == b.added_edges);
}
