#include "oversquash/rewiring.hpp"

#include <algorithm>
#include <set>

#include "oversquash/error.hpp"
#include "oversquash/random.hpp"
#include "oversquash/spectral.hpp"

namespace oversquash {

namespace {

constexpr double kTieTol = 1e-12;

Edge canonical(Edge e) { return e.first < e.second ? e : Edge{e.second, e.first}; }

void check_budget(int budget) {
    require(budget >= 1, ErrorCode::InvalidArgument, "budget must be at least 1");
}

}  // namespace

const char* rewiring_strategy_name(RewiringStrategy s) noexcept {
    switch (s) {
        case RewiringStrategy::SpatialThreshold: return "spatial_threshold";
        case RewiringStrategy::SpatialDiameter: return "spatial_diameter";
        case RewiringStrategy::SpectralGapGreedy: return "spectral_gap";
        case RewiringStrategy::ResistanceGreedy: return "resistance";
    }
    return "unknown";
}

RewiringStrategy parse_rewiring_strategy(const std::string& name) {
    if (name == "spatial_threshold") return RewiringStrategy::SpatialThreshold;
    if (name == "spatial_diameter") return RewiringStrategy::SpatialDiameter;
    if (name == "spectral_gap") return RewiringStrategy::SpectralGapGreedy;
    if (name == "resistance") return RewiringStrategy::ResistanceGreedy;
    fail(ErrorCode::InvalidArgument, "unknown rewiring strategy '" + name + "'");
}

const char* spectral_objective_name(SpectralObjective o) noexcept {
    switch (o) {
        case SpectralObjective::MaxGap: return "max_gap";
        case SpectralObjective::MinTotalResistance: return "min_total_resistance";
    }
    return "unknown";
}

SpectralObjective parse_spectral_objective(const std::string& name) {
    if (name == "max_gap") return SpectralObjective::MaxGap;
    if (name == "min_total_resistance") return SpectralObjective::MinTotalResistance;
    fail(ErrorCode::InvalidArgument, "unknown spectral objective '" + name + "'");
}

ConnectivitySnapshot connectivity_snapshot(const Graph& graph) {
    ConnectivitySnapshot s;
    s.diameter = diameter(graph);
    if (graph.num_nodes() < 2) return s;
    const auto d = spectral_decomposition(graph);
    const auto m = topology_metrics(graph, d, false);
    s.spectral_gap = m.spectral_gap;
    s.cheeger_lower = m.cheeger_lower;
    s.cheeger_upper = m.cheeger_upper;
    s.total_resistance = m.total_resistance;
    s.max_commute_time = m.max_commute_time;
    return s;
}

RewireResult rewire(const Graph& graph, const RewiringPlan& plan) {
    require(plan.budget >= 0, ErrorCode::InvalidArgument, "budget must be non-negative");
    if (static_cast<int>(plan.added_edges.size()) > plan.budget) {
        fail(ErrorCode::BudgetExceeded, "plan adds " + std::to_string(plan.added_edges.size()) +
                                            " edges with budget " + std::to_string(plan.budget));
    }
    const int n = graph.num_nodes();
    std::set<Edge> seen;
    for (Edge e : plan.added_edges) {
        e = canonical(e);
        require(e.first >= 0 && e.second < n, ErrorCode::NodeOutOfRange, "edge endpoint out of range");
        require(e.first != e.second, ErrorCode::SelfLoop, "self-loop in rewiring plan");
        if (graph.has_edge(e.first, e.second) || !seen.insert(e).second) {
            fail(ErrorCode::EdgeAlreadyPresent, "edge (" + std::to_string(e.first) + "," +
                                                    std::to_string(e.second) + ") already present");
        }
    }

    RewiringReport report;
    report.before = connectivity_snapshot(graph);
    Graph current = graph;
    double res = report.before.total_resistance;
    for (const Edge& e : plan.added_edges) {
        const Edge one[] = {canonical(e)};
        current = current.with_edges(one);
        const double next = total_resistance(spectral_decomposition(current));
        report.delta_total_resistance.push_back(next - res);
        report.added_edges.push_back(one[0]);
        res = next;
    }
    report.after = connectivity_snapshot(current);
    return {std::move(current), std::move(report)};
}

RewiringPlan spatial_rewire(const Graph& graph, int budget, SpatialMode mode,
                            std::optional<double> threshold) {
    check_budget(budget);
    RewiringPlan plan;
    plan.strategy = mode == SpatialMode::Resistance ? RewiringStrategy::SpatialThreshold
                                                    : RewiringStrategy::SpatialDiameter;
    plan.budget = budget;
    plan.threshold = threshold;

    Graph current = graph;
    const int n = graph.num_nodes();
    while (static_cast<int>(plan.added_edges.size()) < budget) {
        Matrix score;
        if (mode == SpatialMode::Resistance) {
            score = resistance_matrix(spectral_decomposition(current));
        } else {
            score.resize(n, n);
            for (NodeId v = 0; v < n; ++v) {
                const auto dist = bfs_distances(current, v);
                for (NodeId u = 0; u < n; ++u) score(v, u) = dist[u];
            }
        }
        // Row-major scan with a strict improvement margin keeps the
        // lexicographically smallest pair among ties.
        double best = -1.0;
        Edge pick{-1, -1};
        for (NodeId v = 0; v < n; ++v) {
            for (NodeId u = v + 1; u < n; ++u) {
                if (current.has_edge(v, u)) continue;
                if (score(v, u) > best + kTieTol) {
                    best = score(v, u);
                    pick = {v, u};
                }
            }
        }
        if (pick.first < 0) break;  // complete graph
        if (threshold && best <= *threshold) break;
        plan.added_edges.push_back(pick);
        const Edge one[] = {pick};
        current = current.with_edges(one);
    }
    return plan;
}

RewiringPlan spectral_rewire(const Graph& graph, int budget, SpectralObjective objective,
                             std::uint64_t seed) {
    check_budget(budget);
    RewiringPlan plan;
    plan.strategy = objective == SpectralObjective::MaxGap ? RewiringStrategy::SpectralGapGreedy
                                                           : RewiringStrategy::ResistanceGreedy;
    plan.budget = budget;

    Graph current = graph;
    double current_gap = current.num_nodes() >= 2 ? spectral_decomposition(current).spectral_gap() : 0.0;
    for (int step = 0; step < budget; ++step) {
        std::vector<Edge> candidates = current.non_edges();
        if (candidates.empty()) break;
        if (current.num_nodes() > kFullCandidateMaxNodes &&
            static_cast<int>(candidates.size()) > kSampledCandidates) {
            std::vector<Edge> sample;
            Rng rng(derive_seed(seed, static_cast<std::uint64_t>(step)));
            std::sample(candidates.begin(), candidates.end(), std::back_inserter(sample),
                        kSampledCandidates, rng);
            candidates = std::move(sample);  // std::sample keeps the input order
        }

        bool have = false;
        double best = 0.0;
        Edge pick{-1, -1};
        for (const Edge& e : candidates) {
            const Edge one[] = {e};
            const auto d = spectral_decomposition(current.with_edges(one));
            // maximize the objective value; resistance is negated
            const double value = objective == SpectralObjective::MaxGap ? d.spectral_gap()
                                                                        : -total_resistance(d);
            if (!have || value > best + kTieTol) {
                have = true;
                best = value;
                pick = e;
            }
        }
        if (objective == SpectralObjective::MaxGap) {
            if (best < current_gap - kTieTol) break;
            current_gap = best;
        }
        plan.added_edges.push_back(pick);
        const Edge one[] = {pick};
        current = current.with_edges(one);
    }
    return plan;
}

}  // namespace oversquash
