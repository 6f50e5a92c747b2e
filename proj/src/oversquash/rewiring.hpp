#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "oversquash/graph.hpp"

namespace oversquash {

enum class RewiringStrategy { SpatialThreshold, SpatialDiameter, SpectralGapGreedy, ResistanceGreedy };

const char* rewiring_strategy_name(RewiringStrategy s) noexcept;
RewiringStrategy parse_rewiring_strategy(const std::string& name);

struct RewiringPlan {
    RewiringStrategy strategy = RewiringStrategy::SpatialThreshold;
    int budget = 0;
    std::optional<double> threshold;
    std::vector<Edge> added_edges;  // in insertion order
};

struct ConnectivitySnapshot {
    int diameter = 0;
    double spectral_gap = 0.0;
    double cheeger_lower = 0.0;
    double cheeger_upper = 0.0;
    double total_resistance = 0.0;
    double max_commute_time = 0.0;
};

ConnectivitySnapshot connectivity_snapshot(const Graph& graph);

struct RewiringReport {
    ConnectivitySnapshot before;
    ConnectivitySnapshot after;
    std::vector<Edge> added_edges;
    std::vector<double> delta_total_resistance;  // per added edge, in order; all negative
};

struct RewireResult {
    Graph graph;
    RewiringReport report;
};

/// Applies the plan's edges in order. Throws BudgetExceeded when the plan
/// holds more edges than its budget and EdgeAlreadyPresent for an edge of the
/// input graph or a repeat within the plan.
RewireResult rewire(const Graph& graph, const RewiringPlan& plan);

enum class SpatialMode { Resistance, Diameter };

/// Repeatedly joins the non-adjacent pair with the largest effective
/// resistance (or distance) until the budget is spent, no non-edge is left, or
/// the worst value is at most `threshold`. Ties go to the smallest (v,u).
RewiringPlan spatial_rewire(const Graph& graph, int budget, SpatialMode mode,
                            std::optional<double> threshold = std::nullopt);

enum class SpectralObjective { MaxGap, MinTotalResistance };

const char* spectral_objective_name(SpectralObjective o) noexcept;
SpectralObjective parse_spectral_objective(const std::string& name);

// Above this many nodes the candidate set is a seeded sample of non-edges.
inline constexpr int kFullCandidateMaxNodes = 256;
inline constexpr int kSampledCandidates = 256;

/// Greedy single-edge additions, each chosen by recomputing the spectrum of
/// every candidate-augmented graph. MaxGap stops early once no candidate keeps
/// lambda_1 from decreasing.
RewiringPlan spectral_rewire(const Graph& graph, int budget, SpectralObjective objective,
                             std::uint64_t seed = 0);

}  // namespace oversquash
