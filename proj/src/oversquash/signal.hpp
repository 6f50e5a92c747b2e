#pragma once

#include <cstdint>
#include <vector>

#include "oversquash/graph.hpp"
#include "oversquash/sensitivity.hpp"

namespace oversquash {

struct SignalReport {
    NodeId source = 0;
    double h_odot = 0.0;  // in [0, 1]
    int max_distance = 0;
    bool zero_mass = false;  // every output channel vanished; h_odot is 0
};

/// Mass-weighted mean normalized distance of an output: each channel is
/// normalized by its total absolute mass over all nodes, channels without mass
/// contribute nothing, and the sum is divided by p * max_u d(v,u).
SignalReport propagation_distance(const Graph& graph, NodeId source, const Matrix& output);

/// Runs `model` from a unit-L1-mass input at `source` (1/p per channel, zeros
/// elsewhere) and measures how far the output mass travelled.
SignalReport signal_propagation(const Graph& graph, const MpnnModel& model, NodeId source);

struct SignalRow {
    int graph = 0;
    int num_nodes = 0;
    double resistance_estimate = 0.0;  // (n / |S|) sum_{s in S} sum_u Res(s,u) / 2
    double resistance_exact = 0.0;
    double mean_h_odot = 0.0;  // over the sampled sources and the models
    int zero_mass = 0;  // (source, model) runs whose output vanished
};

struct SignalExperiment {
    std::vector<SignalRow> rows;
    double spearman = 0.0;  // between resistance_estimate and mean_h_odot
};

inline constexpr int kMinSignalGraphs = 20;

/// `models` randomly initialized models (from `config` and `seed`) shared by
/// every graph; per graph, `samples` distinct nodes are drawn uniformly and
/// serve as both the resistance sample and the signal sources. A single
/// initialization is noisy enough to flip the sign of the correlation, so
/// h_odot is averaged over the models. Throws InsufficientGraphs below 20
/// graphs.
SignalExperiment resistance_signal_experiment(const std::vector<Graph>& graphs,
                                              const MpnnConfig& config, int samples,
                                              std::uint64_t seed, int models = 8);

/// Random connected graphs with n uniform in [lo, hi] and between 0 and n
/// extra edges.
std::vector<Graph> random_graph_suite(int count, int lo, int hi, std::uint64_t seed);

}  // namespace oversquash
