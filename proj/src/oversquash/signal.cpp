#include "oversquash/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oversquash/error.hpp"
#include "oversquash/random.hpp"
#include "oversquash/spectral.hpp"
#include "oversquash/stats.hpp"

namespace oversquash {

SignalReport propagation_distance(const Graph& graph, NodeId source, const Matrix& output) {
    const int n = graph.num_nodes();
    require(source >= 0 && source < n, ErrorCode::NodeOutOfRange, "source out of range");
    require(output.rows() == n && output.cols() >= 1, ErrorCode::ShapeMismatch,
            "output must have one row per node");
    const auto dist = bfs_distances(graph, source);
    SignalReport rep;
    rep.source = source;
    rep.max_distance = *std::max_element(dist.begin(), dist.end());
    if (rep.max_distance == 0) {
        rep.zero_mass = output.cwiseAbs().sum() == 0.0;
        return rep;  // single node: nothing to travel to
    }
    const int p = static_cast<int>(output.cols());
    double total = 0.0;
    bool any = false;
    for (int f = 0; f < p; ++f) {
        const double mass = output.col(f).cwiseAbs().sum();
        if (mass == 0.0) continue;
        any = true;
        for (NodeId u = 0; u < n; ++u) total += std::abs(output(u, f)) / mass * dist[u];
    }
    rep.zero_mass = !any;
    rep.h_odot = total / (static_cast<double>(p) * rep.max_distance);
    return rep;
}

SignalReport signal_propagation(const Graph& graph, const MpnnModel& model, NodeId source) {
    const int n = graph.num_nodes();
    require(source >= 0 && source < n, ErrorCode::NodeOutOfRange, "source out of range");
    const int p = model.width();
    Matrix h0 = Matrix::Zero(n, p);
    h0.row(source).setConstant(1.0 / p);
    const auto state = mpnn_forward(model, graph, h0);
    return propagation_distance(graph, source, state.h.back());
}

SignalExperiment resistance_signal_experiment(const std::vector<Graph>& graphs,
                                              const MpnnConfig& config, int samples,
                                              std::uint64_t seed, int models) {
    if (static_cast<int>(graphs.size()) < kMinSignalGraphs) {
        fail(ErrorCode::InsufficientGraphs, "signal experiment needs at least " +
                                                std::to_string(kMinSignalGraphs) + " graphs, got " +
                                                std::to_string(graphs.size()));
    }
    require(samples >= 1, ErrorCode::InvalidArgument, "samples must be positive");
    require(models >= 1, ErrorCode::InvalidArgument, "models must be positive");
    std::vector<MpnnModel> nets;
    for (int k = 0; k < models; ++k) {
        // ~k keeps model streams apart from the per-graph streams (seed, i + 1)
        nets.push_back(MpnnModel::random(config, derive_seed(seed, ~static_cast<std::uint64_t>(k))));
    }

    SignalExperiment out;
    std::vector<double> res, hod;
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        const Graph& g = graphs[i];
        const int n = g.num_nodes();
        require(n >= 2, ErrorCode::InvalidArgument, "signal graphs need at least two nodes");
        std::vector<NodeId> nodes(n), pick;
        std::iota(nodes.begin(), nodes.end(), 0);
        Rng rng(derive_seed(seed, i + 1));
        std::sample(nodes.begin(), nodes.end(), std::back_inserter(pick), samples, rng);

        const auto d = spectral_decomposition(g);
        const Matrix r = resistance_matrix(d);
        SignalRow row;
        row.graph = static_cast<int>(i);
        row.num_nodes = n;
        row.resistance_exact = total_resistance(d);
        double sum_res = 0.0, sum_h = 0.0;
        for (NodeId s : pick) {
            sum_res += r.row(s).sum();
            for (const auto& net : nets) {
                const auto rep = signal_propagation(g, net, s);
                sum_h += rep.h_odot / models;
                row.zero_mass += rep.zero_mass ? 1 : 0;
            }
        }
        const double k = static_cast<double>(pick.size());
        row.resistance_estimate = static_cast<double>(n) / k * sum_res / 2.0;
        row.mean_h_odot = sum_h / k;
        res.push_back(row.resistance_estimate);
        hod.push_back(row.mean_h_odot);
        out.rows.push_back(row);
    }
    out.spearman = spearman(res, hod);
    return out;
}

std::vector<Graph> random_graph_suite(int count, int lo, int hi, std::uint64_t seed) {
    require(count >= 1 && lo >= 2 && hi >= lo, ErrorCode::InvalidArgument,
            "need count >= 1 and 2 <= lo <= hi");
    Rng rng(seed);
    std::uniform_int_distribution<int> pick_n(lo, hi);
    std::vector<Graph> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        const int n = pick_n(rng);
        std::uniform_int_distribution<int> pick_extra(0, n);
        const int extra = pick_extra(rng);
        out.push_back(random_connected_graph(n, extra, rng));
    }
    return out;
}

}  // namespace oversquash
