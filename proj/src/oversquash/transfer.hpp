#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oversquash/graph.hpp"

namespace oversquash {

// Every sample of a task shares one topology, so the dataset stores the graph
// once; a sample is its node features and the target's label.
struct TransferSample {
    Matrix features;  // n x p: target one-hot, source zeros, other nodes ones
    int label = 0;
};

struct TransferDataset {
    TransferGraph topology;
    int p = 5;
    std::uint64_t seed = 0;
    std::vector<TransferSample> train;
    std::vector<TransferSample> test;
};

/// Throws InvalidDistance for r < 3 and InvalidArgument for p < 2 or empty
/// splits.
TransferDataset generate_transfer(TransferKind kind, int r, int n_train, int n_test, int p,
                                  std::uint64_t seed);

enum class TransferModel { GCN, SAGE, GIN };

const char* transfer_model_name(TransferModel m) noexcept;
TransferModel parse_transfer_model(const std::string& name);

/// The shift each model family aggregates with: D^-1/2 A D^-1/2, D^-1 A, A.
ShiftKind transfer_model_shift(TransferModel m) noexcept;

/// Linear encoder, `depth` layers h' = relu(H W_r^T + (A_hat H) W_a^T + b) and
/// a linear readout at the source node. Parameters are ordered encoder (W, b),
/// then (W_r, W_a, b) per layer, then readout (W, b); biases are columns.
class TransferNetwork {
public:
    /// Glorot-uniform weights, zero biases.
    TransferNetwork(int p, int hidden, int depth, std::uint64_t seed);

    std::vector<Matrix>& params() noexcept { return params_; }
    const std::vector<Matrix>& params() const noexcept { return params_; }

    Vector predict(const Matrix& shift, const Matrix& x, NodeId source) const;

    /// Adds weight * d(1/2 |out - e_label|^2) / d(params) into `grads` (same
    /// shapes as params) and returns the unweighted loss.
    double accumulate_gradients(const Matrix& shift, const Matrix& x, NodeId source, int label,
                                double weight, std::vector<Matrix>& grads) const;

    /// Same for G samples stacked row-wise in `x` ((G n) x p), each with its
    /// own label and weight; returns the per-sample losses.
    std::vector<double> accumulate_batch(const Matrix& shift, const Matrix& x, NodeId source,
                                         const std::vector<int>& labels,
                                         const std::vector<double>& weights,
                                         std::vector<Matrix>& grads) const;

private:
    struct Cache;
    Matrix forward(const Matrix& shift, const Matrix& x, NodeId source, Cache& c) const;

    int depth_;
    std::vector<Matrix> params_;
};

struct TrainConfig {
    TransferModel model = TransferModel::GCN;
    int epochs = 100;
    int hidden = 64;
    double lr = 1e-3;
    int batch_size = 0;  // 0 means the whole training split
    std::uint64_t seed = 0;
};

struct TrainOutcome {
    TransferModel model = TransferModel::GCN;
    TransferKind task = TransferKind::Ring;
    int r = 0;
    int hidden = 0;
    std::uint64_t seed = 0;
    std::vector<double> epoch_loss;  // training-set loss after each epoch
    double test_accuracy = 0.0;
    bool diverged = false;  // a non-finite loss stopped training early
};

/// Trains a TransferNetwork of depth r with the masked quadratic loss at the
/// source and Adam. Identical samples share one forward/backward pass per
/// batch, weighted by their multiplicity.
TrainOutcome train_transfer(const TransferDataset& data, const TrainConfig& config);

}  // namespace oversquash
