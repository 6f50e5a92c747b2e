#include "oversquash/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oversquash/error.hpp"
#include "oversquash/random.hpp"

namespace oversquash {

namespace {

using Params = std::vector<Matrix>;

Params zeros_like(const Params& other) {
    Params out;
    for (const auto& x : other) out.push_back(Matrix::Zero(x.rows(), x.cols()));
    return out;
}

}  // namespace

// Samples are stacked row-wise, one block of n rows each; the shift acts on
// every block separately.
struct TransferNetwork::Cache {
    std::vector<Matrix> h;    // h[0] = encoded input, h[t] after layer t
    std::vector<Matrix> z;    // z[t] pre-activation of layer t
    std::vector<Matrix> agg;  // agg[t] = blockdiag(A_hat) h[t-1]
    Matrix at_source;         // G x hidden rows of h[depth] at the source
};

namespace {

Matrix block_apply(const Matrix& shift, const Matrix& h) {
    const Eigen::Index n = shift.rows();
    Matrix out(h.rows(), h.cols());
    for (Eigen::Index b = 0; b < h.rows(); b += n) {
        out.middleRows(b, n).noalias() = shift * h.middleRows(b, n);
    }
    return out;
}

Matrix block_apply_transpose(const Matrix& shift, const Matrix& h) {
    const Eigen::Index n = shift.rows();
    Matrix out(h.rows(), h.cols());
    for (Eigen::Index b = 0; b < h.rows(); b += n) {
        out.middleRows(b, n).noalias() = shift.transpose() * h.middleRows(b, n);
    }
    return out;
}

}  // namespace

TransferNetwork::TransferNetwork(int p, int hidden, int depth, std::uint64_t seed)
    : depth_(depth) {
    require(p >= 1 && hidden >= 1 && depth >= 1, ErrorCode::InvalidArgument,
            "network dimensions must be positive");
    Rng rng(seed);
    auto glorot = [&](int rows, int cols) {
        const double lim = std::sqrt(6.0 / (rows + cols));
        std::uniform_real_distribution<double> u(-lim, lim);
        return Matrix(Matrix::NullaryExpr(rows, cols, [&] { return u(rng); }));
    };
    params_.push_back(glorot(hidden, p));
    params_.push_back(Matrix::Zero(hidden, 1));
    for (int t = 0; t < depth; ++t) {
        params_.push_back(glorot(hidden, hidden));
        params_.push_back(glorot(hidden, hidden));
        params_.push_back(Matrix::Zero(hidden, 1));
    }
    params_.push_back(glorot(p, hidden));
    params_.push_back(Matrix::Zero(p, 1));
}

Vector TransferNetwork::predict(const Matrix& shift, const Matrix& x, NodeId source) const {
    Cache c;
    return forward(shift, x, source, c).row(0).transpose();
}

double TransferNetwork::accumulate_gradients(const Matrix& shift, const Matrix& x, NodeId source,
                                             int label, double weight,
                                             std::vector<Matrix>& grads) const {
    const std::vector<int> labels{label};
    const std::vector<double> weights{weight};
    return accumulate_batch(shift, x, source, labels, weights, grads)[0];
}

std::vector<double> TransferNetwork::accumulate_batch(const Matrix& shift, const Matrix& x,
                                                      NodeId source, const std::vector<int>& labels,
                                                      const std::vector<double>& weights,
                                                      std::vector<Matrix>& grads) const {
    require(grads.size() == params_.size(), ErrorCode::ShapeMismatch,
            "gradient buffers do not match the parameters");
    const Eigen::Index n = shift.rows();
    const auto count = static_cast<Eigen::Index>(labels.size());
    require(weights.size() == labels.size() && x.rows() == count * n, ErrorCode::ShapeMismatch,
            "one label and weight per stacked sample");
    Cache c;
    const Matrix out = forward(shift, x, source, c);  // count x p
    Matrix d_out = out;
    std::vector<double> losses(labels.size());
    for (Eigen::Index g = 0; g < count; ++g) {
        d_out(g, labels[g]) -= 1.0;
        losses[g] = 0.5 * d_out.row(g).squaredNorm();
        d_out.row(g) *= weights[g];
    }

    const std::size_t dec = params_.size() - 2;
    grads[dec].noalias() += d_out.transpose() * c.at_source;
    grads[dec + 1] += d_out.colwise().sum().transpose();

    Matrix dh = Matrix::Zero(c.h.back().rows(), c.h.back().cols());
    const Matrix d_src = d_out * params_[dec];
    for (Eigen::Index g = 0; g < count; ++g) dh.row(g * n + source) = d_src.row(g);
    for (int t = depth_; t >= 1; --t) {
        const std::size_t base = 2 + 3 * static_cast<std::size_t>(t - 1);
        const Matrix dz = dh.cwiseProduct((c.z[t].array() > 0.0).cast<double>().matrix());
        grads[base].noalias() += dz.transpose() * c.h[t - 1];
        grads[base + 1].noalias() += dz.transpose() * c.agg[t];
        grads[base + 2] += dz.colwise().sum().transpose();
        dh = dz * params_[base] + block_apply_transpose(shift, dz * params_[base + 1]);
    }
    grads[0].noalias() += dh.transpose() * x;
    grads[1] += dh.colwise().sum().transpose();
    return losses;
}

Matrix TransferNetwork::forward(const Matrix& shift, const Matrix& x, NodeId source,
                                Cache& c) const {
    const Eigen::Index n = shift.rows();
    require(shift.cols() == n && n > 0 && x.rows() % n == 0 && x.cols() == params_[0].cols(),
            ErrorCode::ShapeMismatch, "input shape does not match the network");
    require(source >= 0 && source < n, ErrorCode::NodeOutOfRange, "source out of range");
    c.h.assign(1, (x * params_[0].transpose()).rowwise() + params_[1].col(0).transpose());
    c.z.assign(1, Matrix());
    c.agg.assign(1, Matrix());
    for (int t = 1; t <= depth_; ++t) {
        const std::size_t base = 2 + 3 * static_cast<std::size_t>(t - 1);
        const Matrix& h = c.h.back();
        Matrix agg = block_apply(shift, h);
        Matrix z = h * params_[base].transpose();
        z.noalias() += agg * params_[base + 1].transpose();
        z.rowwise() += params_[base + 2].col(0).transpose();
        c.h.push_back(z.cwiseMax(0.0));
        c.z.push_back(std::move(z));
        c.agg.push_back(std::move(agg));
    }
    const Eigen::Index count = x.rows() / n;
    c.at_source.resize(count, c.h.back().cols());
    for (Eigen::Index g = 0; g < count; ++g) c.at_source.row(g) = c.h.back().row(g * n + source);
    const std::size_t dec = params_.size() - 2;
    Matrix out = c.at_source * params_[dec].transpose();
    out.rowwise() += params_[dec + 1].col(0).transpose();
    return out;
}

namespace {

struct Adam {
    double lr;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    long step = 0;
    Params m1, m2;

    Adam(double lr_, const Params& like) : lr(lr_), m1(zeros_like(like)), m2(m1) {}

    void update(Params& p, const Params& g) {
        ++step;
        const double c1 = 1.0 - std::pow(beta1, static_cast<double>(step));
        const double c2 = 1.0 - std::pow(beta2, static_cast<double>(step));
        for (std::size_t i = 0; i < p.size(); ++i) {
            m1[i] = beta1 * m1[i] + (1.0 - beta1) * g[i];
            m2[i] = beta2 * m2[i] + (1.0 - beta2) * g[i].cwiseAbs2();
            p[i].array() -= lr * (m1[i].array() / c1) / ((m2[i].array() / c2).sqrt() + eps);
        }
    }
};

// Samples with identical features and label contribute identical gradients,
// so each batch is evaluated once per distinct sample and weighted by its
// multiplicity. The result equals the per-sample sum up to rounding.
struct Groups {
    std::vector<const TransferSample*> rep;
    std::vector<int> of;  // sample index -> group
};

Groups group_samples(const std::vector<TransferSample>& samples) {
    Groups g;
    g.of.reserve(samples.size());
    for (const auto& s : samples) {
        int found = -1;
        for (std::size_t j = 0; j < g.rep.size(); ++j) {
            if (g.rep[j]->label == s.label && g.rep[j]->features == s.features) {
                found = static_cast<int>(j);
                break;
            }
        }
        if (found < 0) {
            found = static_cast<int>(g.rep.size());
            g.rep.push_back(&s);
        }
        g.of.push_back(found);
    }
    return g;
}

Matrix stack(const std::vector<const Matrix*>& xs) {
    Eigen::Index rows = 0;
    for (const Matrix* x : xs) rows += x->rows();
    Matrix out(rows, xs.front()->cols());
    Eigen::Index at = 0;
    for (const Matrix* x : xs) {
        out.middleRows(at, x->rows()) = *x;
        at += x->rows();
    }
    return out;
}

int argmax(const Vector& v) {
    Eigen::Index i = 0;
    v.maxCoeff(&i);
    return static_cast<int>(i);
}

}  // namespace

TransferDataset generate_transfer(TransferKind kind, int r, int n_train, int n_test, int p,
                                  std::uint64_t seed) {
    require(r >= 3, ErrorCode::InvalidDistance, "transfer tasks need r >= 3");
    require(p >= 2, ErrorCode::InvalidArgument, "feature dimension p must be at least 2");
    require(n_train >= 1 && n_test >= 1, ErrorCode::InvalidArgument,
            "train and test splits must be non-empty");
    TransferDataset data{make_transfer(kind, r), p, seed, {}, {}};
    const int n = data.topology.graph.num_nodes();
    const NodeId src = data.topology.topology.source;
    const NodeId tgt = data.topology.topology.target;

    Rng rng(seed);
    std::uniform_int_distribution<int> pick(0, p - 1);
    auto make = [&](int count, std::vector<TransferSample>& out) {
        out.reserve(count);
        for (int i = 0; i < count; ++i) {
            TransferSample s;
            s.label = pick(rng);
            s.features = Matrix::Ones(n, p);
            s.features.row(src).setZero();
            s.features.row(tgt).setZero();
            s.features(tgt, s.label) = 1.0;
            out.push_back(std::move(s));
        }
    };
    make(n_train, data.train);
    make(n_test, data.test);
    return data;
}

const char* transfer_model_name(TransferModel m) noexcept {
    switch (m) {
        case TransferModel::GCN: return "gcn";
        case TransferModel::SAGE: return "sage";
        case TransferModel::GIN: return "gin";
    }
    return "unknown";
}

TransferModel parse_transfer_model(const std::string& name) {
    if (name == "gcn" || name == "GCN") return TransferModel::GCN;
    if (name == "sage" || name == "SAGE") return TransferModel::SAGE;
    if (name == "gin" || name == "GIN") return TransferModel::GIN;
    fail(ErrorCode::InvalidArgument, "unknown model '" + name + "'");
}

ShiftKind transfer_model_shift(TransferModel m) noexcept {
    switch (m) {
        case TransferModel::GCN: return ShiftKind::Symmetric;
        case TransferModel::SAGE: return ShiftKind::RandomWalk;
        case TransferModel::GIN: return ShiftKind::Adjacency;
    }
    return ShiftKind::Symmetric;
}

TrainOutcome train_transfer(const TransferDataset& data, const TrainConfig& config) {
    require(config.epochs >= 0, ErrorCode::InvalidArgument, "epochs must be non-negative");
    require(config.hidden >= 1, ErrorCode::InvalidArgument, "hidden must be positive");
    require(config.lr > 0.0, ErrorCode::InvalidArgument, "learning rate must be positive");
    require(config.batch_size >= 0, ErrorCode::InvalidArgument, "batch size must be non-negative");
    require(!data.train.empty() && !data.test.empty(), ErrorCode::InvalidArgument,
            "dataset splits must be non-empty");

    const auto& topo = data.topology.topology;
    const Matrix shift = shift_operator(data.topology.graph, transfer_model_shift(config.model));
    const NodeId src = topo.source;

    TrainOutcome out;
    out.model = config.model;
    out.task = topo.kind;
    out.r = topo.r;
    out.hidden = config.hidden;
    out.seed = config.seed;

    TransferNetwork net(data.p, config.hidden, topo.r, derive_seed(config.seed, 1));
    Adam opt(config.lr, net.params());
    Rng shuffle_rng(derive_seed(config.seed, 2));

    const Groups train = group_samples(data.train);
    const Groups test = group_samples(data.test);
    const int n_train = static_cast<int>(data.train.size());
    const int batch = config.batch_size == 0 ? n_train : std::min(config.batch_size, n_train);

    auto full_loss = [&] {
        std::vector<int> counts(train.rep.size(), 0);
        for (int g : train.of) ++counts[g];
        double loss = 0.0;
        for (std::size_t g = 0; g < train.rep.size(); ++g) {
            Vector diff = net.predict(shift, train.rep[g]->features, src);
            diff(train.rep[g]->label) -= 1.0;
            loss += counts[g] * 0.5 * diff.squaredNorm();
        }
        return loss / n_train;
    };

    std::vector<int> order(n_train);
    std::iota(order.begin(), order.end(), 0);
    std::vector<int> counts(train.rep.size());
    for (int epoch = 0; epoch < config.epochs && !out.diverged; ++epoch) {
        if (batch < n_train) std::shuffle(order.begin(), order.end(), shuffle_rng);
        for (int start = 0; start < n_train; start += batch) {
            const int stop = std::min(start + batch, n_train);
            std::fill(counts.begin(), counts.end(), 0);
            for (int i = start; i < stop; ++i) ++counts[train.of[order[i]]];
            Params grads = zeros_like(net.params());
            std::vector<int> labels;
            std::vector<double> weights;
            std::vector<const Matrix*> xs;
            for (std::size_t g = 0; g < counts.size(); ++g) {
                if (counts[g] == 0) continue;
                labels.push_back(train.rep[g]->label);
                weights.push_back(static_cast<double>(counts[g]) / (stop - start));
                xs.push_back(&train.rep[g]->features);
            }
            const auto losses =
                net.accumulate_batch(shift, stack(xs), src, labels, weights, grads);
            double loss = 0.0;
            for (std::size_t i = 0; i < losses.size(); ++i) loss += weights[i] * losses[i];
            if (!std::isfinite(loss)) {
                out.diverged = true;
                break;
            }
            opt.update(net.params(), grads);
        }
        const double loss = full_loss();
        out.epoch_loss.push_back(loss);
        if (!std::isfinite(loss)) out.diverged = true;
    }

    if (!out.diverged) {
        std::vector<int> tcounts(test.rep.size(), 0);
        for (int g : test.of) ++tcounts[g];
        int correct = 0;
        for (std::size_t g = 0; g < test.rep.size(); ++g) {
            const Vector pred = net.predict(shift, test.rep[g]->features, src);
            if (pred.allFinite() && argmax(pred) == test.rep[g]->label) correct += tcounts[g];
        }
        out.test_accuracy = static_cast<double>(correct) / static_cast<double>(data.test.size());
    }
    return out;
}

}  // namespace oversquash
