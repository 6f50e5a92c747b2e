#include "oversquash/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/SVD>

#include "oversquash/error.hpp"
#include "oversquash/random.hpp"

namespace oversquash {

namespace {

Matrix activate(Nonlinearity sigma, const Matrix& z) {
    switch (sigma) {
        case Nonlinearity::ReLU: return z.cwiseMax(0.0);
        case Nonlinearity::Tanh: return z.array().tanh().matrix();
        case Nonlinearity::Identity: return z;
    }
    return z;
}

// sigma'(z); the ReLU derivative at 0 is 0.
Matrix activate_derivative(Nonlinearity sigma, const Matrix& z) {
    switch (sigma) {
        case Nonlinearity::ReLU: return (z.array() > 0.0).cast<double>().matrix();
        case Nonlinearity::Tanh: {
            const Eigen::ArrayXXd t = z.array().tanh();
            return (1.0 - t * t).matrix();
        }
        case Nonlinearity::Identity: return Matrix::Ones(z.rows(), z.cols());
    }
    return Matrix::Ones(z.rows(), z.cols());
}

Matrix layer_preactivation(const MpnnConfig& cfg, const LayerWeights& lw, const Matrix& shift,
                           const Matrix& h) {
    return cfg.c_r * h * lw.w_r.transpose() + cfg.c_a * (shift * h) * lw.w_a.transpose();
}

void check_inputs(const MpnnModel& model, const Matrix& shift, const Matrix& h0) {
    require(shift.rows() == shift.cols(), ErrorCode::ShapeMismatch, "shift must be square");
    require(h0.rows() == shift.rows() && h0.cols() == model.width(), ErrorCode::ShapeMismatch,
            "H0 must be " + std::to_string(shift.rows()) + "x" + std::to_string(model.width()) +
                ", got " + std::to_string(h0.rows()) + "x" + std::to_string(h0.cols()));
}

void check_layers(const MpnnModel& model, int n, NodeId v, NodeId u, int k, int m) {
    require(0 <= k && k <= m && m <= model.depth(), ErrorCode::InvalidArgument,
            "need 0 <= k <= m <= depth (k=" + std::to_string(k) + ", m=" + std::to_string(m) +
                ", depth=" + std::to_string(model.depth()) + ")");
    require(v >= 0 && v < n && u >= 0 && u < n, ErrorCode::NodeOutOfRange,
            "node index out of range");
}

double max_row_abs_sum(const Matrix& w) { return w.cwiseAbs().rowwise().sum().maxCoeff(); }

}  // namespace

const char* nonlinearity_name(Nonlinearity sigma) noexcept {
    switch (sigma) {
        case Nonlinearity::ReLU: return "relu";
        case Nonlinearity::Tanh: return "tanh";
        case Nonlinearity::Identity: return "identity";
    }
    return "unknown";
}

Nonlinearity parse_nonlinearity(const std::string& name) {
    if (name == "relu") return Nonlinearity::ReLU;
    if (name == "tanh") return Nonlinearity::Tanh;
    if (name == "identity" || name == "linear") return Nonlinearity::Identity;
    fail(ErrorCode::InvalidArgument, "unknown nonlinearity '" + name + "'");
}

MpnnModel::MpnnModel(MpnnConfig config, std::vector<LayerWeights> layers)
    : config_(config), layers_(std::move(layers)) {
    require(config_.width >= 1, ErrorCode::InvalidArgument, "width must be >= 1");
    require(config_.depth >= 1, ErrorCode::InvalidArgument, "depth must be >= 1");
    require(config_.c_r >= 0.0 && config_.c_a >= 0.0, ErrorCode::NegativeCoefficient,
            "c_r and c_a must be non-negative");
    require(static_cast<int>(layers_.size()) == config_.depth, ErrorCode::ShapeMismatch,
            "expected " + std::to_string(config_.depth) + " layers, got " +
                std::to_string(layers_.size()));
    const int p = config_.width;
    mu_ = 0.0;
    nu_ = std::numeric_limits<double>::infinity();
    w_ = 0.0;
    for (const auto& lw : layers_) {
        for (const Matrix* m : {&lw.w_r, &lw.w_a}) {
            require(m->rows() == p && m->cols() == p, ErrorCode::ShapeMismatch,
                    "weight matrices must be " + std::to_string(p) + "x" + std::to_string(p));
            Eigen::JacobiSVD<Matrix> svd(*m);
            const auto& s = svd.singularValues();
            mu_ = std::max(mu_, s(0));
            nu_ = std::min(nu_, s(s.size() - 1));
            w_ = std::max(w_, m->cwiseAbs().maxCoeff());
        }
    }
}

MpnnModel MpnnModel::random(const MpnnConfig& config, std::uint64_t seed) {
    require(config.width >= 1 && config.depth >= 1, ErrorCode::InvalidArgument,
            "width and depth must be >= 1");
    require(config.weight_scale >= 0.0, ErrorCode::InvalidArgument,
            "weight_scale must be non-negative");
    Rng rng(seed);
    std::uniform_real_distribution<double> dist(-config.weight_scale, config.weight_scale);
    auto draw = [&] {
        Matrix m(config.width, config.width);
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = dist(rng);
        }
        return m;
    };
    std::vector<LayerWeights> layers;
    for (int t = 0; t < config.depth; ++t) {
        Matrix w_r = draw();
        Matrix w_a = draw();
        layers.push_back({std::move(w_r), std::move(w_a)});
    }
    return MpnnModel(config, std::move(layers));
}

MpnnModel MpnnModel::rescaled_to_spectral_norm(double target) const {
    require(target > 0.0, ErrorCode::InvalidArgument, "target spectral norm must be positive");
    std::vector<LayerWeights> scaled = layers_;
    for (auto& lw : scaled) {
        for (Matrix* m : {&lw.w_r, &lw.w_a}) {
            Eigen::JacobiSVD<Matrix> svd(*m);
            const double s = svd.singularValues()(0);
            require(s > 0.0, ErrorCode::SingularSystem, "cannot rescale a zero matrix");
            *m *= target / s;
        }
    }
    return MpnnModel(config_, std::move(scaled));
}

MpnnModel MpnnModel::truncated(int depth) const {
    require(depth >= 1 && depth <= config_.depth, ErrorCode::InvalidArgument,
            "truncation depth out of range");
    MpnnConfig cfg = config_;
    cfg.depth = depth;
    return MpnnModel(cfg, std::vector<LayerWeights>(layers_.begin(), layers_.begin() + depth));
}

FeatureState mpnn_forward(const MpnnModel& model, const Graph& graph, const Matrix& h0) {
    return mpnn_forward(model, shift_operator(graph, model.config().shift), h0);
}

FeatureState mpnn_forward(const MpnnModel& model, const Matrix& shift, const Matrix& h0) {
    check_inputs(model, shift, h0);
    const auto& cfg = model.config();
    FeatureState st;
    st.h.reserve(cfg.depth + 1);
    st.z.reserve(cfg.depth + 1);
    st.h.push_back(h0);
    st.z.emplace_back();
    for (int t = 1; t <= cfg.depth; ++t) {
        st.z.push_back(layer_preactivation(cfg, model.layers()[t - 1], shift, st.h[t - 1]));
        st.h.push_back(activate(cfg.sigma, st.z[t]));
    }
    return st;
}

double min_abs_preactivation(const MpnnModel& model, const FeatureState& state, int k, int m) {
    if (model.config().sigma != Nonlinearity::ReLU) return std::numeric_limits<double>::infinity();
    double best = std::numeric_limits<double>::infinity();
    for (int t = k + 1; t <= m; ++t) best = std::min(best, state.z[t].cwiseAbs().minCoeff());
    return best;
}

JacobianBlock jacobian_exact(const MpnnModel& model, const Matrix& shift, const Matrix& h0,
                             NodeId v, NodeId u, int k, int m) {
    check_inputs(model, shift, h0);
    const int n = static_cast<int>(shift.rows());
    check_layers(model, n, v, u, k, m);
    const auto& cfg = model.config();
    const int p = cfg.width;
    const FeatureState st = mpnn_forward(model, shift, h0);

    std::vector<Matrix> deriv(m + 1);
    for (int t = k + 1; t <= m; ++t) deriv[t] = activate_derivative(cfg.sigma, st.z[t]);

    JacobianBlock out{v, u, k, m, Matrix::Zero(p, p), false};
    out.near_kink = min_abs_preactivation(model, st, k, m) < kKinkThreshold;
    for (int beta = 0; beta < p; ++beta) {
        Matrix dh = Matrix::Zero(n, p);
        dh(u, beta) = 1.0;
        for (int t = k + 1; t <= m; ++t) {
            dh = deriv[t].cwiseProduct(layer_preactivation(cfg, model.layers()[t - 1], shift, dh));
        }
        out.J.col(beta) = dh.row(v).transpose();
    }
    return out;
}

JacobianBlock jacobian_fd_oracle(const MpnnModel& model, const Matrix& shift, const Matrix& h0,
                                 NodeId v, NodeId u, int k, int m, double step) {
    check_inputs(model, shift, h0);
    const int n = static_cast<int>(shift.rows());
    check_layers(model, n, v, u, k, m);
    require(step > 0.0, ErrorCode::InvalidArgument, "finite-difference step must be positive");
    const auto& cfg = model.config();
    const int p = cfg.width;
    const FeatureState st = mpnn_forward(model, shift, h0);

    auto run = [&](const Matrix& hk) {
        Matrix h = hk;
        for (int t = k + 1; t <= m; ++t) {
            h = activate(cfg.sigma, layer_preactivation(cfg, model.layers()[t - 1], shift, h));
        }
        return Vector(h.row(v).transpose());
    };

    JacobianBlock out{v, u, k, m, Matrix::Zero(p, p), false};
    out.near_kink = min_abs_preactivation(model, st, k, m) < kKinkThreshold;
    for (int beta = 0; beta < p; ++beta) {
        Matrix plus = st.h[k];
        Matrix minus = st.h[k];
        plus(u, beta) += step;
        minus(u, beta) -= step;
        out.J.col(beta) = (run(plus) - run(minus)) / (2.0 * step);
    }
    return out;
}

double bound_sensitivity(const MpnnModel& model, const Matrix& S, int m, NodeId v, NodeId u,
                         int k) {
    require(0 <= k && k <= m, ErrorCode::InvalidArgument, "need 0 <= k <= m");
    const double factor = model.c_sigma() * model.w() * model.width();
    return std::pow(factor, m - k) * matrix_power_entry(S, m - k, v, u);
}

double bound_general(double c_up, double c_rs, double c_mp, const Matrix& shift, int m,
                     NodeId v, NodeId u, int p) {
    require(c_up >= 0.0 && c_rs >= 0.0 && c_mp >= 0.0, ErrorCode::NegativeCoefficient,
            "regularity constants must be non-negative");
    require(p >= 1, ErrorCode::InvalidArgument, "width must be >= 1");
    Matrix s = c_mp * shift;
    s.diagonal().array() += c_rs;
    return p * std::pow(c_up, m) * matrix_power_entry(s, m, v, u);
}

RegularityConstants regularity_constants(const MpnnModel& model) {
    double rs = 0.0, mp = 0.0;
    for (const auto& lw : model.layers()) {
        rs = std::max(rs, max_row_abs_sum(lw.w_r));
        mp = std::max(mp, max_row_abs_sum(lw.w_a));
    }
    return {model.c_sigma(), model.config().c_r * rs, model.config().c_a * mp};
}

DistantBound bound_distant(const MpnnModel& model, const Graph& graph, NodeId v, NodeId u,
                           int r, int k) {
    const auto& cfg = model.config();
    require(cfg.shift == ShiftKind::Symmetric, ErrorCode::ModePreconditionViolated,
            "the distant-node bound needs the symmetric shift");
    require(cfg.c_a <= 1.0, ErrorCode::ModePreconditionViolated,
            "the distant-node bound needs c_a <= 1");
    require(0 <= k && k < r, ErrorCode::InvalidArgument, "need 0 <= k < r");
    const auto dist = bfs_distances(graph, v);
    require(u >= 0 && u < graph.num_nodes(), ErrorCode::NodeOutOfRange, "node index out of range");
    require(dist[u] == r, ErrorCode::DistanceMismatch,
            "d(v,u) = " + std::to_string(dist[u]) + " but r = " + std::to_string(r));
    const double wp = model.c_sigma() * model.w() * model.width();
    DistantBound out;
    out.walks = walk_count(graph, v, u, r + k);
    out.c_k = std::pow((cfg.c_r + cfg.c_a) * wp * (k + 1), k);
    out.value = static_cast<double>(out.walks) * out.c_k *
                std::pow(2.0 * wp * cfg.c_a / graph.min_degree(), r);
    return out;
}

double bound_vanishing(const MpnnModel& model, int k, int m, double constant) {
    require(0 <= k && k <= m, ErrorCode::InvalidArgument, "need 0 <= k <= m");
    const auto& cfg = model.config();
    const double q = model.c_sigma() * model.mu() * (cfg.c_r + cfg.c_a);
    return constant * std::pow(q, m - k) * (1.0 + std::pow(q, m));
}

double vanishing_constant(int num_nodes, int width, double h0_norm, double y_norm,
                          double c_theta) {
    return static_cast<double>(num_nodes) * num_nodes * width * std::max(h0_norm, y_norm) *
           c_theta;
}

LossGradients loss_and_gradients(const MpnnModel& model, const Matrix& shift, const Matrix& h0,
                                 const Matrix& targets, const std::vector<char>& mask) {
    check_inputs(model, shift, h0);
    require(targets.rows() == h0.rows() && targets.cols() == model.width(),
            ErrorCode::ShapeMismatch, "targets must match the output shape");
    require(mask.empty() || static_cast<Eigen::Index>(mask.size()) == h0.rows(),
            ErrorCode::ShapeMismatch, "mask length must equal the number of nodes");
    const auto& cfg = model.config();
    const int depth = cfg.depth;
    const FeatureState st = mpnn_forward(model, shift, h0);

    Matrix g = st.h[depth] - targets;
    if (!mask.empty()) {
        for (Eigen::Index v = 0; v < g.rows(); ++v) {
            if (!mask[v]) g.row(v).setZero();
        }
    }
    LossGradients out;
    out.loss = 0.5 * g.squaredNorm();
    out.grads.resize(depth);
    for (int t = depth; t >= 1; --t) {
        const auto& lw = model.layers()[t - 1];
        const Matrix dz = g.cwiseProduct(activate_derivative(cfg.sigma, st.z[t]));
        out.grads[t - 1].w_r = cfg.c_r * dz.transpose() * st.h[t - 1];
        out.grads[t - 1].w_a = cfg.c_a * dz.transpose() * (shift * st.h[t - 1]);
        g = cfg.c_r * dz * lw.w_r + cfg.c_a * shift.transpose() * dz * lw.w_a;
    }
    out.d_input = std::move(g);
    return out;
}

double loss_gradient(const MpnnModel& model, const Matrix& shift, const Matrix& h0,
                     const Matrix& targets, int layer, WeightKind which, int row, int col) {
    require(layer >= 1 && layer <= model.depth(), ErrorCode::InvalidArgument,
            "layer must be in 1..depth");
    require(row >= 0 && row < model.width() && col >= 0 && col < model.width(),
            ErrorCode::InvalidArgument, "weight coordinate out of range");
    const auto grads = loss_and_gradients(model, shift, h0, targets);
    const auto& lw = grads.grads[layer - 1];
    return which == WeightKind::Residual ? lw.w_r(row, col) : lw.w_a(row, col);
}

VanishingSweep vanishing_sweep(const MpnnModel& stack, const Matrix& shift, const Matrix& h0,
                               const Matrix& targets, int k, const std::vector<int>& depths) {
    require(depths.size() >= 2, ErrorCode::InvalidArgument, "need at least two depths");
    require(k >= 1, ErrorCode::InvalidArgument, "layer k must be >= 1");
    const auto& cfg = stack.config();
    VanishingSweep out;
    out.q = stack.c_sigma() * stack.mu() * (cfg.c_r + cfg.c_a);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int m : depths) {
        require(m >= k && m <= stack.depth(), ErrorCode::InvalidArgument,
                "depth " + std::to_string(m) + " outside [k, stack depth]");
        const MpnnModel model = stack.truncated(m);
        const auto grads = loss_and_gradients(model, shift, h0, targets);
        const auto& lw = grads.grads[k - 1];
        const double norm = std::sqrt(lw.w_r.squaredNorm() + lw.w_a.squaredNorm());
        const double env = std::pow(out.q, m - k) * (1.0 + std::pow(out.q, m));
        out.points.push_back({m, norm, env});
        out.measured_constant = std::max(out.measured_constant, norm / env);
        require(norm > 0.0 && std::isfinite(norm), ErrorCode::Overflow,
                "gradient norm is zero or not finite at depth " + std::to_string(m));
        const double y = std::log(norm);
        sx += m;
        sy += y;
        sxx += static_cast<double>(m) * m;
        sxy += m * y;
    }
    const double n = static_cast<double>(depths.size());
    out.log_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return out;
}

}  // namespace oversquash
