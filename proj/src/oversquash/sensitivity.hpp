#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oversquash/graph.hpp"

namespace oversquash {

enum class Nonlinearity { ReLU, Tanh, Identity };

const char* nonlinearity_name(Nonlinearity sigma) noexcept;
Nonlinearity parse_nonlinearity(const std::string& name);

struct MpnnConfig {
    int width = 4;
    int depth = 3;
    double c_r = 1.0;
    double c_a = 1.0;
    ShiftKind shift = ShiftKind::Symmetric;
    Nonlinearity sigma = Nonlinearity::ReLU;
    double weight_scale = 0.5;  // entries drawn uniform in [-scale, scale]
};

// Weights of one layer; the layer maps a row feature h to
// sigma(c_r h W_r^T + c_a (A_hat H)_v W_a^T).
struct LayerWeights {
    Matrix w_r;
    Matrix w_a;
};

/// Immutable MPNN of the form h_v' = sigma(c_r W_r h_v + c_a W_a sum_u A_vu h_u).
/// Regularity constants are derived on construction.
class MpnnModel {
public:
    /// Throws ShapeMismatch unless every matrix is width x width and there are
    /// `depth` layers; NegativeCoefficient for c_r or c_a < 0.
    MpnnModel(MpnnConfig config, std::vector<LayerWeights> layers);

    static MpnnModel random(const MpnnConfig& config, std::uint64_t seed);

    const MpnnConfig& config() const noexcept { return config_; }
    const std::vector<LayerWeights>& layers() const noexcept { return layers_; }
    int width() const noexcept { return config_.width; }
    int depth() const noexcept { return config_.depth; }

    double c_sigma() const noexcept { return 1.0; }  // ReLU, Tanh and Identity are 1-Lipschitz
    double w() const noexcept { return w_; }         // max |entry| over all weights
    double mu() const noexcept { return mu_; }       // max spectral norm
    double nu() const noexcept { return nu_; }       // min singular value

    /// Every weight matrix rescaled to spectral norm `target`.
    MpnnModel rescaled_to_spectral_norm(double target) const;

    /// The first `depth` layers.
    MpnnModel truncated(int depth) const;

private:
    MpnnConfig config_;
    std::vector<LayerWeights> layers_;
    double w_ = 0.0;
    double mu_ = 0.0;
    double nu_ = 0.0;
};

struct FeatureState {
    std::vector<Matrix> h;  // h[t] = H^{(t)}, t = 0..depth
    std::vector<Matrix> z;  // z[t] = pre-activation of layer t, z[0] unused
};

/// Forward pass with the model's own shift operator on `graph`.
FeatureState mpnn_forward(const MpnnModel& model, const Graph& graph, const Matrix& h0);

/// Forward pass with an explicit dense shift. Throws ShapeMismatch.
FeatureState mpnn_forward(const MpnnModel& model, const Matrix& shift, const Matrix& h0);

/// Pre-activation magnitude below which ReLU is considered at a kink.
inline constexpr double kKinkThreshold = 1e-7;

/// min |z| over layers k+1..m (infinity for smooth sigma).
double min_abs_preactivation(const MpnnModel& model, const FeatureState& state, int k, int m);

/// d h_v^{(m)} / d h_u^{(k)} as a p x p matrix (row alpha, column beta).
struct JacobianBlock {
    NodeId v = 0;
    NodeId u = 0;
    int k = 0;
    int m = 0;
    Matrix J;
    bool near_kink = false;

    double entrywise_l1() const { return J.cwiseAbs().sum(); }
    /// Induced l1 operator norm (max absolute column sum).
    double induced_l1() const { return J.cwiseAbs().colwise().sum().maxCoeff(); }
    /// Induced l-infinity operator norm (max absolute row sum).
    double induced_linf() const { return J.cwiseAbs().rowwise().sum().maxCoeff(); }
};

/// Exact chain-rule Jacobian by forward-mode propagation of the p unit
/// perturbations of h_u^{(k)} through layers k+1..m. Requires 0 <= k <= m <= depth.
JacobianBlock jacobian_exact(const MpnnModel& model, const Matrix& shift, const Matrix& h0,
                             NodeId v, NodeId u, int k, int m);

/// Central differences on h_u^{(k)} with the given step.
JacobianBlock jacobian_fd_oracle(const MpnnModel& model, const Matrix& shift, const Matrix& h0,
                                 NodeId v, NodeId u, int k, int m, double step = 1e-6);

/// (c_sigma w p)^{m-k} (S^{m-k})_{vu}. Bounds the induced l1 and l-infinity
/// norms of d h_v^{(m)} / d h_u^{(k)}.
double bound_sensitivity(const MpnnModel& model, const Matrix& S, int m, NodeId v, NodeId u,
                         int k = 0);

/// p c_up^m ((c_rs I + c_mp A)^m)_{vu}. With row-sum Lipschitz constants this
/// bounds the entrywise l1 norm of the p x p block.
double bound_general(double c_up, double c_rs, double c_mp, const Matrix& shift, int m,
                     NodeId v, NodeId u, int p);

struct RegularityConstants {
    double c_up;  // Lipschitz constant of sigma
    double c_rs;  // c_r * max over layers of the max absolute row sum of W_r
    double c_mp;  // c_a * max over layers of the max absolute row sum of W_a
};

RegularityConstants regularity_constants(const MpnnModel& model);

struct DistantBound {
    double value;    // gamma_{r+k} C_k (2 c_sigma w p c_a / d_min)^r
    double c_k;      // (c_sigma (c_r + c_a) w p (k+1))^k
    std::uint64_t walks;  // gamma_{r+k}(v,u)
};

/// Bound on d h_v^{(r+k)} / d h_u^{(0)} for nodes at distance exactly r and
/// 0 <= k < r extra layers. Needs the symmetric shift and c_a <= 1.
/// Throws DistanceMismatch or ModePreconditionViolated.
DistantBound bound_distant(const MpnnModel& model, const Graph& graph, NodeId v, NodeId u,
                           int r, int k);

/// C q^{m-k} (1 + q^m) with q = c_sigma mu (c_r + c_a).
double bound_vanishing(const MpnnModel& model, int k, int m, double constant);

/// A constant that makes bound_vanishing valid for the quadratic loss:
/// n^2 p max(|H0|_F, |Y|_F) c_theta, where c_theta bounds |d h^{(k)} / d theta|.
double vanishing_constant(int num_nodes, int width, double h0_norm, double y_norm,
                          double c_theta);

struct VanishingPoint {
    int m;
    double grad_norm;  // Frobenius norm of dL/d(W_r, W_a) at layer k
    double envelope;   // q^{m-k} (1 + q^m)
};

struct VanishingSweep {
    double q = 0.0;  // c_sigma mu (c_r + c_a)
    double log_slope = 0.0;          // least-squares slope of log grad_norm against m
    double measured_constant = 0.0;  // max over m of grad_norm / envelope
    std::vector<VanishingPoint> points;
};

/// Gradient of the quadratic loss w.r.t. the layer-k weights for each depth in
/// `depths`, using the first m layers of `stack`. Needs at least two depths.
VanishingSweep vanishing_sweep(const MpnnModel& stack, const Matrix& shift, const Matrix& h0,
                               const Matrix& targets, int k, const std::vector<int>& depths);

/// Quadratic loss 1/2 sum over masked nodes of |h_v^{(m)} - y_v|^2 and its
/// exact gradients by reverse accumulation.
struct LossGradients {
    double loss = 0.0;
    std::vector<LayerWeights> grads;  // same shapes as the model layers
    Matrix d_input;                   // dL / dH^{(0)}
};

/// `mask` selects the nodes that enter the loss; empty means all nodes.
LossGradients loss_and_gradients(const MpnnModel& model, const Matrix& shift, const Matrix& h0,
                                 const Matrix& targets, const std::vector<char>& mask = {});

enum class WeightKind { Residual, Aggregate };

/// dL / d (W^{(layer)})_{row,col}, layer in 1..depth.
double loss_gradient(const MpnnModel& model, const Matrix& shift, const Matrix& h0,
                     const Matrix& targets, int layer, WeightKind which, int row, int col);

}  // namespace oversquash
