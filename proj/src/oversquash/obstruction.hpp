#pragma once

#include <vector>

#include "oversquash/graph.hpp"
#include "oversquash/spectral.hpp"

namespace oversquash {

// Parameters of the expected-Jacobian model: every computation path is active
// with probability rho, and the weight products are controlled by the scalar
// bounds nu^{m-k} (below) and mu^{m-k} (above). Setting nu == mu is the
// scalar-weight mode.
struct ObstructionConfig {
    double rho = 1.0;
    double nu = 1.0;
    double mu = 1.0;
    double c_r = 0.5;
    double c_a = 0.5;
    int depth = 32;
};

enum class ObstructionMode { Access, Commute };

struct ObstructionReport {
    ObstructionMode mode = ObstructionMode::Access;
    NodeId v = 0;
    NodeId u = 0;
    int depth = 0;

    // per_layer[k], k = 0..m, evaluated with nu; per_layer_upper with mu
    // (commute mode only).
    std::vector<double> per_layer;
    std::vector<double> per_layer_upper;
    double total = 0.0;
    double total_upper = 0.0;

    double lower = 0.0;  // envelope lower end
    double upper = 0.0;  // envelope upper end; +inf when the mode has none

    // Access mode: (rho / nu c_a) t(u,v) / 2|E| and the two forms of the
    // remainder (exact spectral tail and its closed-form bound).
    // Commute mode: (rho / nu c_a) Res(v,u), the tail factor x*^{m+1} and eps_G.
    double leading = 0.0;
    double tail_exact = 0.0;
    double tail_bound = 0.0;
    double x_star = 0.0;
    double eps_g = 1.0;
};

/// Throws ModePreconditionViolated unless nu (c_r + c_a) = 1 (relative 1e-12),
/// c_a > 0, 0 < rho <= 1 and nu > 0.
void check_access_mode(const ObstructionConfig& config);

/// Throws ModePreconditionViolated unless mu (c_r + c_a) <= 1, c_r >= c_a,
/// 0 < nu <= mu, c_a > 0 and 0 < rho <= 1.
void check_commute_mode(const ObstructionConfig& config);

/// W^{(m)} ... W^{(k+1)}; the identity when k == m.
Matrix weight_product(const std::vector<Matrix>& weights, int k, int m);

/// rho * weight_product * (S^{m-k})_{vu}.
Matrix expected_jacobian(double rho, const Matrix& weight_product, const Matrix& S, int m, int k,
                         NodeId v, NodeId u);

/// O^{(m)}(v,u) = sum_k rho nu^{m-k} |sum_{l>=1} (c_r + c_a (1 - lambda_l))^{m-k}
/// (psi_l(v)^2 / d_v - psi_l(v) psi_l(u) / sqrt(d_v d_u))| with the lower bound
/// (rho / nu c_a) t(u,v) / 2|E| - rho x*^{m+1} (n-1) / (nu c_a lambda_1 d_min),
/// x* = max_{l>=1} |1 - nu c_a lambda_l|.
ObstructionReport jacobian_obstruction(const ObstructionConfig& config,
                                       const SpectralDecomposition& decomp, NodeId v, NodeId u);

/// Symmetric obstruction with the envelope
/// eps_G (1 - x*^{m+1}) (rho / nu c_a) Res <= O~ <= (rho / mu c_a) Res,
/// x* = nu (c_r + c_a (1 - lambda_1)). Throws BipartiteGraph when
/// lambda_{n-1} >= 2.
ObstructionReport symmetric_obstruction(const ObstructionConfig& config,
                                        const SpectralDecomposition& decomp, NodeId v, NodeId u);

struct CheegerObstructionBound {
    double max_obstruction = 0.0;  // max over pairs of the mu-scaled O~
    double resistance_form = 0.0;  // (rho / mu c_a) max Res
    double lambda_form = 0.0;      // (rho / mu c_a) 2 / lambda_1
    double cheeger_form = 0.0;     // (rho / mu c_a) 4 / h^2
    double printed_form = 0.0;     // 4 / (rho mu c_a h^2)
    double h = 0.0;                // exact h for n <= 16, else lambda_1 / 2
    bool h_exact = false;
};

/// Uniform bound on O~ over all pairs by the chain through Res and lambda_1.
CheegerObstructionBound cheeger_obstruction_bound(const ObstructionConfig& config,
                                                  const Graph& graph,
                                                  const SpectralDecomposition& decomp);

}  // namespace oversquash
