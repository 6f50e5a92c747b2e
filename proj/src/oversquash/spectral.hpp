#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "oversquash/graph.hpp"

namespace oversquash {

/// Eigenpairs of a dense symmetric matrix, eigenvalues ascending and
/// eigenvectors stored as orthonormal columns. Each eigenvector's first
/// component with |x| > 1e-12 is positive.
struct EigenPairs {
    Vector values;
    Matrix vectors;
    int sweeps = 0;
};

struct JacobiOptions {
    double off_diagonal_tol = 1e-12;  // Frobenius norm of the off-diagonal part
    int max_sweeps = 100;
    double symmetry_tol = 1e-12;
};

/// Cyclic Jacobi rotations. Throws NotSymmetric or NoConvergence.
EigenPairs eigendecompose(const Matrix& a, const JacobiOptions& opts = {});

/// I - D^-1/2 A D^-1/2
Matrix normalized_laplacian(const Graph& graph);

/// Spectrum of the normalized Laplacian together with the degree data the
/// resistance and access-time formulas need.
struct SpectralDecomposition {
    Vector eigenvalues;
    Matrix eigenvectors;
    std::vector<int> degrees;
    int num_edges = 0;

    int size() const noexcept { return static_cast<int>(eigenvalues.size()); }
    double spectral_gap() const { return eigenvalues(1); }
    double largest() const { return eigenvalues(eigenvalues.size() - 1); }
    int min_degree() const;
};

SpectralDecomposition spectral_decomposition(const Graph& graph,
                                             const JacobiOptions& opts = {});

/// (lambda_1 / 2, sqrt(2 lambda_1)): lower < h <= upper by the Cheeger
/// inequality 2h >= lambda_1 > h^2 / 2.
std::pair<double, double> cheeger_bounds(double lambda1);

inline constexpr int kCheegerExactMaxNodes = 16;

/// min over non-empty proper U of cut(U) / min(vol U, vol V\U), by exhaustive
/// enumeration. Throws TooLarge for n > 16.
double cheeger_exact(const Graph& graph);

/// Spectral effective resistance:
/// sum_{l>=1} (1/lambda_l) (psi_l(v)/sqrt(d_v) - psi_l(u)/sqrt(d_u))^2.
double effective_resistance(const SpectralDecomposition& decomp, NodeId v, NodeId u);

/// (e_v - e_u)^T L^+ (e_v - e_u) for L = D - A, solved on the system grounded
/// at u. Independent of the eigensolver. Throws SingularSystem.
double resistance_pinv_oracle(const Graph& graph, NodeId v, NodeId u);

/// Expected number of random-walk steps from v until u is first visited.
/// Throws SameNode for v == u.
double access_time(const SpectralDecomposition& decomp, NodeId v, NodeId u);

/// t(v,u) + t(u,v). Throws SameNode for v == u.
double commute_time(const SpectralDecomposition& decomp, NodeId v, NodeId u);

/// Access times by first-step analysis: solves (I - P restricted to V\{u}) h = 1.
/// Test oracle independent of the spectral path.
double access_time_linear_oracle(const Graph& graph, NodeId v, NodeId u);

struct TopologyMetrics {
    double spectral_gap = 0.0;
    double largest_eigenvalue = 0.0;
    double cheeger_lower = 0.0;
    double cheeger_upper = 0.0;
    std::optional<double> cheeger_exact;
    double total_resistance = 0.0;  // sum over unordered pairs v < u
    double max_commute_time = 0.0;
    Matrix resistance;
    Matrix commute;
    Matrix access;  // access(v,u) = t(v,u), zero diagonal
};

TopologyMetrics topology_metrics(const Graph& graph, const SpectralDecomposition& decomp,
                                 bool include_exact_cheeger = true);

/// Full symmetric resistance matrix from the spectral formula.
Matrix resistance_matrix(const SpectralDecomposition& decomp);

/// Sum of Res(v,u) over unordered pairs.
double total_resistance(const SpectralDecomposition& decomp);

struct RandomWalkEstimate {
    double hitting_mean = 0.0;
    double hitting_stderr = 0.0;
    double commute_mean = 0.0;
    double commute_stderr = 0.0;
    std::int64_t walks = 0;
    std::int64_t censored = 0;  // walks that hit the step cap
};

inline constexpr std::int64_t kWalkStepCap = 1'000'000;

/// Monte-Carlo walks from v to u (hitting) and back to v (commute). Walk i
/// uses its own stream derived from (seed, i). Censored walks are excluded
/// from the means and counted.
RandomWalkEstimate random_walk_oracle(const Graph& graph, NodeId v, NodeId u,
                                      std::int64_t num_walks, std::uint64_t seed,
                                      std::int64_t step_cap = kWalkStepCap);

}  // namespace oversquash
