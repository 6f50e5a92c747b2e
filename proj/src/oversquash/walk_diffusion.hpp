#pragma once

#include <vector>

#include "oversquash/graph.hpp"

namespace oversquash {

/// max(x) + log(sum_j exp(x_j - max(x))). Throws EmptyVector.
double lse(const Vector& x);

struct WalkWeights {
    int max_length = 0;
    Matrix gamma;               // gamma(i, m - 1) = 1 / lse(row i of A_bar^m)
    std::vector<Matrix> power;  // power[m - 1] = A_bar^m
    std::vector<Matrix> zeta;   // zeta[m - 1] = diag(gamma(., m)) A_bar^m
};

/// Operators for walk lengths 1..M on the symmetric shift A_bar. Throws
/// InvalidArgument for M < 1 or a single-node graph.
WalkWeights walk_operators(const Graph& graph, int max_length);

/// -log(zeta_m), with +infinity where A_bar^m is zero. Diagnostic only.
Matrix correction_tensor(const WalkWeights& weights, int m);

/// Z = sum_m zeta_m (X W_enc) W_m for m = 1..M. Throws ShapeMismatch.
Matrix diffusion_forward(const WalkWeights& weights, const Matrix& x, const Matrix& w_enc,
                         const std::vector<Matrix>& w_per_length);

}  // namespace oversquash
