#include "oversquash/walk_diffusion.hpp"

#include <cmath>
#include <limits>

#include "oversquash/error.hpp"

namespace oversquash {

double lse(const Vector& x) {
    if (x.size() == 0) fail(ErrorCode::EmptyVector, "lse of an empty vector");
    const double top = x.maxCoeff();
    if (std::isinf(top)) return top;
    return top + std::log((x.array() - top).exp().sum());
}

WalkWeights walk_operators(const Graph& graph, int max_length) {
    require(max_length >= 1, ErrorCode::InvalidArgument, "max walk length must be >= 1");
    const int n = graph.num_nodes();
    require(n >= 2, ErrorCode::InvalidArgument, "walk operators need at least two nodes");
    const Matrix a = shift_operator(graph, ShiftKind::Symmetric);

    WalkWeights w;
    w.max_length = max_length;
    w.gamma.resize(n, max_length);
    Matrix p = a;
    for (int m = 1; m <= max_length; ++m) {
        if (m > 1) p = p * a;
        // rows are non-negative with n >= 2 entries, so lse >= log 2 > 0
        for (int i = 0; i < n; ++i) w.gamma(i, m - 1) = 1.0 / lse(p.row(i).transpose());
        w.zeta.push_back(w.gamma.col(m - 1).asDiagonal() * p);
        w.power.push_back(p);
    }
    return w;
}

Matrix correction_tensor(const WalkWeights& weights, int m) {
    require(m >= 1 && m <= weights.max_length, ErrorCode::InvalidArgument,
            "walk length out of range");
    const Matrix& z = weights.zeta[m - 1];
    const Matrix& p = weights.power[m - 1];
    Matrix out(z.rows(), z.cols());
    for (Eigen::Index j = 0; j < z.cols(); ++j) {
        for (Eigen::Index i = 0; i < z.rows(); ++i) {
            out(i, j) = p(i, j) == 0.0 ? std::numeric_limits<double>::infinity() : -std::log(z(i, j));
        }
    }
    return out;
}

Matrix diffusion_forward(const WalkWeights& weights, const Matrix& x, const Matrix& w_enc,
                         const std::vector<Matrix>& w_per_length) {
    const Eigen::Index n = weights.gamma.rows();
    require(x.rows() == n, ErrorCode::ShapeMismatch, "X needs one row per node");
    require(x.cols() == w_enc.rows(), ErrorCode::ShapeMismatch, "encoder input width mismatch");
    require(static_cast<int>(w_per_length.size()) == weights.max_length, ErrorCode::ShapeMismatch,
            "need one weight matrix per walk length");
    const Matrix enc = x * w_enc;
    const Eigen::Index out_cols = w_per_length.front().cols();
    Matrix z = Matrix::Zero(n, out_cols);
    for (int m = 1; m <= weights.max_length; ++m) {
        const Matrix& w = w_per_length[m - 1];
        require(w.rows() == enc.cols() && w.cols() == out_cols, ErrorCode::ShapeMismatch,
                "per-length weight shape mismatch");
        z += weights.zeta[m - 1] * (enc * w);
    }
    return z;
}

}  // namespace oversquash
