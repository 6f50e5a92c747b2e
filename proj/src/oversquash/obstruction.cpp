#include "oversquash/obstruction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "oversquash/error.hpp"

namespace oversquash {

namespace {

void check_common(const ObstructionConfig& c) {
    require(c.rho > 0.0 && c.rho <= 1.0, ErrorCode::ModePreconditionViolated,
            "rho must lie in (0, 1]");
    require(c.c_r >= 0.0 && c.c_a > 0.0, ErrorCode::ModePreconditionViolated,
            "need c_r >= 0 and c_a > 0");
    require(c.nu > 0.0, ErrorCode::ModePreconditionViolated, "nu must be positive");
    require(c.depth >= 0, ErrorCode::InvalidArgument, "depth must be non-negative");
}

void check_pair(const SpectralDecomposition& d, NodeId v, NodeId u) {
    require(v >= 0 && v < d.size() && u >= 0 && u < d.size(), ErrorCode::NodeOutOfRange,
            "node index out of range");
    require(v != u, ErrorCode::SameNode, "obstruction needs distinct nodes");
    require(d.size() >= 2 && d.spectral_gap() > 1e-12, ErrorCode::SingularSystem,
            "spectral gap is zero");
}

}  // namespace

void check_access_mode(const ObstructionConfig& config) {
    check_common(config);
    const double s = config.nu * (config.c_r + config.c_a);
    require(std::abs(s - 1.0) <= 1e-12 * std::max(1.0, s), ErrorCode::ModePreconditionViolated,
            "access mode needs nu (c_r + c_a) = 1");
}

void check_commute_mode(const ObstructionConfig& config) {
    check_common(config);
    require(config.nu <= config.mu, ErrorCode::ModePreconditionViolated, "need nu <= mu");
    require(config.mu * (config.c_r + config.c_a) <= 1.0 + 1e-12,
            ErrorCode::ModePreconditionViolated, "commute mode needs mu (c_r + c_a) <= 1");
    require(config.c_r >= config.c_a, ErrorCode::ModePreconditionViolated,
            "commute mode needs c_r >= c_a");
}

Matrix weight_product(const std::vector<Matrix>& weights, int k, int m) {
    require(k >= 0 && k <= m && m <= static_cast<int>(weights.size()), ErrorCode::InvalidArgument,
            "need 0 <= k <= m <= number of layers");
    if (k == m) {
        require(!weights.empty(), ErrorCode::InvalidArgument, "no weights given");
        return Matrix::Identity(weights[0].rows(), weights[0].rows());
    }
    // weights[s - 1] holds W^{(s)}
    Matrix prod = weights[m - 1];
    for (int s = m - 1; s >= k + 1; --s) {
        require(prod.cols() == weights[s - 1].rows(), ErrorCode::ShapeMismatch,
                "weight shapes do not chain");
        prod = prod * weights[s - 1];
    }
    return prod;
}

Matrix expected_jacobian(double rho, const Matrix& weight_product, const Matrix& S, int m, int k,
                         NodeId v, NodeId u) {
    require(k >= 0 && k <= m, ErrorCode::InvalidArgument, "need 0 <= k <= m");
    return rho * matrix_power_entry(S, m - k, v, u) * weight_product;
}

ObstructionReport jacobian_obstruction(const ObstructionConfig& config,
                                       const SpectralDecomposition& decomp, NodeId v, NodeId u) {
    check_access_mode(config);
    check_pair(decomp, v, u);
    const int n = decomp.size();
    const int m = config.depth;
    const double dv = decomp.degrees[v];
    const double du = decomp.degrees[u];
    const double nca = config.nu * config.c_a;

    // x_l = nu (c_r + c_a (1 - lambda_l)) = 1 - nu c_a lambda_l in this mode.
    std::vector<double> x(n), a(n);
    double x_star = 0.0;
    for (int l = 1; l < n; ++l) {
        const double lam = decomp.eigenvalues(l);
        const double pv = decomp.eigenvectors(v, l);
        const double pu = decomp.eigenvectors(u, l);
        x[l] = config.nu * (config.c_r + config.c_a * (1.0 - lam));
        a[l] = pv * pv / dv - pv * pu / std::sqrt(dv * du);
        x_star = std::max(x_star, std::abs(1.0 - nca * lam));
    }

    ObstructionReport rep;
    rep.mode = ObstructionMode::Access;
    rep.v = v;
    rep.u = u;
    rep.depth = m;
    rep.per_layer.assign(m + 1, 0.0);
    std::vector<double> pw(n, 1.0);  // x_l^{m-k}, built from k = m downward
    double tail = 0.0;
    for (int k = m; k >= 0; --k) {
        double s = 0.0;
        for (int l = 1; l < n; ++l) s += pw[l] * a[l];
        rep.per_layer[k] = config.rho * std::abs(s);
        for (int l = 1; l < n; ++l) pw[l] *= x[l];
    }
    // pw now holds x_l^{m+1}
    for (int l = 1; l < n; ++l) tail += pw[l] * a[l] / (nca * decomp.eigenvalues(l));
    for (double t : rep.per_layer) rep.total += t;
    rep.total_upper = rep.total;

    const double two_e = 2.0 * decomp.num_edges;
    rep.leading = config.rho / nca * access_time(decomp, u, v) / two_e;
    rep.tail_exact = config.rho * std::abs(tail);
    rep.x_star = x_star;
    rep.tail_bound = config.rho * std::pow(x_star, m + 1) * (n - 1) /
                     (nca * decomp.spectral_gap() * decomp.min_degree());
    rep.lower = rep.leading - rep.tail_bound;
    rep.upper = std::numeric_limits<double>::infinity();
    return rep;
}

ObstructionReport symmetric_obstruction(const ObstructionConfig& config,
                                        const SpectralDecomposition& decomp, NodeId v, NodeId u) {
    check_commute_mode(config);
    check_pair(decomp, v, u);
    if (!(decomp.largest() < 2.0 - 1e-12)) {
        fail(ErrorCode::BipartiteGraph, "symmetric obstruction needs a non-bipartite graph");
    }
    const int n = decomp.size();
    const int m = config.depth;
    const double sv = std::sqrt(static_cast<double>(decomp.degrees[v]));
    const double su = std::sqrt(static_cast<double>(decomp.degrees[u]));

    std::vector<double> y(n), b(n);
    for (int l = 1; l < n; ++l) {
        const double diff = decomp.eigenvectors(v, l) / sv - decomp.eigenvectors(u, l) / su;
        y[l] = config.c_r + config.c_a * (1.0 - decomp.eigenvalues(l));
        b[l] = diff * diff;
    }

    ObstructionReport rep;
    rep.mode = ObstructionMode::Commute;
    rep.v = v;
    rep.u = u;
    rep.depth = m;
    rep.per_layer.assign(m + 1, 0.0);
    rep.per_layer_upper.assign(m + 1, 0.0);
    std::vector<double> pn(n, 1.0), pm(n, 1.0);
    for (int k = m; k >= 0; --k) {
        double sn = 0.0, sm = 0.0;
        for (int l = 1; l < n; ++l) {
            sn += pn[l] * b[l];
            sm += pm[l] * b[l];
            pn[l] *= config.nu * y[l];
            pm[l] *= config.mu * y[l];
        }
        rep.per_layer[k] = config.rho * sn;
        rep.per_layer_upper[k] = config.rho * sm;
    }
    for (int k = 0; k <= m; ++k) {
        rep.total += rep.per_layer[k];
        rep.total_upper += rep.per_layer_upper[k];
    }

    const double lam1 = decomp.spectral_gap();
    const double res = effective_resistance(decomp, v, u);
    const double nca = config.nu * config.c_a;
    // c_r >= c_a keeps every y_l positive, so the largest factor sits at lambda_1.
    rep.x_star = config.nu * (config.c_r + config.c_a * (1.0 - lam1));
    rep.eps_g = lam1 / (lam1 + (1.0 - config.nu * (config.c_r + config.c_a)) / nca);
    rep.leading = config.rho / nca * res;
    rep.tail_bound = std::pow(rep.x_star, m + 1);
    rep.tail_exact = rep.tail_bound;
    rep.lower = rep.eps_g * (1.0 - rep.tail_bound) * rep.leading;
    rep.upper = config.rho / (config.mu * config.c_a) * res;
    return rep;
}

CheegerObstructionBound cheeger_obstruction_bound(const ObstructionConfig& config,
                                                  const Graph& graph,
                                                  const SpectralDecomposition& decomp) {
    check_commute_mode(config);
    require(graph.num_nodes() == decomp.size(), ErrorCode::ShapeMismatch,
            "decomposition does not match the graph");
    require(graph.num_nodes() >= 2, ErrorCode::InvalidArgument, "need at least two nodes");
    const int n = graph.num_nodes();
    const double lam1 = decomp.spectral_gap();
    const double scale = config.rho / (config.mu * config.c_a);

    CheegerObstructionBound out;
    const Matrix res = resistance_matrix(decomp);
    const bool bipartite = !(decomp.largest() < 2.0 - 1e-12);
    double max_res = 0.0;
    for (int v = 0; v < n; ++v) {
        for (int u = v + 1; u < n; ++u) {
            max_res = std::max(max_res, res(v, u));
            if (!bipartite) {
                out.max_obstruction = std::max(
                    out.max_obstruction, symmetric_obstruction(config, decomp, v, u).total_upper);
            }
        }
    }
    if (n <= kCheegerExactMaxNodes) {
        out.h = cheeger_exact(graph);
        out.h_exact = true;
    } else {
        out.h = cheeger_bounds(lam1).first;
    }
    out.resistance_form = scale * max_res;
    out.lambda_form = scale * 2.0 / lam1;
    out.cheeger_form = scale * 4.0 / (out.h * out.h);
    out.printed_form = 4.0 / (config.rho * config.mu * config.c_a * out.h * out.h);
    return out;
}

}  // namespace oversquash
