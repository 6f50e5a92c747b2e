#include "oversquash/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "oversquash/error.hpp"
#include "oversquash/random.hpp"

namespace oversquash {

namespace {

double off_diagonal_norm(const Matrix& a) {
    double sum = 0.0;
    const auto n = a.rows();
    for (Eigen::Index q = 0; q < n; ++q) {
        for (Eigen::Index p = 0; p < n; ++p) {
            if (p != q) sum += a(p, q) * a(p, q);
        }
    }
    return std::sqrt(sum);
}

void check_pair(const SpectralDecomposition& d, NodeId v, NodeId u) {
    require(v >= 0 && v < d.size() && u >= 0 && u < d.size(),
            ErrorCode::NodeOutOfRange, "node index out of range");
}

void check_gap(const SpectralDecomposition& d) {
    if (d.size() >= 2 && !(d.eigenvalues(1) > 1e-12)) {
        fail(ErrorCode::SingularSystem,
             "spectral gap is zero; the spectral formulas need a connected graph");
    }
}

// G = sum_{l>=1} (1/lambda_l) phi_l phi_l^T with phi_l = D^-1/2 psi_l.
Matrix green_matrix(const SpectralDecomposition& d) {
    check_gap(d);
    const int n = d.size();
    Matrix phi = d.eigenvectors.rightCols(n - 1);
    for (int v = 0; v < n; ++v) phi.row(v) /= std::sqrt(static_cast<double>(d.degrees[v]));
    Vector inv = d.eigenvalues.tail(n - 1).cwiseInverse();
    return phi * inv.asDiagonal() * phi.transpose();
}

}  // namespace

EigenPairs eigendecompose(const Matrix& input, const JacobiOptions& opts) {
    require(input.rows() == input.cols(), ErrorCode::ShapeMismatch,
            "eigendecompose needs a square matrix");
    const Eigen::Index n = input.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            if (std::abs(input(i, j) - input(j, i)) > opts.symmetry_tol) {
                fail(ErrorCode::NotSymmetric,
                     "matrix is not symmetric at (" + std::to_string(i) + "," +
                         std::to_string(j) + ")");
            }
        }
    }

    Matrix a = 0.5 * (input + input.transpose());
    Matrix v = Matrix::Identity(n, n);
    int sweeps = 0;
    while (off_diagonal_norm(a) >= opts.off_diagonal_tol) {
        if (sweeps >= opts.max_sweeps) {
            fail(ErrorCode::NoConvergence,
                 "Jacobi did not converge within " + std::to_string(opts.max_sweeps) +
                     " sweeps (off-diagonal norm " + std::to_string(off_diagonal_norm(a)) + ")");
        }
        ++sweeps;
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                a(p, p) -= t * apq;
                a(q, q) += t * apq;
                a(p, q) = a(q, p) = 0.0;
                for (Eigen::Index k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double g = a(k, p);
                    const double h = a(k, q);
                    a(k, p) = a(p, k) = c * g - s * h;
                    a(k, q) = a(q, k) = s * g + c * h;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double g = v(k, p);
                    const double h = v(k, q);
                    v(k, p) = c * g - s * h;
                    v(k, q) = s * g + c * h;
                }
            }
        }
    }

    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index x, Eigen::Index y) { return a(x, x) < a(y, y); });

    EigenPairs out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    out.sweeps = sweeps;
    for (Eigen::Index i = 0; i < n; ++i) {
        out.values(i) = a(order[i], order[i]);
        Vector col = v.col(order[i]);
        for (Eigen::Index k = 0; k < n; ++k) {
            if (std::abs(col(k)) > 1e-12) {
                if (col(k) < 0.0) col = -col;
                break;
            }
        }
        out.vectors.col(i) = col;
    }
    return out;
}

Matrix normalized_laplacian(const Graph& graph) {
    Matrix lap = -shift_operator(graph, ShiftKind::Symmetric);
    lap.diagonal().array() += 1.0;
    return lap;
}

int SpectralDecomposition::min_degree() const {
    return *std::min_element(degrees.begin(), degrees.end());
}

SpectralDecomposition spectral_decomposition(const Graph& graph, const JacobiOptions& opts) {
    EigenPairs pairs = eigendecompose(normalized_laplacian(graph), opts);
    SpectralDecomposition d;
    d.eigenvalues = std::move(pairs.values);
    d.eigenvectors = std::move(pairs.vectors);
    d.degrees = graph.degrees();
    d.num_edges = graph.num_edges();
    return d;
}

std::pair<double, double> cheeger_bounds(double lambda1) {
    require(lambda1 > 0.0, ErrorCode::InvalidArgument,
            "Cheeger bounds need a positive spectral gap");
    return {lambda1 / 2.0, std::sqrt(2.0 * lambda1)};
}

double cheeger_exact(const Graph& graph) {
    const int n = graph.num_nodes();
    require(n <= kCheegerExactMaxNodes, ErrorCode::TooLarge,
            "exact Cheeger constant is limited to n <= 16 (got " + std::to_string(n) + ")");
    require(n >= 2, ErrorCode::InvalidArgument, "Cheeger constant needs n >= 2");
    const int total_vol = 2 * graph.num_edges();
    double best = std::numeric_limits<double>::infinity();
    // Node n-1 always stays outside U, so each bipartition is visited once.
    const std::uint32_t limit = 1u << (n - 1);
    for (std::uint32_t mask = 1; mask < limit; ++mask) {
        int vol = 0;
        for (int v = 0; v < n - 1; ++v) {
            if (mask & (1u << v)) vol += graph.degree(v);
        }
        int cut = 0;
        for (auto [a, b] : graph.edges()) {
            const bool ina = a < n - 1 && (mask & (1u << a));
            const bool inb = b < n - 1 && (mask & (1u << b));
            if (ina != inb) ++cut;
        }
        const double ratio = static_cast<double>(cut) / std::min(vol, total_vol - vol);
        best = std::min(best, ratio);
    }
    return best;
}

double effective_resistance(const SpectralDecomposition& d, NodeId v, NodeId u) {
    check_pair(d, v, u);
    if (v == u) return 0.0;
    check_gap(d);
    const double sv = std::sqrt(static_cast<double>(d.degrees[v]));
    const double su = std::sqrt(static_cast<double>(d.degrees[u]));
    double res = 0.0;
    for (int l = 1; l < d.size(); ++l) {
        const double diff = d.eigenvectors(v, l) / sv - d.eigenvectors(u, l) / su;
        res += diff * diff / d.eigenvalues(l);
    }
    return res;
}

double resistance_pinv_oracle(const Graph& graph, NodeId v, NodeId u) {
    const int n = graph.num_nodes();
    require(v >= 0 && v < n && u >= 0 && u < n, ErrorCode::NodeOutOfRange,
            "node index out of range");
    if (v == u) return 0.0;
    Matrix lap = -graph.adjacency_matrix();
    for (int x = 0; x < n; ++x) lap(x, x) = graph.degree(x);

    // Ground u: drop its row and column.
    auto idx = [u](int x) { return x < u ? x : x - 1; };
    Matrix reduced(n - 1, n - 1);
    for (int r = 0; r < n; ++r) {
        if (r == u) continue;
        for (int c = 0; c < n; ++c) {
            if (c == u) continue;
            reduced(idx(r), idx(c)) = lap(r, c);
        }
    }
    Eigen::FullPivLU<Matrix> lu(reduced);
    if (!lu.isInvertible()) fail(ErrorCode::SingularSystem, "grounded Laplacian is singular");
    Vector rhs = Vector::Unit(n - 1, idx(v));
    Vector potential = lu.solve(rhs);
    return potential(idx(v));
}

double access_time(const SpectralDecomposition& d, NodeId v, NodeId u) {
    check_pair(d, v, u);
    require(v != u, ErrorCode::SameNode, "access time needs distinct nodes");
    check_gap(d);
    const double dv = d.degrees[v];
    const double du = d.degrees[u];
    double sum = 0.0;
    for (int l = 1; l < d.size(); ++l) {
        const double pu = d.eigenvectors(u, l);
        const double pv = d.eigenvectors(v, l);
        sum += (pu * pu / du - pv * pu / std::sqrt(dv * du)) / d.eigenvalues(l);
    }
    return 2.0 * d.num_edges * sum;
}

double commute_time(const SpectralDecomposition& d, NodeId v, NodeId u) {
    require(v != u, ErrorCode::SameNode, "commute time needs distinct nodes");
    return access_time(d, v, u) + access_time(d, u, v);
}

double access_time_linear_oracle(const Graph& graph, NodeId v, NodeId u) {
    const int n = graph.num_nodes();
    require(v >= 0 && v < n && u >= 0 && u < n, ErrorCode::NodeOutOfRange,
            "node index out of range");
    require(v != u, ErrorCode::SameNode, "access time needs distinct nodes");
    auto idx = [u](int x) { return x < u ? x : x - 1; };
    Matrix m = Matrix::Identity(n - 1, n - 1);
    for (int x = 0; x < n; ++x) {
        if (x == u) continue;
        const double p = 1.0 / graph.degree(x);
        for (NodeId y : graph.neighbors(x)) {
            if (y != u) m(idx(x), idx(y)) -= p;
        }
    }
    Eigen::FullPivLU<Matrix> lu(m);
    if (!lu.isInvertible()) fail(ErrorCode::SingularSystem, "hitting system is singular");
    Vector h = lu.solve(Vector::Ones(n - 1));
    return h(idx(v));
}

Matrix resistance_matrix(const SpectralDecomposition& d) {
    const int n = d.size();
    const Matrix g = green_matrix(d);
    Matrix r(n, n);
    for (int v = 0; v < n; ++v) {
        for (int u = 0; u < n; ++u) {
            r(v, u) = v == u ? 0.0 : std::max(0.0, g(v, v) + g(u, u) - 2.0 * g(v, u));
        }
    }
    return r;
}

double total_resistance(const SpectralDecomposition& d) {
    return 0.5 * resistance_matrix(d).sum();
}

TopologyMetrics topology_metrics(const Graph& graph, const SpectralDecomposition& d,
                                 bool include_exact_cheeger) {
    TopologyMetrics out;
    out.spectral_gap = d.spectral_gap();
    out.largest_eigenvalue = d.largest();
    std::tie(out.cheeger_lower, out.cheeger_upper) = cheeger_bounds(out.spectral_gap);
    if (include_exact_cheeger && graph.num_nodes() <= kCheegerExactMaxNodes) {
        out.cheeger_exact = cheeger_exact(graph);
    }
    const int n = d.size();
    const Matrix g = green_matrix(d);
    const double two_m = 2.0 * d.num_edges;
    out.resistance = resistance_matrix(d);
    out.commute = two_m * out.resistance;
    out.access = Matrix::Zero(n, n);
    for (int v = 0; v < n; ++v) {
        for (int u = 0; u < n; ++u) {
            if (v != u) out.access(v, u) = two_m * (g(u, u) - g(v, u));
        }
    }
    out.total_resistance = 0.5 * out.resistance.sum();
    out.max_commute_time = out.commute.maxCoeff();
    return out;
}

RandomWalkEstimate random_walk_oracle(const Graph& graph, NodeId v, NodeId u,
                                      std::int64_t num_walks, std::uint64_t seed,
                                      std::int64_t step_cap) {
    const int n = graph.num_nodes();
    require(v >= 0 && v < n && u >= 0 && u < n, ErrorCode::NodeOutOfRange,
            "node index out of range");
    require(v != u, ErrorCode::SameNode, "random walk oracle needs distinct nodes");
    require(num_walks >= 1, ErrorCode::InvalidArgument, "num_walks must be >= 1");

    auto step = [&](NodeId x, Rng& rng) {
        const auto& nbrs = graph.neighbors(x);
        std::uniform_int_distribution<std::size_t> pick(0, nbrs.size() - 1);
        return nbrs[pick(rng)];
    };

    RandomWalkEstimate est;
    double hit_sum = 0.0, hit_sq = 0.0, com_sum = 0.0, com_sq = 0.0;
    std::int64_t kept = 0;
    for (std::int64_t i = 0; i < num_walks; ++i) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
        NodeId x = v;
        std::int64_t steps = 0;
        while (x != u && steps < step_cap) {
            x = step(x, rng);
            ++steps;
        }
        const std::int64_t hit = steps;
        while (x != v && steps < step_cap) {
            x = step(x, rng);
            ++steps;
        }
        if (x != v) {
            ++est.censored;
            continue;
        }
        ++kept;
        hit_sum += hit;
        hit_sq += static_cast<double>(hit) * hit;
        com_sum += steps;
        com_sq += static_cast<double>(steps) * steps;
    }
    est.walks = num_walks;
    if (kept == 0) return est;
    const double k = static_cast<double>(kept);
    est.hitting_mean = hit_sum / k;
    est.commute_mean = com_sum / k;
    if (kept > 1) {
        const double hvar = std::max(0.0, (hit_sq - k * est.hitting_mean * est.hitting_mean) / (k - 1));
        const double cvar = std::max(0.0, (com_sq - k * est.commute_mean * est.commute_mean) / (k - 1));
        est.hitting_stderr = std::sqrt(hvar / k);
        est.commute_stderr = std::sqrt(cvar / k);
    }
    return est;
}

}  // namespace oversquash
