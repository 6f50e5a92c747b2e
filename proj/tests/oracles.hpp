#pragma once

// Independent reference computations used only by tests. None of these call
// into the library's numerical paths beyond the Graph container.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "oversquash/graph.hpp"
#include "oversquash/random.hpp"

namespace oracle {

using oversquash::Graph;
using oversquash::Matrix;
using oversquash::NodeId;

// Sum over all length-m walks v = x0, x1, ..., xm = u of prod S(x_i, x_{i+1}),
// by recursion over neighbors plus self-steps where S has a diagonal.
inline double walk_sum(const Matrix& s, int m, NodeId v, NodeId u) {
    if (m == 0) return v == u ? 1.0 : 0.0;
    double total = 0.0;
    for (Eigen::Index x = 0; x < s.rows(); ++x) {
        const double w = s(v, x);
        if (w == 0.0) continue;
        total += w * walk_sum(s, m - 1, static_cast<NodeId>(x), u);
    }
    return total;
}

// Integer walk count by recursion on the adjacency lists.
inline unsigned long long walks_exact(const Graph& g, int len, NodeId v, NodeId u) {
    if (len == 0) return v == u ? 1 : 0;
    unsigned long long total = 0;
    for (NodeId x : g.neighbors(v)) total += walks_exact(g, len - 1, x, u);
    return total;
}

// Values within a relative 1e-9 of the first value of a run share its
// average rank, so quantities that are equal up to rounding tie.
inline double spearman(const std::vector<double>& a, const std::vector<double>& b) {
    auto ranks = [](const std::vector<double>& x) {
        std::vector<std::size_t> idx(x.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](auto i, auto j) { return x[i] < x[j]; });
        std::vector<double> r(x.size());
        for (std::size_t i = 0; i < idx.size();) {
            std::size_t j = i;
            while (j + 1 < idx.size() &&
                   x[idx[j + 1]] - x[idx[i]] <= 1e-9 * std::max(1.0, std::abs(x[idx[i]]))) {
                ++j;
            }
            for (std::size_t k = i; k <= j; ++k) r[idx[k]] = 0.5 * (i + j);
            i = j + 1;
        }
        return r;
    };
    const auto ra = ranks(a), rb = ranks(b);
    const double n = static_cast<double>(a.size());
    const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
    const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
    double sab = 0, saa = 0, sbb = 0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        sab += (ra[i] - ma) * (rb[i] - mb);
        saa += (ra[i] - ma) * (ra[i] - ma);
        sbb += (rb[i] - mb) * (rb[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

// Hand-rolled generator: random connected graph with n in [lo, hi] and a
// random number of extra edges.
inline Graph random_graph(oversquash::Rng& rng, int lo, int hi) {
    std::uniform_int_distribution<int> pick_n(lo, hi);
    const int n = pick_n(rng);
    const int max_extra = n * (n - 1) / 2 - (n - 1);
    std::uniform_int_distribution<int> pick_extra(0, std::min(max_extra, 2 * n));
    return oversquash::random_connected_graph(n, pick_extra(rng), rng);
}

}  // namespace oracle
