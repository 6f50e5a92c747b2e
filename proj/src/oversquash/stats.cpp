#include "oversquash/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oversquash/error.hpp"

namespace oversquash {

std::vector<double> average_ranks(const std::vector<double>& x) {
    std::vector<std::size_t> idx(x.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](auto i, auto j) { return x[i] < x[j]; });
    std::vector<double> r(x.size());
    for (std::size_t i = 0; i < idx.size();) {
        const double head = x[idx[i]];
        std::size_t j = i;
        while (j + 1 < idx.size() && x[idx[j + 1]] - head <= 1e-9 * std::max(1.0, std::abs(head))) {
            ++j;
        }
        for (std::size_t k = i; k <= j; ++k) r[idx[k]] = 0.5 * static_cast<double>(i + j) + 1.0;
        i = j + 1;
    }
    return r;
}

double mean(const std::vector<double>& x) {
    require(!x.empty(), ErrorCode::InvalidArgument, "mean of an empty sample");
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
    require(a.size() == b.size(), ErrorCode::ShapeMismatch, "spearman needs equal lengths");
    require(a.size() >= 2, ErrorCode::InvalidArgument, "spearman needs at least two points");
    const auto ra = average_ranks(a);
    const auto rb = average_ranks(b);
    const double ma = mean(ra), mb = mean(rb);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        sab += (ra[i] - ma) * (rb[i] - mb);
        saa += (ra[i] - ma) * (ra[i] - ma);
        sbb += (rb[i] - mb) * (rb[i] - mb);
    }
    if (saa == 0.0 || sbb == 0.0) return 0.0;
    return sab / std::sqrt(saa * sbb);
}

double ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
    require(x.size() == y.size(), ErrorCode::ShapeMismatch, "slope needs equal lengths");
    require(x.size() >= 2, ErrorCode::InvalidArgument, "slope needs at least two points");
    const double mx = mean(x), my = mean(y);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    require(sxx > 0.0, ErrorCode::InvalidArgument, "slope needs distinct x values");
    return sxy / sxx;
}

}  // namespace oversquash
