#pragma once

#include <vector>

namespace oversquash {

/// Average ranks; values within a relative 1e-9 of the first value of a run
/// tie.
std::vector<double> average_ranks(const std::vector<double>& x);

/// Pearson correlation of the average ranks. Throws ShapeMismatch for unequal
/// lengths and InvalidArgument for fewer than two points. Returns 0 when
/// either side is constant.
double spearman(const std::vector<double>& a, const std::vector<double>& b);

/// Least-squares slope of y against x. Throws on fewer than two points.
double ols_slope(const std::vector<double>& x, const std::vector<double>& y);

double mean(const std::vector<double>& x);

}  // namespace oversquash
