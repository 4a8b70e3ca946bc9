#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "circlayout/permutation.hpp"

namespace circlayout {

/// D(sigma): pairs i < j with sigma(i) > sigma(j). O(n log n).
std::int64_t kendall_distance(const Permutation& sigma);

/// D_k(sigma): inverted pairs i < j whose circular distance is at least k in
/// both directions, i.e. k <= j - i <= n - k. D_1 = D. Requires 1 <= k <= n.
std::int64_t d_k(const Permutation& sigma, int k);

/// Pairs (i, j), i < j, k <= j - i <= n - k, with angles[j] <= angles[i].
/// Index order is the ground-truth order. On distinct angles |R| equals
/// d_k(order_by_angle(angles).ranks, k); tied angles are counted here but
/// not by d_k, whose ranks break ties by index.
std::vector<IndexPair> inverted_pair_set(std::span<const double> angles, int k);

/// ceil(n^beta), clamped into [1, n].
int k_from_beta(int n, double beta);

struct RankMetricsReport {
  int n = 0;
  std::int64_t d = 0;
  std::vector<int> k_list;
  std::map<int, std::int64_t> d_k_values;
  std::optional<double> beta;
  bool aligned = false;
};

RankMetricsReport rank_metrics(const Permutation& sigma, std::span<const int> k_list,
                               bool aligned, std::optional<double> beta = std::nullopt);

/// Error-rate bounds for the spectral order, with |S| = c n^gamma and
/// k ~ n^beta.
enum class RateBound {
  dk_linear_density,  ///< D_k, |S| linear in n: 5 - 4 beta
  dk,                 ///< D_k: 11 - 6 gamma - 4 beta
  dk_tradeoff,        ///< D_k: (13 - 6 gamma - 2 beta) / 3
  kendall,            ///< D: (15 - 6 gamma) / 5
};

struct BoundParams {
  double gamma = 1.0;  ///< (0, 1]
  double beta = 0.0;   ///< >= 0
  double c = 1.0;      ///< > 0
};

/// Exponent e of the O(n^e) bound. dk_linear_density requires gamma == 1.
double bound_exponent(RateBound bound, const BoundParams& params);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  ///< RMS of log-space residuals
};

/// Least squares through (log n, log value). Needs >= 3 samples with
/// strictly increasing n and positive values.
SlopeFit fit_loglog_slope(std::span<const std::pair<double, double>> samples);

/// Median (mean of the middle pair for even sizes). Throws on empty input.
double median(std::vector<double> values);

}  // namespace circlayout
