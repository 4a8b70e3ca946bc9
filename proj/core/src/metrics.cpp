#include "circlayout/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "circlayout/error.hpp"

namespace circlayout {

namespace {

// Fenwick tree over ranks 0..n-1 counting inserted values.
class Fenwick {
 public:
  explicit Fenwick(std::size_t n) : tree_(n + 1, 0) {}

  void add(int value) {
    for (auto i = static_cast<std::size_t>(value) + 1; i < tree_.size(); i += i & (~i + 1)) ++tree_[i];
  }

  /// Number of inserted values <= value.
  std::int64_t count_at_most(int value) const {
    std::int64_t sum = 0;
    for (auto i = static_cast<std::size_t>(value) + 1; i > 0; i -= i & (~i + 1)) sum += tree_[i];
    return sum;
  }

 private:
  std::vector<std::int64_t> tree_;
};

struct PrefixQuery {
  int value;
  int sign;
};

}  // namespace

std::int64_t kendall_distance(const Permutation& sigma) {
  const auto n = sigma.size();
  Fenwick tree(n);
  std::int64_t inversions = 0;
  for (std::size_t j = 0; j < n; ++j) {
    // Earlier entries greater than sigma(j).
    inversions += static_cast<std::int64_t>(j) - tree.count_at_most(sigma[j]);
    tree.add(sigma[j]);
  }
  return inversions;
}

std::int64_t d_k(const Permutation& sigma, int k) {
  const int n = static_cast<int>(sigma.size());
  if (k < 1 || k > n) {
    throw ValidationError("d_k: k = " + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
  }
  // For each j, count i in [j - (n - k), j - k] with sigma(i) > sigma(j) as
  // a difference of two prefix counts, answered offline in one sweep.
  std::vector<std::vector<PrefixQuery>> queries(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const int hi = j - k;
    const int lo = std::max(0, j - (n - k));
    if (hi < lo) continue;
    queries[hi].push_back({sigma[j], +1});
    if (lo > 0) queries[lo - 1].push_back({sigma[j], -1});
  }
  Fenwick tree(static_cast<std::size_t>(n));
  std::int64_t total = 0;
  for (int t = 0; t < n; ++t) {
    tree.add(sigma[t]);
    for (const auto& q : queries[t]) {
      const std::int64_t greater = static_cast<std::int64_t>(t + 1) - tree.count_at_most(q.value);
      total += q.sign * greater;
    }
  }
  return total;
}

std::vector<IndexPair> inverted_pair_set(std::span<const double> angles, int k) {
  const int n = static_cast<int>(angles.size());
  if (k < 1 || k > n) {
    throw ValidationError("inverted_pair_set: k = " + std::to_string(k) + " outside [1, " +
                          std::to_string(n) + "]");
  }
  std::vector<IndexPair> pairs;
  for (int i = 0; i < n; ++i) {
    for (int j = i + k; j <= i + (n - k) && j < n; ++j) {
      if (angles[j] <= angles[i]) pairs.push_back({i, j});
    }
  }
  return pairs;
}

int k_from_beta(int n, double beta) {
  if (!(beta >= 0.0)) throw ValidationError("beta must be nonnegative");
  const double raw = std::pow(static_cast<double>(n), beta);
  const int k = static_cast<int>(std::ceil(raw - 1e-9));
  return std::clamp(k, 1, n);
}

RankMetricsReport rank_metrics(const Permutation& sigma, std::span<const int> k_list, bool aligned,
                               std::optional<double> beta) {
  RankMetricsReport report;
  report.n = static_cast<int>(sigma.size());
  report.d = kendall_distance(sigma);
  report.k_list.assign(k_list.begin(), k_list.end());
  for (int k : k_list) report.d_k_values[k] = d_k(sigma, k);
  report.beta = beta;
  report.aligned = aligned;
  return report;
}

double bound_exponent(RateBound bound, const BoundParams& params) {
  if (!(params.gamma > 0.0 && params.gamma <= 1.0)) throw ValidationError("gamma must lie in (0, 1]");
  if (!(params.beta >= 0.0)) throw ValidationError("beta must be nonnegative");
  if (!(params.c > 0.0)) throw ValidationError("c must be positive");
  const double g = params.gamma;
  const double b = params.beta;
  switch (bound) {
    case RateBound::dk_linear_density:
      if (g != 1.0) throw ValidationError("the linear-density bound requires gamma = 1");
      return 5.0 - 4.0 * b;
    case RateBound::dk:
      return 11.0 - 6.0 * g - 4.0 * b;
    case RateBound::dk_tradeoff:
      return (13.0 - 6.0 * g - 2.0 * b) / 3.0;
    case RateBound::kendall:
      return (15.0 - 6.0 * g) / 5.0;
  }
  throw ValidationError("unknown rate bound");
}

SlopeFit fit_loglog_slope(std::span<const std::pair<double, double>> samples) {
  if (samples.size() < 3) throw ValidationError("fit_loglog_slope: need at least 3 samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!(samples[i].first > 0.0) || !(samples[i].second > 0.0)) {
      throw ValidationError("fit_loglog_slope: sizes and values must be positive");
    }
    if (i > 0 && !(samples[i].first > samples[i - 1].first)) {
      throw ValidationError("fit_loglog_slope: sizes must be strictly increasing");
    }
  }
  const auto m = static_cast<double>(samples.size());
  double sx = 0, sy = 0;
  for (auto [n, v] : samples) {
    sx += std::log(n);
    sy += std::log(v);
  }
  const double mx = sx / m;
  const double my = sy / m;
  double sxx = 0, sxy = 0;
  for (auto [n, v] : samples) {
    const double dx = std::log(n) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(v) - my);
  }
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0;
  for (auto [n, v] : samples) {
    const double r = std::log(v) - (fit.intercept + fit.slope * std::log(n));
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / m);
  return fit;
}

double median(std::vector<double> values) {
  if (values.empty()) throw ValidationError("median of an empty sample");
  const auto mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

}  // namespace circlayout
