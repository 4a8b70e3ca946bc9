#include "circlayout/layout.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <ostream>
#include <string>

#include "circlayout/error.hpp"
#include "circlayout/format.hpp"
#include "circlayout/metrics.hpp"

namespace circlayout {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double angle_of(double x, double y) {
  double phi = std::atan2(y, x);
  if (phi < 0.0) phi += kTwoPi;
  // -tiny + 2 pi rounds to 2 pi; keep the half-open range.
  if (phi >= kTwoPi) phi = std::nextafter(kTwoPi, 0.0);
  return phi == 0.0 ? 0.0 : phi;  // drop a negative zero
}

}  // namespace

AngularEmbedding angular_coordinates(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("angular_coordinates: length mismatch");
  if (x.empty()) throw ValidationError("angular_coordinates: empty input");
  const auto n = static_cast<Eigen::Index>(x.size());
  AngularEmbedding out;
  out.points.resize(n, 2);
  out.angles.resize(x.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    out.points(i, 0) = x[i];
    out.points(i, 1) = y[i];
    if (std::hypot(x[i], y[i]) < kOriginRadius) {
      out.angles[i] = 0.0;
      out.origin_vertices.push_back(static_cast<int>(i));
    } else {
      out.angles[i] = angle_of(x[i], y[i]);
    }
  }
  return out;
}

CircularOrder order_by_angle(std::span<const double> angles) {
  std::vector<int> by_angle(angles.size());
  std::iota(by_angle.begin(), by_angle.end(), 0);
  std::stable_sort(by_angle.begin(), by_angle.end(),
                   [&](int a, int b) { return angles[a] < angles[b]; });
  std::vector<int> ranks(angles.size());
  for (std::size_t r = 0; r < by_angle.size(); ++r) ranks[by_angle[r]] = static_cast<int>(r);
  return CircularOrder{Permutation(std::move(ranks)), 1, 0};
}

CircularOrder order_by_angle(const AngularEmbedding& embedding) {
  return order_by_angle(std::span<const double>(embedding.angles));
}

LayoutResult recover_layout(const SymmetricMatrix& adjacency, int eigenpair_count) {
  const auto n = adjacency.order();
  if (n < 5) throw ValidationError("recover_layout: need at least 5 vertices");
  if (eigenpair_count < 3 || eigenpair_count > n) {
    throw ValidationError("recover_layout: eigenpair_count must lie in [3, n]");
  }
  const auto& a = adjacency.dense();
  if (!((a.array() == 0.0) || (a.array() == 1.0)).all()) {
    throw ValidationError("recover_layout: adjacency entries must be 0 or 1");
  }
  if (!adjacency.has_zero_diagonal()) throw ValidationError("recover_layout: self loops present");

  LayoutResult out;
  out.spectrum = top_eigenpairs(adjacency, eigenpair_count);
  const Eigen::VectorXd x = out.spectrum.eigenvectors.col(1);
  const Eigen::VectorXd y = out.spectrum.eigenvectors.col(2);
  out.embedding = angular_coordinates(std::span<const double>(x.data(), x.size()),
                                      std::span<const double>(y.data(), y.size()));
  out.order = order_by_angle(out.embedding);
  return out;
}

Permutation ranks_in_model_order(const CircularOrder& order, const Permutation& truth) {
  if (order.ranks.size() != truth.size()) throw ValidationError("alignment: size mismatch");
  std::vector<int> tau(truth.size());
  for (std::size_t v = 0; v < truth.size(); ++v) tau[truth[v]] = order.ranks[v];
  return Permutation(std::move(tau));
}

CircularOrder align_to_truth(const CircularOrder& order, const Permutation& truth) {
  const Permutation tau = ranks_in_model_order(order, truth);
  const int n = static_cast<int>(tau.size());
  const Permutation where = tau.inverse();  // where[r] = model position holding rank r

  // Candidate (s, +1): rank r -> (r - s) mod n. Candidate (s, -1): r -> (s - r) mod n.
  // Stepping s by one moves a single element between the extremes of the
  // order, which changes D by a closed-form amount.
  std::vector<int> reflected(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) reflected[m] = (n - tau[m]) % n;

  std::int64_t d_forward = kendall_distance(tau);
  std::int64_t d_reflected = kendall_distance(Permutation(reflected));
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  int best_offset = 0;
  int best_orientation = 1;
  for (int s = 0; s < n; ++s) {
    if (d_forward < best) {
      best = d_forward;
      best_offset = s;
      best_orientation = 1;
    }
    if (d_reflected < best) {
      best = d_reflected;
      best_offset = s;
      best_orientation = -1;
    }
    // Forward: the element of rank s (rank 0 after shifting) becomes the largest.
    const std::int64_t q = where[s];
    d_forward += (n - 1 - q) - q;
    // Reflected: the element mapped to n-1 (original rank s+1) becomes 0.
    const std::int64_t r = where[(s + 1) % n];
    d_reflected += r - (n - 1 - r);
  }

  std::vector<int> aligned(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) {
    aligned[m] = best_orientation == 1 ? ((tau[m] - best_offset) % n + n) % n
                                       : ((best_offset - tau[m]) % n + n) % n;
  }
  return CircularOrder{Permutation(std::move(aligned)), best_orientation, best_offset};
}

double radial_spread(const AngularEmbedding& embedding) {
  const Eigen::VectorXd radii = embedding.points.rowwise().norm();
  const double mean = radii.mean();
  return std::sqrt((radii.array() - mean).square().mean());
}

void write_point_cloud_csv(std::ostream& out, const AngularEmbedding& embedding,
                           const CircularOrder& order) {
  out << "vertex,x,y,phi,rank\n";
  for (Eigen::Index i = 0; i < embedding.points.rows(); ++i) {
    out << (i + 1) << ',' << format_double(embedding.points(i, 0)) << ','
        << format_double(embedding.points(i, 1)) << ',' << format_double(embedding.angles[i]) << ','
        << (order.ranks[i] + 1) << '\n';
  }
}

}  // namespace circlayout
