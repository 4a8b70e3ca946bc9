#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "circlayout/model.hpp"
#include "circlayout/permutation.hpp"
#include "circlayout/spectral.hpp"

namespace circlayout {

/// Radius below which a point has no usable angle.
inline constexpr double kOriginRadius = 1e-12;

/// Vertices embedded in the plane by two eigenvectors.
struct AngularEmbedding {
  Eigen::MatrixXd points;              ///< n x 2
  std::vector<double> angles;          ///< atan2 mapped into [0, 2 pi)
  std::vector<int> origin_vertices;    ///< radius < kOriginRadius, angle set to 0
};

/// Ranks assigned to vertices, with the circle symmetry applied during
/// alignment (identity unless produced by align_to_truth).
struct CircularOrder {
  Permutation ranks;        ///< ranks[v] = position of vertex v, 0-based
  int orientation = 1;      ///< +1, or -1 for a reflection
  int rotation_offset = 0;  ///< in [0, n)
};

/// Throws ValidationError on length mismatch or empty input.
AngularEmbedding angular_coordinates(std::span<const double> x, std::span<const double> y);

/// Stable sort by (angle, vertex index).
CircularOrder order_by_angle(std::span<const double> angles);
CircularOrder order_by_angle(const AngularEmbedding& embedding);

struct LayoutResult {
  CircularOrder order;
  AngularEmbedding embedding;
  SpectralDecomposition spectrum;
};

/// Angular ordering from the eigenvectors of the second and third largest
/// eigenvalues. `eigenpair_count` (>= 3) only controls how many eigenpairs
/// are reported in `spectrum`.
///
/// Throws ValidationError unless the input is a 0/1 matrix with zero diagonal
/// and n >= 5.
LayoutResult recover_layout(const SymmetricMatrix& adjacency, int eigenpair_count = 3);

/// `truth[v]` is the model position of vertex v. Re-expresses the order by
/// model position and picks, among the n rotations and 2 reflections of the
/// circular order, the one with the smallest Kendall distance to the
/// identity. Ties go to the smallest offset, then orientation +1. The
/// returned ranks are indexed by model position.
CircularOrder align_to_truth(const CircularOrder& order, const Permutation& truth);

/// Ranks re-indexed by model position without any symmetry applied.
Permutation ranks_in_model_order(const CircularOrder& order, const Permutation& truth);

/// Standard deviation of the point radii.
double radial_spread(const AngularEmbedding& embedding);

/// CSV "vertex,x,y,phi,rank" (1-based vertex and rank).
void write_point_cloud_csv(std::ostream& out, const AngularEmbedding& embedding,
                           const CircularOrder& order);

}  // namespace circlayout
