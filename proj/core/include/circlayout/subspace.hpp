#pragma once

#include <span>

#include <Eigen/Dense>

#include "circlayout/model.hpp"
#include "circlayout/permutation.hpp"

namespace circlayout {

/// Principal angles between span(V) and span(V_hat) for two n x 2
/// orthonormal bases, from the SVD V^T V_hat = U diag(s) W^T.
struct PrincipalAngleDecomposition {
  Eigen::Matrix2d cross_gram;       ///< V^T V_hat
  Eigen::Matrix2d left_rotation;    ///< U
  Eigen::Matrix2d right_rotation;   ///< W (may be a reflection, det = -1)
  Eigen::Vector2d singular_values;  ///< cosines s1 >= s2, clamped to [0, 1]
  Eigen::MatrixXd z;                ///< V U
  Eigen::MatrixXd z_hat;            ///< V_hat W
  double sin_theta_frobenius = 0.0; ///< sqrt(sin^2 theta1 + sin^2 theta2)

  Eigen::Vector2d angles() const;
  double left_determinant() const { return left_rotation.determinant(); }
  double right_determinant() const { return right_rotation.determinant(); }

  /// z_hat U^T = V_hat W U^T: the estimate rotated into the frame of V, in
  /// which row i of z U^T is row i of V.
  Eigen::MatrixXd aligned_estimate() const;
};

/// Throws ValidationError unless both inputs are n x 2 with orthonormal
/// columns (tolerance 1e-8).
PrincipalAngleDecomposition principal_angles(const Eigen::MatrixXd& basis,
                                             const Eigen::MatrixXd& basis_hat);

/// 2 min(sqrt(2) ||M - M_hat||, ||M - M_hat||_F) / min(gap12, gap34).
/// The gaps are those of M. Throws ValidationError for a nonpositive gap.
double davis_kahan_bound(const SymmetricMatrix& m, const SymmetricMatrix& m_hat,
                         double gap12, double gap34);

/// ||z - z_hat||_F.
double frobenius_gap(const PrincipalAngleDecomposition& decomp);

struct LowerBoundWitness {
  double left = 0.0;   ///< 2n ||z - z_hat||_F^2
  double right = 0.0;  ///< sum over (i,j) in R of ||z_i - z_j||^2 / 2
  bool holds() const noexcept { return left >= right; }
};

LowerBoundWitness lower_bound_witness(const PrincipalAngleDecomposition& decomp,
                                      std::span<const IndexPair> pairs);

}  // namespace circlayout
