#pragma once

#include <Eigen/Dense>

#include "circlayout/model.hpp"

namespace circlayout {

/// Default degeneracy threshold, relative to max(1, |lambda_max|).
inline constexpr double kDefaultDegeneracyTolerance = 1e-6;

/// Top-k eigenpairs of a symmetric matrix.
struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;   ///< descending
  Eigen::MatrixXd eigenvectors;  ///< n x k, orthonormal columns
  Eigen::VectorXd residuals;     ///< ||A v - lambda v|| per pair
};

/// k algebraically largest eigenpairs, descending.
///
/// The basis is made canonical so that identical input gives identical
/// output: a simple eigenvector has its largest-magnitude entry positive, and
/// a cluster of eigenvalues closer than `relative_tolerance * max(1,
/// |lambda_max|)` is rotated so its first rows form a lower-triangular block
/// with a nonnegative diagonal. Clusters straddling position k are
/// canonicalized as a whole, so results for k and k+1 agree.
///
/// Throws ValidationError for k outside [1, n] and NumericalError if the
/// solver fails or a residual exceeds 1e-8 max(1, |lambda|).
SpectralDecomposition top_eigenpairs(const SymmetricMatrix& matrix, int k,
                                     double relative_tolerance = kDefaultDegeneracyTolerance);

/// Spectral norm max |lambda|.
double operator_norm(const SymmetricMatrix& matrix);

double frobenius_norm(const SymmetricMatrix& matrix);

}  // namespace circlayout
