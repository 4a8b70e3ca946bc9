#include "circlayout/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "circlayout/error.hpp"
#include "circlayout/spectral.hpp"

namespace circlayout {

namespace {

constexpr double kOrthonormalTolerance = 1e-8;

void require_orthonormal_pair(const Eigen::MatrixXd& basis, const char* name) {
  if (basis.cols() != 2) {
    throw ValidationError(std::string("principal_angles: ") + name + " must have 2 columns");
  }
  const Eigen::Matrix2d gram = basis.transpose() * basis;
  const double err = (gram - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff();
  if (!(err <= kOrthonormalTolerance)) {
    throw ValidationError(std::string("principal_angles: ") + name +
                          " columns are not orthonormal (error " + std::to_string(err) + ")");
  }
}

}  // namespace

Eigen::Vector2d PrincipalAngleDecomposition::angles() const {
  return singular_values.unaryExpr([](double s) { return std::acos(s); });
}

Eigen::MatrixXd PrincipalAngleDecomposition::aligned_estimate() const {
  return z_hat * left_rotation.transpose();
}

PrincipalAngleDecomposition principal_angles(const Eigen::MatrixXd& basis,
                                             const Eigen::MatrixXd& basis_hat) {
  if (basis.rows() != basis_hat.rows()) {
    throw ValidationError("principal_angles: bases have different lengths");
  }
  require_orthonormal_pair(basis, "V");
  require_orthonormal_pair(basis_hat, "V_hat");

  PrincipalAngleDecomposition out;
  out.cross_gram = basis.transpose() * basis_hat;
  Eigen::JacobiSVD<Eigen::Matrix2d> svd(out.cross_gram, Eigen::ComputeFullU | Eigen::ComputeFullV);
  out.left_rotation = svd.matrixU();
  out.right_rotation = svd.matrixV();
  out.singular_values = svd.singularValues().cwiseMax(0.0).cwiseMin(1.0);
  out.z = basis * out.left_rotation;
  out.z_hat = basis_hat * out.right_rotation;

  // ||(I - V V^T) V_hat||_F: the same quantity as sqrt(2 - s1^2 - s2^2)
  // without the cancellation when both cosines are close to 1.
  out.sin_theta_frobenius = (basis_hat - basis * out.cross_gram).norm();
  return out;
}

double davis_kahan_bound(const SymmetricMatrix& m, const SymmetricMatrix& m_hat, double gap12,
                         double gap34) {
  if (!(gap12 > 0.0) || !(gap34 > 0.0)) {
    throw ValidationError("davis_kahan_bound: eigengaps must be positive (gap12 = " +
                          std::to_string(gap12) + ", gap34 = " + std::to_string(gap34) + ")");
  }
  if (m.order() != m_hat.order()) throw ValidationError("davis_kahan_bound: order mismatch");
  const SymmetricMatrix difference(m.dense() - m_hat.dense());
  const double numerator =
      std::min(std::sqrt(2.0) * operator_norm(difference), frobenius_norm(difference));
  return 2.0 * numerator / std::min(gap12, gap34);
}

double frobenius_gap(const PrincipalAngleDecomposition& decomp) {
  return (decomp.z - decomp.z_hat).norm();
}

LowerBoundWitness lower_bound_witness(const PrincipalAngleDecomposition& decomp,
                                      std::span<const IndexPair> pairs) {
  const auto n = decomp.z.rows();
  const double gap = frobenius_gap(decomp);
  LowerBoundWitness out;
  out.left = 2.0 * static_cast<double>(n) * gap * gap;
  for (const auto& [i, j] : pairs) {
    if (i < 0 || j < 0 || i >= n || j >= n) {
      throw ValidationError("lower_bound_witness: pair index out of range");
    }
    out.right += (decomp.z.row(i) - decomp.z.row(j)).squaredNorm() / 2.0;
  }
  return out;
}

}  // namespace circlayout
