#include "circlayout/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "circlayout/error.hpp"

extern "C" void dsyevd_(const char* jobz, const char* uplo, const int* n, double* a, const int* lda,
                        double* w, double* work, const int* lwork, int* iwork, const int* liwork,
                        int* info);

namespace circlayout {

namespace {

constexpr double kResidualFactor = 1e-8;

struct AscendingEigen {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

// LAPACK divide and conquer; used when Eigen's implicit QR runs out of
// iterations, which happens on some highly degenerate adjacency spectra.
bool lapack_eigensolve(const Eigen::MatrixXd& matrix, bool want_vectors, AscendingEigen& out) {
  const int n = static_cast<int>(matrix.rows());
  const char jobz = want_vectors ? 'V' : 'N';
  const char uplo = 'L';
  Eigen::MatrixXd a = matrix;
  out.values.resize(n);
  int info = 0;
  int lwork = -1;
  int liwork = -1;
  double work_query = 0.0;
  int iwork_query = 0;
  dsyevd_(&jobz, &uplo, &n, a.data(), &n, out.values.data(), &work_query, &lwork, &iwork_query,
          &liwork, &info);
  if (info != 0) return false;
  lwork = static_cast<int>(work_query);
  liwork = iwork_query;
  std::vector<double> work(static_cast<std::size_t>(lwork));
  std::vector<int> iwork(static_cast<std::size_t>(liwork));
  dsyevd_(&jobz, &uplo, &n, a.data(), &n, out.values.data(), work.data(), &lwork, iwork.data(),
          &liwork, &info);
  if (info != 0) return false;
  if (want_vectors) out.vectors = std::move(a);
  return true;
}

AscendingEigen eigensolve(const Eigen::MatrixXd& matrix, bool want_vectors, const char* caller) {
  AscendingEigen out;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      matrix, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() == Eigen::Success) {
    out.values = solver.eigenvalues();
    if (want_vectors) out.vectors = solver.eigenvectors();
    return out;
  }
  if (!lapack_eigensolve(matrix, want_vectors, out)) {
    throw NumericalError(std::string(caller) + ": symmetric eigensolver did not converge");
  }
  return out;
}

void canonicalize_sign(Eigen::Ref<Eigen::VectorXd> v) {
  Eigen::Index arg = 0;
  v.cwiseAbs().maxCoeff(&arg);
  if (v(arg) < 0.0) v = -v;
}

// Rotates an orthonormal basis Q of an invariant subspace so that its
// leading m x m block is lower triangular with a nonnegative diagonal.
void canonicalize_cluster(Eigen::Ref<Eigen::MatrixXd> q) {
  const Eigen::Index m = q.cols();
  const Eigen::MatrixXd lead = q.topRows(m).transpose();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(lead);
  const Eigen::MatrixXd rotation = qr.householderQ() * Eigen::MatrixXd::Identity(m, m);
  Eigen::MatrixXd rotated = q * rotation;
  for (Eigen::Index c = 0; c < m; ++c) {
    if (rotated(c, c) < 0.0) rotated.col(c) = -rotated.col(c);
  }
  q = rotated;
}

}  // namespace

SpectralDecomposition top_eigenpairs(const SymmetricMatrix& matrix, int k, double relative_tolerance) {
  const Eigen::Index n = matrix.order();
  if (k < 1 || k > n) {
    throw ValidationError("top_eigenpairs: k = " + std::to_string(k) + " outside [1, " +
                          std::to_string(n) + "]");
  }
  const AscendingEigen solved = eigensolve(matrix.dense(), true, "top_eigenpairs");
  const Eigen::VectorXd values = solved.values.reverse();
  Eigen::MatrixXd vectors = solved.vectors.rowwise().reverse();

  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
  const double threshold = relative_tolerance * scale;

  // Walk clusters that start inside the top k, extending past k if needed.
  Eigen::Index start = 0;
  while (start < k) {
    Eigen::Index end = start + 1;
    while (end < n && values(end - 1) - values(end) < threshold) ++end;
    const Eigen::Index size = end - start;
    if (size == 1) {
      canonicalize_sign(vectors.col(start));
    } else {
      // A rotation mixes eigenvalues across the cluster width; keep the
      // solver's basis when that would break the residual contract.
      Eigen::MatrixXd rotated = vectors.middleCols(start, size);
      canonicalize_cluster(rotated);
      const Eigen::MatrixXd product = matrix.dense() * rotated;
      bool within = true;
      for (Eigen::Index c = 0; c < size && within; ++c) {
        const double lambda = values(start + c);
        within = (product.col(c) - lambda * rotated.col(c)).norm() <=
                 kResidualFactor * std::max(1.0, std::abs(lambda));
      }
      if (within) {
        vectors.middleCols(start, size) = rotated;
      } else {
        for (Eigen::Index c = start; c < end; ++c) canonicalize_sign(vectors.col(c));
      }
    }
    start = end;
  }

  SpectralDecomposition out;
  out.eigenvalues = values.head(k);
  out.eigenvectors = vectors.leftCols(k);
  out.residuals.resize(k);
  const Eigen::MatrixXd product = matrix.dense() * out.eigenvectors;
  for (Eigen::Index i = 0; i < k; ++i) {
    out.residuals(i) = (product.col(i) - out.eigenvalues(i) * out.eigenvectors.col(i)).norm();
    const double bound = kResidualFactor * std::max(1.0, std::abs(out.eigenvalues(i)));
    if (!(out.residuals(i) <= bound)) {
      throw NumericalError("top_eigenpairs: residual " + std::to_string(out.residuals(i)) +
                           " for eigenpair " + std::to_string(i + 1) + " exceeds " +
                           std::to_string(bound));
    }
  }
  return out;
}

double operator_norm(const SymmetricMatrix& matrix) {
  if (matrix.order() == 0) return 0.0;
  return eigensolve(matrix.dense(), false, "operator_norm").values.cwiseAbs().maxCoeff();
}

double frobenius_norm(const SymmetricMatrix& matrix) { return matrix.dense().norm(); }

}  // namespace circlayout
