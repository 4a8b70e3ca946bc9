#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace circlayout {

/// Dense real symmetric matrix. Used for the adjacency matrix A, the model
/// matrix M = pA, a sampled adjacency and the perturbation E.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;

  /// Throws ValidationError if `entries` is not square or
  /// |a(i,j) - a(j,i)| > tolerance for some pair.
  explicit SymmetricMatrix(Eigen::MatrixXd entries, double tolerance = 0.0);

  static SymmetricMatrix zero(Eigen::Index order);

  Eigen::Index order() const noexcept { return entries_.rows(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }
  const Eigen::MatrixXd& dense() const noexcept { return entries_; }

  bool has_zero_diagonal() const;

  friend bool operator==(const SymmetricMatrix& a, const SymmetricMatrix& b) {
    return a.entries_.rows() == b.entries_.rows() && a.entries_ == b.entries_;
  }

 private:
  Eigen::MatrixXd entries_;
};

/// Circulant graph H on n vertices with offset set S, plus the edge
/// retention probability p of its random subgraphs. Optional (gamma, c)
/// record a density parametrization |S| = ceil(c n^gamma).
class CirculantModel {
 public:
  /// Validates and sorts `offsets`. Rejects n < 5, p outside (0, 1], empty or
  /// duplicate offsets, offsets outside [1, ceil((n-1)/2)], and n/2 for even n.
  static CirculantModel create(int n, std::vector<int> offsets, double p,
                               std::optional<double> gamma = std::nullopt,
                               std::optional<double> c = std::nullopt);

  /// S = {1, ..., ceil(c n^gamma)}.
  static CirculantModel from_density(int n, double gamma, double c, double p);

  int n() const noexcept { return n_; }
  std::span<const int> offsets() const noexcept { return offsets_; }
  double p() const noexcept { return p_; }
  std::optional<double> gamma() const noexcept { return gamma_; }
  std::optional<double> c() const noexcept { return c_; }

  /// Every vertex of H has degree 2|S|.
  int degree() const noexcept { return 2 * static_cast<int>(offsets_.size()); }
  long edge_count() const noexcept { return static_cast<long>(n_) * static_cast<long>(offsets_.size()); }

  friend bool operator==(const CirculantModel&, const CirculantModel&) = default;

 private:
  CirculantModel() = default;

  int n_ = 0;
  std::vector<int> offsets_;
  double p_ = 1.0;
  std::optional<double> gamma_;
  std::optional<double> c_;
};

/// Largest admissible offset, ceil((n-1)/2).
int max_offset(int n) noexcept;

/// ceil(c n^gamma), with a 1e-9 guard so that exact products like 0.3 * 10
/// are not pushed up by roundoff.
int density_offset_count(int n, double gamma, double c);

/// First row of A: entry k (0-based) is 1 iff k in S or n-k in S.
std::vector<int> first_row(const CirculantModel& model);

/// Adjacency matrix of H; row i is the first row shifted cyclically by i.
SymmetricMatrix adjacency(const CirculantModel& model);

/// M = p A.
SymmetricMatrix model_matrix(const CirculantModel& model);

/// Eigenvalue of H at frequency j: sum over s in S of 2 cos(2 pi j s / n).
double circulant_eigenvalue(const CirculantModel& model, int frequency);

/// Closed-form top of the spectrum of H (p = 1; scale by p for M).
///
/// `eigenvalues` and `eigenvectors` follow the textbook frequency formulas:
/// lambda1 at frequency 0, the degenerate pair lambda2 = lambda3 at frequency
/// 1 (cosine and sine vectors), lambda4 at frequency 2. These are the four
/// largest eigenvalues only when S is concentrated at low offsets;
/// `fourth_largest` is the true fourth largest eigenvalue over all
/// frequencies, and `eigengap()` is the exact denominator a Davis-Kahan bound
/// on span{v2, v3} needs.
struct ClosedFormSpectrum {
  std::array<double, 4> eigenvalues{};
  Eigen::MatrixXd eigenvectors;  ///< n x 4, columns v1..v4, unit norm
  double gap12 = 0.0;            ///< lambda1 - lambda2
  double gap34 = 0.0;            ///< lambda3 - lambda4 (frequency-2 formula)
  double fourth_largest = 0.0;   ///< max eigenvalue over frequencies j not in {0, 1, n-1}

  /// min(lambda1 - lambda2, lambda3 - fourth_largest). Positive iff the
  /// frequency-1 pair is strictly the second largest eigenvalue of H.
  double eigengap() const noexcept;
};

ClosedFormSpectrum closed_form_spectrum(const CirculantModel& model);

/// (v2_i - v2_{i+k})^2 + (v3_i - v3_{i+k})^2 = (8/n) sin^2(pi k / n), the
/// same for every i. Requires 0 <= k < n.
double exact_pair_gap(int n, int k);

}  // namespace circlayout
