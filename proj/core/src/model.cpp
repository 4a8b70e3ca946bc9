#include "circlayout/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "circlayout/error.hpp"

namespace circlayout {

SymmetricMatrix::SymmetricMatrix(Eigen::MatrixXd entries, double tolerance)
    : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    throw ValidationError("symmetric matrix: not square (" + std::to_string(entries_.rows()) +
                          "x" + std::to_string(entries_.cols()) + ")");
  }
  const Eigen::Index n = entries_.rows();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j + 1; i < n; ++i) {
      if (!(std::abs(entries_(i, j) - entries_(j, i)) <= tolerance)) {
        throw ValidationError("symmetric matrix: entry (" + std::to_string(i) + "," +
                              std::to_string(j) + ") differs from its transpose");
      }
    }
  }
}

SymmetricMatrix SymmetricMatrix::zero(Eigen::Index order) {
  return SymmetricMatrix(Eigen::MatrixXd::Zero(order, order));
}

bool SymmetricMatrix::has_zero_diagonal() const {
  return (entries_.diagonal().array() == 0.0).all();
}

int max_offset(int n) noexcept { return n / 2; }  // ceil((n-1)/2) for n >= 1

int density_offset_count(int n, double gamma, double c) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw ValidationError("gamma must lie in (0, 1]");
  if (!(c > 0.0)) throw ValidationError("c must be positive");
  const double raw = c * std::pow(static_cast<double>(n), gamma);
  return static_cast<int>(std::ceil(raw - 1e-9));
}

CirculantModel CirculantModel::create(int n, std::vector<int> offsets, double p,
                                      std::optional<double> gamma, std::optional<double> c) {
  if (n < 5) throw ValidationError("n must be at least 5, got " + std::to_string(n));
  if (!(p > 0.0 && p <= 1.0)) throw ValidationError("p must lie in (0, 1]");
  if (offsets.empty()) throw ValidationError("offset set S must be nonempty");
  std::sort(offsets.begin(), offsets.end());
  if (std::adjacent_find(offsets.begin(), offsets.end()) != offsets.end()) {
    throw ValidationError("offset set S contains duplicates");
  }
  for (int s : offsets) {
    if (s < 1 || s > max_offset(n)) {
      throw ValidationError("offset " + std::to_string(s) + " outside [1, " +
                            std::to_string(max_offset(n)) + "]");
    }
    if (n % 2 == 0 && 2 * s == n) {
      throw ValidationError("offset n/2 = " + std::to_string(s) +
                            " is not supported (it contributes a single neighbour)");
    }
  }
  if (gamma.has_value() != c.has_value()) {
    throw ValidationError("gamma and c must be given together");
  }
  if (gamma) {
    const int expected = density_offset_count(n, *gamma, *c);
    if (expected != static_cast<int>(offsets.size())) {
      throw ValidationError("|S| = " + std::to_string(offsets.size()) +
                            " does not match ceil(c n^gamma) = " + std::to_string(expected));
    }
  }
  CirculantModel model;
  model.n_ = n;
  model.offsets_ = std::move(offsets);
  model.p_ = p;
  model.gamma_ = gamma;
  model.c_ = c;
  return model;
}

CirculantModel CirculantModel::from_density(int n, double gamma, double c, double p) {
  if (n < 5) throw ValidationError("n must be at least 5, got " + std::to_string(n));
  const int count = density_offset_count(n, gamma, c);
  const int available = (n - 1) / 2;  // offsets 1..ceil((n-1)/2) minus n/2 when n is even
  if (count < 1 || count > available) {
    throw ValidationError("ceil(c n^gamma) = " + std::to_string(count) + " outside [1, " +
                          std::to_string(available) + "] for n = " + std::to_string(n));
  }
  std::vector<int> offsets(count);
  for (int s = 1; s <= count; ++s) offsets[s - 1] = s;
  return create(n, std::move(offsets), p, gamma, c);
}

std::vector<int> first_row(const CirculantModel& model) {
  const int n = model.n();
  std::vector<int> row(n, 0);
  for (int s : model.offsets()) {
    row[s] = 1;
    row[n - s] = 1;
  }
  return row;
}

SymmetricMatrix adjacency(const CirculantModel& model) {
  const int n = model.n();
  const auto row = first_row(model);
  Eigen::MatrixXd a(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) a(i, j) = row[((j - i) % n + n) % n];
  }
  return SymmetricMatrix(std::move(a));
}

SymmetricMatrix model_matrix(const CirculantModel& model) {
  return SymmetricMatrix(model.p() * adjacency(model).dense());
}

double circulant_eigenvalue(const CirculantModel& model, int frequency) {
  const double n = model.n();
  double sum = 0.0;
  for (int s : model.offsets()) {
    // Reduce j*s mod n first so the cosine argument stays in [0, 2 pi).
    const long r = (static_cast<long>(frequency) * s) % model.n();
    sum += 2.0 * std::cos(2.0 * std::numbers::pi * static_cast<double>(r) / n);
  }
  return sum;
}

double ClosedFormSpectrum::eigengap() const noexcept {
  return std::min(gap12, eigenvalues[2] - fourth_largest);
}

ClosedFormSpectrum closed_form_spectrum(const CirculantModel& model) {
  const int n = model.n();
  ClosedFormSpectrum out;
  out.eigenvalues[0] = circulant_eigenvalue(model, 0);
  out.eigenvalues[1] = circulant_eigenvalue(model, 1);
  out.eigenvalues[2] = out.eigenvalues[1];
  out.eigenvalues[3] = circulant_eigenvalue(model, 2);
  out.gap12 = out.eigenvalues[0] - out.eigenvalues[1];
  out.gap34 = out.eigenvalues[2] - out.eigenvalues[3];

  // Frequencies j and n-j share an eigenvalue, so j <= n/2 covers them all.
  double fourth = -std::numeric_limits<double>::infinity();
  for (int j = 2; j <= n / 2; ++j) fourth = std::max(fourth, circulant_eigenvalue(model, j));
  out.fourth_largest = fourth;

  const double scale = 2.0 / std::sqrt(2.0 * n);
  const double step = 2.0 * std::numbers::pi / n;
  out.eigenvectors.resize(n, 4);
  for (int i = 0; i < n; ++i) {
    out.eigenvectors(i, 0) = 1.0 / std::sqrt(static_cast<double>(n));
    out.eigenvectors(i, 1) = scale * std::cos(step * i);
    out.eigenvectors(i, 2) = scale * std::sin(step * i);
    out.eigenvectors(i, 3) = scale * std::cos(step * ((2 * i) % n));
  }
  return out;
}

double exact_pair_gap(int n, int k) {
  if (n < 1 || k < 0 || k >= n) {
    throw ValidationError("exact_pair_gap: need 0 <= k < n (n = " + std::to_string(n) +
                          ", k = " + std::to_string(k) + ")");
  }
  const double s = std::sin(std::numbers::pi * k / n);
  return 8.0 / n * s * s;
}

}  // namespace circlayout
