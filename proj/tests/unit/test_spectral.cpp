#include <cmath>

#include "circlayout/error.hpp"
#include "circlayout/model.hpp"
#include "circlayout/spectral.hpp"
#include "circlayout/sampling.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace circlayout;

namespace {

SymmetricMatrix random_symmetric(int n, std::uint64_t seed) {
  Rng rng(Seed{seed});
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = 2.0 * rng.uniform() - 1.0;
  return SymmetricMatrix(a);
}

}  // namespace

TEST_CASE("diagonal input") {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(3, 3);
  d.diagonal() << 3.0, 2.0, 1.0;
  const auto result = top_eigenpairs(SymmetricMatrix(d), 2);
  CHECK(result.eigenvalues(0) == doctest::Approx(3.0));
  CHECK(result.eigenvalues(1) == doctest::Approx(2.0));
  CHECK(result.eigenvectors.col(0).isApprox(Eigen::Vector3d(1, 0, 0)));
  CHECK(result.eigenvectors.col(1).isApprox(Eigen::Vector3d(0, 1, 0)));
}

TEST_CASE("two by two swap") {
  Eigen::Matrix2d a;
  a << 0, 1, 1, 0;
  const auto result = top_eigenpairs(SymmetricMatrix(a), 2);
  CHECK(result.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(result.eigenvalues(1) == doctest::Approx(-1.0));
  CHECK(operator_norm(SymmetricMatrix(a)) == doctest::Approx(1.0));
}

TEST_CASE("circulant top eigenvalues match the closed form") {
  const auto model = CirculantModel::create(10, {1, 2, 3}, 1.0);
  const auto result = top_eigenpairs(adjacency(model), 4);
  const auto closed = closed_form_spectrum(model);
  CHECK(std::abs(result.eigenvalues(0) - closed.eigenvalues[0]) < 1e-8);
  CHECK(std::abs(result.eigenvalues(1) - closed.eigenvalues[1]) < 1e-8);
  CHECK(std::abs(result.eigenvalues(2) - closed.eigenvalues[2]) < 1e-8);
  CHECK(std::abs(result.eigenvalues(3) - closed.fourth_largest) < 1e-8);
}

TEST_CASE("residuals, ordering and orthonormality") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto m = random_symmetric(40, seed);
    const auto result = top_eigenpairs(m, 6);
    for (int i = 0; i < 6; ++i) {
      CHECK(result.residuals(i) <= 1e-8 * std::max(1.0, std::abs(result.eigenvalues(i))));
      if (i > 0) CHECK(result.eigenvalues(i) <= result.eigenvalues(i - 1));
    }
    CHECK((result.eigenvectors.transpose() * result.eigenvectors - Eigen::MatrixXd::Identity(6, 6))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
    const auto oracle_values = oracle::jacobi_eigenvalues(m.dense());
    for (int i = 0; i < 6; ++i) CHECK(std::abs(result.eigenvalues(i) - oracle_values[i]) < 1e-9);
  }
}

TEST_CASE("k and k + 1 agree on the shared eigenvalues") {
  const auto m = adjacency(CirculantModel::create(50, {1, 2, 3, 4, 5}, 1.0));
  const auto four = top_eigenpairs(m, 4);
  const auto five = top_eigenpairs(m, 5);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(four.eigenvalues(i) - five.eigenvalues(i)) < 1e-8);
}

TEST_CASE("degenerate pair gets a reproducible canonical basis") {
  const auto m = adjacency(CirculantModel::create(30, {1, 2}, 1.0));
  const auto a = top_eigenpairs(m, 3);
  const auto b = top_eigenpairs(m, 3);
  CHECK(a.eigenvectors == b.eigenvectors);
  // Leading 2 x 2 block of the pair is lower triangular with a nonnegative diagonal.
  CHECK(std::abs(a.eigenvectors(0, 2)) < 1e-12);
  CHECK(a.eigenvectors(0, 1) >= 0.0);
  CHECK(a.eigenvectors(1, 2) >= 0.0);
}

TEST_CASE("full spectrum of a highly degenerate matrix") {
  std::vector<int> offsets;
  for (int s = 1; s <= 50; ++s) offsets.push_back(s);
  const auto model = CirculantModel::create(200, offsets, 1.0);
  const auto instance = relabel(sample(model, Seed{0}), Seed{21});
  CHECK_NOTHROW(top_eigenpairs(instance.adjacency, 200));
}

TEST_CASE("operator and Frobenius norms") {
  CHECK(operator_norm(SymmetricMatrix::zero(5)) == 0.0);
  CHECK(frobenius_norm(SymmetricMatrix::zero(5)) == 0.0);
  CHECK(frobenius_norm(SymmetricMatrix(Eigen::MatrixXd::Identity(4, 4))) == doctest::Approx(2.0));
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(6, 6);
  e(0, 1) = e(1, 0) = 0.3;
  e(2, 4) = e(4, 2) = -0.3;
  e(3, 5) = e(5, 3) = 0.3;
  CHECK(frobenius_norm(SymmetricMatrix(e)) == doctest::Approx(0.3 * std::sqrt(6.0)));
  const auto m = random_symmetric(50, 77);
  const auto values = oracle::jacobi_eigenvalues(m.dense());
  const double expected = std::max(std::abs(values.front()), std::abs(values.back()));
  CHECK(std::abs(operator_norm(m) - expected) <= 1e-6 * expected);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(top_eigenpairs(SymmetricMatrix::zero(3), 0), ValidationError);
  CHECK_THROWS_AS(top_eigenpairs(SymmetricMatrix::zero(3), 4), ValidationError);
  Eigen::Matrix2d asym;
  asym << 0, 1, 2, 0;
  CHECK_THROWS_AS(SymmetricMatrix{asym}, ValidationError);
}
