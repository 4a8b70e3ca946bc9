#include <cmath>
#include <numbers>
#include <sstream>

#include "circlayout/error.hpp"
#include "circlayout/layout.hpp"
#include "circlayout/metrics.hpp"
#include "circlayout/sampling.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace circlayout;

TEST_CASE("angular coordinates of the axis points") {
  const std::vector<double> x{1, 0, -1, 0};
  const std::vector<double> y{0, 1, 0, -1};
  const auto e = angular_coordinates(x, y);
  CHECK(e.angles[0] == 0.0);
  CHECK(e.angles[1] == doctest::Approx(std::numbers::pi / 2));
  CHECK(e.angles[2] == doctest::Approx(std::numbers::pi));
  CHECK(e.angles[3] == doctest::Approx(3 * std::numbers::pi / 2));
  CHECK(e.origin_vertices.empty());
}

TEST_CASE("points at the origin") {
  const std::vector<double> zero(4, 0.0);
  const auto e = angular_coordinates(zero, zero);
  for (double phi : e.angles) CHECK(phi == 0.0);
  CHECK(e.origin_vertices.size() == 4);
  const std::vector<double> y{-1e-300, 0, 0, 0};
  const std::vector<double> x{1, 1, 1, 1};
  for (double phi : angular_coordinates(x, y).angles) CHECK((phi >= 0.0 && phi < 2 * std::numbers::pi));
}

TEST_CASE("model eigenvector embedding is in order") {
  for (int n : {7, 10, 33, 100}) {
    const auto spectrum = closed_form_spectrum(CirculantModel::create(n, {1, 2}, 1.0));
    const Eigen::VectorXd x = spectrum.eigenvectors.col(1);
    const Eigen::VectorXd y = spectrum.eigenvectors.col(2);
    const auto e = angular_coordinates({x.data(), std::size_t(n)}, {y.data(), std::size_t(n)});
    for (int i = 0; i < n; ++i) {
      CHECK(std::abs(e.angles[i] - 2 * std::numbers::pi * i / n) < 1e-12);
    }
    CHECK(order_by_angle(e).ranks.is_identity());
  }
}

TEST_CASE("ordering and ties") {
  CHECK(order_by_angle(std::vector<double>{0.1, 0.2, 0.3}).ranks.is_identity());
  std::vector<double> angles{5, 6, 7, 1.5, 8, 9, 10, 1.5};
  const auto order = order_by_angle(angles);
  CHECK(order.ranks[3] == 0);
  CHECK(order.ranks[7] == 1);
}

TEST_CASE("exact recovery at p = 1") {
  const auto model = CirculantModel::create(10, {1, 2, 3}, 1.0);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto instance = relabel(sample(model, Seed{seed}), Seed{seed + 10});
    const auto layout = recover_layout(instance.adjacency);
    CHECK(kendall_distance(align_to_truth(layout.order, *instance.hidden_truth).ranks) == 0);
  }
}

TEST_CASE("recovery beats a random order") {
  std::vector<int> offsets;
  for (int s = 1; s <= 10; ++s) offsets.push_back(s);
  const auto model = CirculantModel::create(100, offsets, 0.9);
  const auto instance = relabel(sample(model, Seed{31}), Seed{32});
  const auto layout = recover_layout(instance.adjacency);
  CHECK(kendall_distance(align_to_truth(layout.order, *instance.hidden_truth).ranks) < 100 * 99 / 4);
  const auto again = recover_layout(instance.adjacency);
  CHECK(again.order.ranks == layout.order.ranks);
}

TEST_CASE("alignment of rotations and reflections") {
  const int n = 12;
  const auto truth = Permutation::identity(n);
  std::vector<int> rotated(n), reflected(n);
  for (int i = 0; i < n; ++i) {
    rotated[i] = (i + 3) % n;
    reflected[i] = (n - i) % n;
  }
  const auto r = align_to_truth(CircularOrder{Permutation(rotated), 1, 0}, truth);
  CHECK(kendall_distance(r.ranks) == 0);
  CHECK(r.rotation_offset == 3);
  CHECK(r.orientation == 1);
  const auto f = align_to_truth(CircularOrder{Permutation(reflected), 1, 0}, truth);
  CHECK(kendall_distance(f.ranks) == 0);
  CHECK(f.orientation == -1);
}

TEST_CASE("alignment matches exhaustive search") {
  Rng rng(Seed{2024});
  for (int n : {5, 8, 8, 8, 13, 40}) {
    for (int rep = 0; rep < 20; ++rep) {
      const auto order = random_permutation(n, rng);
      const auto truth = random_permutation(n, rng);
      const auto aligned = align_to_truth(CircularOrder{order, 1, 0}, truth);
      const auto tau = ranks_in_model_order(CircularOrder{order, 1, 0}, truth);
      const auto expected = oracle::best_symmetry({tau.images().begin(), tau.images().end()});
      CHECK(kendall_distance(aligned.ranks) == expected.distance);
      CHECK(aligned.rotation_offset == expected.offset);
      CHECK(aligned.orientation == expected.orientation);
    }
  }
}

TEST_CASE("layout input validation") {
  CHECK_THROWS_AS(recover_layout(SymmetricMatrix::zero(4)), ValidationError);
  Eigen::MatrixXd weighted = Eigen::MatrixXd::Zero(6, 6);
  weighted(0, 1) = weighted(1, 0) = 0.5;
  CHECK_THROWS_AS(recover_layout(SymmetricMatrix(weighted)), ValidationError);
  Eigen::MatrixXd loop = Eigen::MatrixXd::Zero(6, 6);
  loop(2, 2) = 1.0;
  CHECK_THROWS_AS(recover_layout(SymmetricMatrix(loop)), ValidationError);
}

TEST_CASE("radial spread shrinks as p grows") {
  std::vector<int> offsets;
  for (int s = 1; s <= 30; ++s) offsets.push_back(s);
  std::vector<double> medians;
  for (double p : {0.3, 0.5, 0.9}) {
    const auto model = CirculantModel::create(300, offsets, p);
    std::vector<double> spreads;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      spreads.push_back(radial_spread(recover_layout(sample(model, Seed{seed}).adjacency).embedding));
    }
    medians.push_back(median(spreads));
  }
  CHECK(medians[0] > medians[1]);
  CHECK(medians[1] > medians[2]);
}

TEST_CASE("point cloud csv") {
  const auto layout = recover_layout(adjacency(CirculantModel::create(8, {1}, 1.0)));
  std::ostringstream out;
  write_point_cloud_csv(out, layout.embedding, layout.order);
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == "vertex,x,y,phi,rank");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 8);
}
