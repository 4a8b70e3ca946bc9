#include "circlayout/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include "circlayout/error.hpp"

namespace circlayout {

namespace {

std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

Seed derive_seed(Seed master, std::uint64_t index) noexcept {
  return Seed{splitmix64(splitmix64(master.value) ^ splitmix64(index + 0x632BE59BD9B4E019ULL))};
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw ValidationError("Rng::below: bound must be positive");
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = engine_();
    if (r >= threshold) return r % bound;
  }
}

Permutation random_permutation(std::size_t n, Rng& rng) {
  std::vector<int> images(n);
  for (std::size_t i = 0; i < n; ++i) images[i] = static_cast<int>(i);
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(images[i - 1], images[j]);
  }
  return Permutation(std::move(images));
}

RandomGraphInstance sample(const CirculantModel& model, Seed seed) {
  const int n = model.n();
  const auto row = first_row(model);
  const double p = model.p();
  Rng rng(seed);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (row[j - i] == 0) continue;
      if (rng.uniform() < p) {
        a(i, j) = 1.0;
        a(j, i) = 1.0;
      }
    }
  }
  return RandomGraphInstance{model, SymmetricMatrix(std::move(a)), seed,
                             Permutation::identity(static_cast<std::size_t>(n))};
}

RandomGraphInstance relabel(const RandomGraphInstance& instance, Seed seed) {
  Rng rng(seed);
  return relabel(instance, random_permutation(static_cast<std::size_t>(instance.model.n()), rng));
}

RandomGraphInstance relabel(const RandomGraphInstance& instance, const Permutation& pi) {
  if (!instance.hidden_truth) throw ValidationError("relabel: instance carries no hidden truth");
  const auto n = instance.adjacency.order();
  if (static_cast<Eigen::Index>(pi.size()) != n) throw ValidationError("relabel: permutation size mismatch");

  const auto& a = instance.adjacency.dense();
  Eigen::MatrixXd b(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) b(pi[i], pi[j]) = a(i, j);
  }
  const Permutation& truth = *instance.hidden_truth;
  std::vector<int> new_truth(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) new_truth[pi[i]] = truth[i];

  return RandomGraphInstance{instance.model, SymmetricMatrix(std::move(b)), instance.seed,
                             Permutation(std::move(new_truth))};
}

SymmetricMatrix model_order_adjacency(const RandomGraphInstance& instance) {
  if (!instance.hidden_truth || instance.hidden_truth->is_identity()) return instance.adjacency;
  const Permutation& truth = *instance.hidden_truth;
  const auto n = instance.adjacency.order();
  const auto& a = instance.adjacency.dense();
  Eigen::MatrixXd b(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) b(truth[i], truth[j]) = a(i, j);
  }
  return SymmetricMatrix(std::move(b));
}

SymmetricMatrix perturbation(const RandomGraphInstance& instance, const CirculantModel& model) {
  if (!(instance.model == model)) {
    throw ValidationError("perturbation: instance was sampled from a different model");
  }
  const SymmetricMatrix m_hat = model_order_adjacency(instance);
  return SymmetricMatrix(m_hat.dense() - model_matrix(model).dense());
}

long edge_count(const SymmetricMatrix& adjacency) {
  long count = 0;
  const auto n = adjacency.order();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < j; ++i) count += adjacency(i, j) != 0.0 ? 1 : 0;
  }
  return count;
}

double bernoulli_sigma(double p) noexcept { return std::sqrt(p * (1.0 - p)); }

void write_edge_list(std::ostream& out, const SymmetricMatrix& adjacency, std::string_view comment) {
  const auto n = adjacency.order();
  if (!comment.empty()) {
    std::istringstream lines{std::string(comment)};
    for (std::string line; std::getline(lines, line);) out << "# " << line << '\n';
  }
  out << "# vertices: " << n << '\n';
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (adjacency(i, j) != 0.0) out << (i + 1) << ' ' << (j + 1) << '\n';
    }
  }
}

SymmetricMatrix read_edge_list(std::istream& in) {
  std::optional<long> declared;
  std::vector<std::pair<long, long>> edges;
  std::set<std::pair<long, long>> seen;
  long max_label = 0;
  long line_no = 0;

  for (std::string line; std::getline(in, line);) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      std::istringstream directive(line.substr(first + 1));
      std::string key;
      long value = 0;
      if (directive >> key && key == "vertices:") {
        if (!(directive >> value) || value < 1) {
          throw ValidationError("edge list line " + std::to_string(line_no) + ": bad vertex count");
        }
        declared = value;
      }
      continue;
    }
    std::istringstream fields(line);
    long u = 0;
    long v = 0;
    std::string extra;
    if (!(fields >> u >> v) || (fields >> extra)) {
      throw ValidationError("edge list line " + std::to_string(line_no) + ": expected \"u v\"");
    }
    if (u < 1 || v < 1) {
      throw ValidationError("edge list line " + std::to_string(line_no) + ": labels are 1-based");
    }
    if (u >= v) {
      throw ValidationError("edge list line " + std::to_string(line_no) + ": need u < v");
    }
    if (!seen.emplace(u, v).second) {
      throw ValidationError("edge list line " + std::to_string(line_no) + ": duplicate edge");
    }
    edges.emplace_back(u, v);
    max_label = std::max(max_label, v);
  }

  long n = 0;
  if (declared) {
    n = *declared;
    if (max_label > n) {
      throw ValidationError("edge list: label " + std::to_string(max_label) +
                            " exceeds declared vertex count " + std::to_string(n));
    }
  } else {
    n = max_label;
    if (n == 0) throw ValidationError("edge list: no edges and no vertex count");
    std::vector<bool> present(static_cast<std::size_t>(n) + 1, false);
    for (auto [u, v] : edges) present[u] = present[v] = true;
    for (long label = 1; label <= n; ++label) {
      if (!present[label]) {
        throw ValidationError("edge list: vertex " + std::to_string(label) +
                              " missing; labels must be contiguous 1.." + std::to_string(n));
      }
    }
  }

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (auto [u, v] : edges) {
    a(u - 1, v - 1) = 1.0;
    a(v - 1, u - 1) = 1.0;
  }
  return SymmetricMatrix(std::move(a));
}

}  // namespace circlayout
