#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string_view>

#include "circlayout/model.hpp"
#include "circlayout/permutation.hpp"

namespace circlayout {

struct Seed {
  std::uint64_t value = 0;
  friend auto operator<=>(const Seed&, const Seed&) = default;
};

/// Independent child seed for stream `index` (splitmix64 finalizer over the
/// pair). Trial seeds are derived this way so that trials can run in any
/// order or concurrently.
Seed derive_seed(Seed master, std::uint64_t index) noexcept;

/// Seeded generator. Draws are bit-identical across platforms: doubles are
/// built from the top 53 bits and bounded integers use rejection, so no
/// implementation-defined std:: distributions are involved.
class Rng {
 public:
  explicit Rng(Seed seed) : engine_(seed.value) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform();

  /// Uniform on [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

/// Uniformly random permutation of {0..n-1} (Fisher-Yates).
Permutation random_permutation(std::size_t n, Rng& rng);

/// A random subgraph of the model. `hidden_truth[v]` is the model position
/// of presented vertex v.
struct RandomGraphInstance {
  CirculantModel model;
  SymmetricMatrix adjacency;
  Seed seed;
  std::optional<Permutation> hidden_truth;
};

/// Keeps each model edge independently with probability p. Each unordered
/// pair is decided once on the upper triangle and mirrored.
RandomGraphInstance sample(const CirculantModel& model, Seed seed);

/// Relabels vertices by a uniformly random permutation drawn from `seed`.
RandomGraphInstance relabel(const RandomGraphInstance& instance, Seed seed);

/// Relabels by `pi`: presented vertex v becomes pi[v]. The adjacency is
/// conjugated and the hidden truth becomes truth o pi^-1.
RandomGraphInstance relabel(const RandomGraphInstance& instance, const Permutation& pi);

/// Adjacency indexed by model position, undoing any relabeling.
SymmetricMatrix model_order_adjacency(const RandomGraphInstance& instance);

/// E = M_hat - M in model order. Entries are 1-p or -p on model edges and 0
/// elsewhere. Throws ValidationError if `model` differs from instance.model.
SymmetricMatrix perturbation(const RandomGraphInstance& instance, const CirculantModel& model);

/// Number of retained undirected edges.
long edge_count(const SymmetricMatrix& adjacency);

/// Bernoulli standard deviation sqrt(p(1-p)).
double bernoulli_sigma(double p) noexcept;

/// Writes "u v" lines (1-based, u < v) preceded by a "# vertices: n"
/// directive and optional comment lines.
void write_edge_list(std::ostream& out, const SymmetricMatrix& adjacency,
                     std::string_view comment = {});

/// Reads an edge list into a 0/1 adjacency matrix. '#' lines are comments;
/// a "# vertices: n" comment fixes the vertex count (isolated vertices
/// allowed). Without it, labels must cover 1..max contiguously. Rejects
/// u >= v, duplicate edges, and malformed lines.
SymmetricMatrix read_edge_list(std::istream& in);

}  // namespace circlayout
