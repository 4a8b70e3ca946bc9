#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace circlayout {

/// Bijection on {0, ..., n-1}. Vertex labels are 0-based internally and
/// 1-based in every file format.
class Permutation {
 public:
  Permutation() = default;

  /// Throws ValidationError unless `images` is a bijection on [0, size).
  explicit Permutation(std::vector<int> images);

  static Permutation identity(std::size_t n);

  std::size_t size() const noexcept { return images_.size(); }
  int operator[](std::size_t i) const { return images_[i]; }
  std::span<const int> images() const noexcept { return images_; }

  Permutation inverse() const;

  /// Composition: result[i] = (*this)[inner[i]].
  Permutation after(const Permutation& inner) const;

  bool is_identity() const noexcept;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

bool is_bijection(std::span<const int> images) noexcept;

/// Ordered index pair (i < j) used for inverted-pair sets.
struct IndexPair {
  int i = 0;
  int j = 0;
  friend bool operator==(const IndexPair&, const IndexPair&) = default;
};

}  // namespace circlayout
