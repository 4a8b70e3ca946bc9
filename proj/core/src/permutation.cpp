#include "circlayout/permutation.hpp"

#include <numeric>

#include "circlayout/error.hpp"

namespace circlayout {

bool is_bijection(std::span<const int> images) noexcept {
  const auto n = images.size();
  std::vector<bool> seen(n, false);
  for (int v : images) {
    if (v < 0 || static_cast<std::size_t>(v) >= n || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  if (!is_bijection(images_)) {
    throw ValidationError("permutation: images are not a bijection on {0..n-1}");
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<int> images(n);
  std::iota(images.begin(), images.end(), 0);
  return Permutation(std::move(images));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<int>(i);
  return Permutation(std::move(inv));
}

Permutation Permutation::after(const Permutation& inner) const {
  if (inner.size() != size()) throw ValidationError("permutation: size mismatch in composition");
  std::vector<int> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = images_[inner[i]];
  return Permutation(std::move(out));
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != static_cast<int>(i)) return false;
  }
  return true;
}

}  // namespace circlayout
