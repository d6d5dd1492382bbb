#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace ipomset {

/// Dense binary relation on {0, ..., n-1}.
class Relation {
 public:
  Relation() = default;
  explicit Relation(std::size_t n) : n_(n), bits_(n * n, 0) {}

  std::size_t size() const noexcept { return n_; }

  bool operator()(std::size_t i, std::size_t j) const { return bits_[i * n_ + j] != 0; }
  void set(std::size_t i, std::size_t j, bool value = true) { bits_[i * n_ + j] = value ? 1 : 0; }

  std::size_t pair_count() const {
    std::size_t c = 0;
    for (auto b : bits_) c += b;
    return c;
  }

  /// Warshall transitive closure, in place.
  void close() {
    for (std::size_t k = 0; k < n_; ++k)
      for (std::size_t i = 0; i < n_; ++i) {
        if (!(*this)(i, k)) continue;
        for (std::size_t j = 0; j < n_; ++j)
          if ((*this)(k, j)) set(i, j);
      }
  }

  bool is_transitive() const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        if (!(*this)(i, j)) continue;
        for (std::size_t k = 0; k < n_; ++k)
          if ((*this)(j, k) && !(*this)(i, k)) return false;
      }
    return true;
  }

  /// First element related to itself, if any. On a closed relation this is a
  /// witness for a cycle.
  std::optional<std::size_t> reflexive_witness() const {
    for (std::size_t i = 0; i < n_; ++i)
      if ((*this)(i, i)) return i;
    return std::nullopt;
  }

  /// Permutes the relation: result(map[i], map[j]) = (*this)(i, j).
  Relation mapped(const std::vector<std::size_t>& map, std::size_t target_size) const {
    Relation r(target_size);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if ((*this)(i, j)) r.set(map[i], map[j]);
    return r;
  }

  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> bits_;
};

}  // namespace ipomset
