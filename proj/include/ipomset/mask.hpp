#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace ipomset {

/// Subset of positions in a conclist. Conclists are limited to 64 events.
using Mask = std::uint64_t;

inline constexpr std::size_t kMaxConclist = 64;

namespace mask {

inline constexpr Mask bit(std::size_t i) { return Mask{1} << i; }

inline constexpr Mask full(std::size_t n) { return n >= 64 ? ~Mask{0} : bit(n) - 1; }

inline constexpr bool test(Mask m, std::size_t i) { return (m >> i) & 1U; }

inline constexpr std::size_t count(Mask m) { return static_cast<std::size_t>(std::popcount(m)); }

inline constexpr bool subset(Mask a, Mask b) { return (a & ~b) == 0; }

inline std::vector<std::size_t> positions(Mask m) {
  std::vector<std::size_t> out;
  while (m != 0) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    m &= m - 1;
  }
  return out;
}

// `sub` indexes the positions of an n-element sequence that are not in
// `holes`; returns the same set indexed by the full sequence.
inline Mask embed(Mask sub, Mask holes, std::size_t n) {
  Mask out = 0;
  std::size_t j = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (test(holes, i)) continue;
    if (test(sub, j)) out |= bit(i);
    ++j;
  }
  return out;
}

// Inverse of embed: restricts `m` to the non-hole positions and renumbers.
inline Mask compress(Mask m, Mask holes, std::size_t n) {
  Mask out = 0;
  std::size_t j = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (test(holes, i)) continue;
    if (test(m, i)) out |= bit(j);
    ++j;
  }
  return out;
}

/// Calls f(s) for every subset s of m, including 0 and m itself.
template <class F>
void for_each_subset(Mask m, F&& f) {
  Mask s = 0;
  while (true) {
    f(s);
    if (s == m) break;
    s = (s - m) & m;
  }
}

}  // namespace mask

template <class T>
std::vector<T> remove_positions(const std::vector<T>& seq, Mask drop) {
  std::vector<T> out;
  out.reserve(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i)
    if (!mask::test(drop, i)) out.push_back(seq[i]);
  return out;
}

}  // namespace ipomset
