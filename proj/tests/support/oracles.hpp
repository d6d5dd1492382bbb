#pragma once

// Brute-force reference implementations. They share no algorithmic code with
// the library: everything here enumerates assignments, permutations or
// relations directly.

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "ipomset/ipomset.hpp"

namespace oracle {

using namespace ipomset;

/// Searches integer intervals [lo, hi] with endpoints in 0..2n-1 such that
/// x < y iff hi(x) < lo(y).
inline bool has_interval_assignment(const Relation& lt) {
  const std::size_t n = lt.size();
  const std::size_t range = 2 * n;
  std::vector<std::size_t> lo(n), hi(n);
  std::function<bool(std::size_t)> place = [&](std::size_t x) {
    if (x == n) return true;
    for (std::size_t l = 0; l < range; ++l)
      for (std::size_t h = l; h < range; ++h) {
        bool ok = true;
        for (std::size_t y = 0; y < x && ok; ++y)
          ok = (lt(x, y) == (h < lo[y])) && (lt(y, x) == (hi[y] < l));
        if (!ok) continue;
        lo[x] = l;
        hi[x] = h;
        if (place(x + 1)) return true;
      }
    return false;
  };
  return place(0);
}

/// Every strict partial order on {0..n-1}, as relations.
inline std::vector<Relation> all_partial_orders(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::vector<Relation> out;
  Relation r(n);
  // each unordered pair is unrelated, i<j, or j<i
  std::function<void(std::size_t)> go = [&](std::size_t k) {
    if (k == pairs.size()) {
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          for (std::size_t c = 0; c < n; ++c)
            if (r(a, b) && r(b, c) && !r(a, c)) return;
      out.push_back(r);
      return;
    }
    const auto [i, j] = pairs[k];
    go(k + 1);
    r.set(i, j, true);
    go(k + 1);
    r.set(i, j, false);
    r.set(j, i, true);
    go(k + 1);
    r.set(j, i, false);
  };
  go(0);
  return out;
}

inline std::vector<std::vector<std::size_t>> permutations(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<std::size_t>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline bool preserves_basics(const Ipomset& p, const Ipomset& q, const std::vector<std::size_t>& f) {
  for (std::size_t x = 0; x < p.size(); ++x)
    if (p.label(x) != q.label(f[x]) || p.is_source(x) != q.is_source(f[x]) || p.is_target(x) != q.is_target(f[x]))
      return false;
  return true;
}

/// Isomorphism by trying every permutation.
inline bool isomorphic(const Ipomset& p, const Ipomset& q) {
  if (p.size() != q.size()) return false;
  for (const auto& f : permutations(p.size())) {
    if (!preserves_basics(p, q, f)) continue;
    bool ok = true;
    for (std::size_t x = 0; x < p.size() && ok; ++x)
      for (std::size_t y = 0; y < p.size() && ok; ++y) {
        if (p.precedes(x, y) != q.precedes(f[x], f[y])) ok = false;
        else if (p.concurrent(x, y) && p.event_before(x, y) != q.event_before(f[x], f[y])) ok = false;
      }
    if (ok) return true;
  }
  return false;
}

/// Subsumption by trying every permutation: q's precedence is reflected, and
/// event order between p-concurrent events is kept.
inline bool subsumes(const Ipomset& p, const Ipomset& q) {
  if (p.size() != q.size()) return false;
  for (const auto& f : permutations(p.size())) {
    if (!preserves_basics(p, q, f)) continue;
    bool ok = true;
    for (std::size_t x = 0; x < p.size() && ok; ++x)
      for (std::size_t y = 0; y < p.size() && ok; ++y) {
        if (q.precedes(f[x], f[y]) && !p.precedes(x, y)) ok = false;
        else if (p.concurrent(x, y) && p.event_before(x, y) && !q.event_before(f[x], f[y])) ok = false;
      }
    if (ok) return true;
  }
  return false;
}

/// Every interval ipomset obtained from q by adding precedence between
/// concurrent events (keeping q's event order), q itself included.
inline std::vector<Ipomset> more_ordered(const Ipomset& q) {
  const std::size_t n = q.size();
  std::vector<std::pair<std::size_t, std::size_t>> free;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (q.concurrent(i, j)) free.emplace_back(i, j);
  std::vector<Ipomset> out;
  Relation lt = q.precedence();
  std::function<void(std::size_t)> go = [&](std::size_t k) {
    if (k == free.size()) {
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          if (!lt(a, b)) continue;
          if (q.is_source(b) || q.is_target(a)) return;
          for (std::size_t c = 0; c < n; ++c)
            if (lt(b, c) && !lt(a, c)) return;
        }
      if (!has_interval_assignment(lt)) return;
      out.push_back(Ipomset::make(q.events(), lt, q.event_order(), q.sources(), q.targets()));
      return;
    }
    const auto [i, j] = free[k];
    go(k + 1);
    lt.set(i, j, true);
    go(k + 1);
    lt.set(i, j, false);
    lt.set(j, i, true);
    go(k + 1);
    lt.set(j, i, false);
  };
  go(0);
  return out;
}

}  // namespace oracle
