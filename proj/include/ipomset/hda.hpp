#pragma once

// Higher-dimensional automata: precubical sets with start and accept cells,
// paths through them and their event ipomsets, and bounded languages.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ipomset/core.hpp"
#include "ipomset/letter.hpp"
#include "ipomset/steps.hpp"

namespace ipomset {

using CellIndex = std::size_t;

/// A cell as written in input files: faces are given per event position.
struct RawCell {
  std::string id;
  LabelSeq events;
  std::map<std::size_t, std::string> d0, d1;
};

struct RawHda {
  std::vector<RawCell> cells;
  std::vector<std::string> start, accept;
};

/// A validated HDA. Only singleton faces are stored; faces on larger event
/// sets are composites.
class Hda {
 public:
  std::size_t size() const noexcept { return ids_.size(); }
  const std::string& id(CellIndex q) const { return ids_[q]; }
  const LabelSeq& events(CellIndex q) const { return events_[q]; }
  std::size_t dimension(CellIndex q) const { return events_[q].size(); }

  CellIndex lower(CellIndex q, std::size_t pos) const { return faces_[0][q][pos]; }
  CellIndex upper(CellIndex q, std::size_t pos) const { return faces_[1][q][pos]; }
  CellIndex singleton_face(CellIndex q, std::size_t pos, int nu) const { return faces_[nu][q][pos]; }

  bool is_start(CellIndex q) const { return start_[q]; }
  bool is_accept(CellIndex q) const { return accept_[q]; }

  std::optional<CellIndex> index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

 private:
  friend Hda validate_hda(const RawHda& raw);

  std::vector<std::string> ids_;
  std::vector<LabelSeq> events_;
  std::vector<std::vector<CellIndex>> faces_[2];
  std::vector<bool> start_, accept_;
  std::unordered_map<std::string, CellIndex> index_;
};

inline Hda validate_hda(const RawHda& raw) {
  std::vector<Violation> errors;
  Hda x;
  for (const auto& c : raw.cells) {
    if (!x.index_.emplace(c.id, x.ids_.size()).second)
      errors.push_back({ErrorKind::InvalidInput, "duplicate cell id '" + c.id + "'"});
    if (c.events.size() > kMaxConclist)
      errors.push_back({ErrorKind::SizeLimitExceeded, "cell '" + c.id + "' has too many events"});
    for (const auto& l : c.events)
      if (!is_identifier(l)) errors.push_back({ErrorKind::InvalidInput, "label '" + l + "' is not an identifier"});
    x.ids_.push_back(c.id);
    x.events_.push_back(c.events);
  }
  if (!errors.empty()) throw ValidationError(std::move(errors));

  const std::size_t n = raw.cells.size();
  constexpr CellIndex kNone = static_cast<CellIndex>(-1);
  for (int nu = 0; nu < 2; ++nu) x.faces_[nu].assign(n, {});
  for (std::size_t q = 0; q < n; ++q) {
    const auto& c = raw.cells[q];
    for (int nu = 0; nu < 2; ++nu) {
      const auto& given = nu == 0 ? c.d0 : c.d1;
      auto& out = x.faces_[nu][q];
      out.assign(c.events.size(), kNone);
      for (const auto& [pos, target] : given) {
        if (pos >= c.events.size()) {
          errors.push_back({ErrorKind::InvalidInput, "cell '" + c.id + "': face position " +
                                                         std::to_string(pos) + " out of range"});
          continue;
        }
        auto t = x.index_of(target);
        if (!t) {
          errors.push_back({ErrorKind::UnknownCell, "cell '" + c.id + "': unknown face '" + target + "'"});
          continue;
        }
        LabelSeq expected = c.events;
        expected.erase(expected.begin() + static_cast<std::ptrdiff_t>(pos));
        if (x.events_[*t] != expected)
          errors.push_back({ErrorKind::FaceConclistMismatch, "cell '" + c.id + "': d" + std::to_string(nu) +
                                                                  "[" + std::to_string(pos) + "] = '" + target +
                                                                  "' has the wrong conclist"});
        out[pos] = *t;
      }
      for (std::size_t pos = 0; pos < c.events.size(); ++pos)
        if (given.find(pos) == given.end())
          errors.push_back({ErrorKind::MissingFace, "cell '" + c.id + "': no d" + std::to_string(nu) + "[" +
                                                        std::to_string(pos) + "]"});
    }
  }
  for (auto* list : {&raw.start, &raw.accept}) {
    auto& flags = list == &raw.start ? x.start_ : x.accept_;
    flags.assign(n, false);
    for (const auto& id : *list) {
      if (auto q = x.index_of(id)) flags[*q] = true;
      else errors.push_back({ErrorKind::UnknownCell, "unknown start/accept cell '" + id + "'"});
    }
  }
  if (!errors.empty()) throw ValidationError(std::move(errors));

  // d^nu_a d^mu_b = d^mu_b d^nu_a for positions a < b; removing b first
  // keeps a in place, removing a first shifts b down by one.
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t a = 0; a < x.dimension(q); ++a)
      for (std::size_t b = a + 1; b < x.dimension(q); ++b)
        for (int nu = 0; nu < 2; ++nu)
          for (int mu = 0; mu < 2; ++mu) {
            const CellIndex lhs = x.faces_[nu][x.faces_[mu][q][b]][a];
            const CellIndex rhs = x.faces_[mu][x.faces_[nu][q][a]][b - 1];
            if (lhs != rhs)
              errors.push_back({ErrorKind::PrecubicalViolation,
                                "cell '" + x.ids_[q] + "', positions " + std::to_string(a) + "," +
                                    std::to_string(b) + ", d" + std::to_string(nu) + "/d" + std::to_string(mu) +
                                    ": '" + x.ids_[lhs] + "' vs '" + x.ids_[rhs] + "'"});
          }
  if (!errors.empty()) throw ValidationError(std::move(errors));
  return x;
}

/// Converts back to the input representation.
inline RawHda to_raw(const Hda& x) {
  RawHda raw;
  for (CellIndex q = 0; q < x.size(); ++q) {
    RawCell c{x.id(q), x.events(q), {}, {}};
    for (std::size_t p = 0; p < x.dimension(q); ++p) {
      c.d0[p] = x.id(x.lower(q, p));
      c.d1[p] = x.id(x.upper(q, p));
    }
    raw.cells.push_back(std::move(c));
    if (x.is_start(q)) raw.start.push_back(x.id(q));
    if (x.is_accept(q)) raw.accept.push_back(x.id(q));
  }
  return raw;
}

/// The face of q on the event positions in `a`, removed from the highest
/// position down so that lower positions keep their meaning.
inline CellIndex face(const Hda& x, CellIndex q, Mask a, int nu) {
  if (q >= x.size()) throw Error(ErrorKind::UnknownCell, "cell index out of range");
  if (!mask::subset(a, mask::full(x.dimension(q))))
    throw Error(ErrorKind::NotASubset, "face events are not a subset of the cell's events");
  auto pos = mask::positions(a);
  for (auto it = pos.rbegin(); it != pos.rend(); ++it) q = x.singleton_face(q, *it, nu);
  return q;
}

// ---------------------------------------------------------------------------
// Paths

enum class StepDir { Up, Down };

struct PathStep {
  StepDir dir;
  Mask events;  ///< positions in the higher-dimensional cell of the step
};

/// cells.size() == steps.size() + 1.
struct HdaPath {
  std::vector<CellIndex> cells;
  std::vector<PathStep> steps;
};

inline void check_path(const Hda& x, const HdaPath& path) {
  if (path.cells.size() != path.steps.size() + 1)
    throw Error(ErrorKind::InvalidPath, "a path has one more cell than steps");
  for (auto q : path.cells)
    if (q >= x.size()) throw Error(ErrorKind::InvalidPath, "unknown cell index " + std::to_string(q));
  for (std::size_t i = 0; i < path.steps.size(); ++i) {
    const auto& s = path.steps[i];
    const CellIndex from = path.cells[i], to = path.cells[i + 1];
    const CellIndex high = s.dir == StepDir::Up ? to : from;
    const CellIndex low = s.dir == StepDir::Up ? from : to;
    if (!mask::subset(s.events, mask::full(x.dimension(high))) ||
        face(x, high, s.events, s.dir == StepDir::Up ? 0 : 1) != low)
      throw Error(ErrorKind::InvalidPath, "step " + std::to_string(i + 1) + " is not a face relation");
  }
}

inline HdaPath concat(const HdaPath& a, const HdaPath& b) {
  if (a.cells.back() != b.cells.front()) throw Error(ErrorKind::InvalidPath, "paths do not meet");
  HdaPath out = a;
  out.cells.insert(out.cells.end(), b.cells.begin() + 1, b.cells.end());
  out.steps.insert(out.steps.end(), b.steps.begin(), b.steps.end());
  return out;
}

/// The event word of a path; its gluing is the path's event ipomset.
inline CohWord ev_path(const Hda& x, const HdaPath& path) {
  check_path(x, path);
  if (path.steps.empty()) return CohWord::identity(x.events(path.cells[0]));
  std::vector<StepLetter> letters;
  for (std::size_t i = 0; i < path.steps.size(); ++i) {
    const auto& s = path.steps[i];
    if (s.dir == StepDir::Up) letters.push_back(make_starter(x.events(path.cells[i + 1]), s.events));
    else letters.push_back(make_terminator(x.events(path.cells[i]), s.events));
  }
  return CohWord(x.events(path.cells[0]), std::move(letters));
}

namespace detail {

struct Move {
  CellIndex to;
  StepLetter letter;
};

// All moves with nonempty event sets out of every cell.
inline std::vector<std::vector<Move>> hda_moves(const Hda& x) {
  std::vector<std::vector<Move>> moves(x.size());
  for (CellIndex q = 0; q < x.size(); ++q) {
    const Mask all = mask::full(x.dimension(q));
    mask::for_each_subset(all, [&](Mask a) {
      if (a == 0) return;
      moves[face(x, q, a, 0)].push_back({q, make_starter(x.events(q), a)});
      moves[q].push_back({face(x, q, a, 1), make_terminator(x.events(q), a)});
    });
  }
  return moves;
}

}  // namespace detail

/// Canonical keys of the event ipomsets of accepting paths with at most
/// `max_steps` steps. Each path's ipomset is glued step by step.
inline std::set<std::string> language_bounded(const Hda& x, std::size_t max_steps) {
  const auto moves = detail::hda_moves(x);
  std::set<std::string> keys;
  std::map<std::pair<CellIndex, std::string>, std::size_t> best;  // most steps left seen

  auto dfs = [&](auto&& self, CellIndex q, const Ipomset& acc, std::size_t left) -> void {
    const std::string key = canonical_key(acc);
    auto [it, fresh] = best.try_emplace({q, key}, left);
    if (!fresh) {
      if (it->second >= left) return;
      it->second = left;
    }
    if (x.is_accept(q)) keys.insert(key);
    if (left == 0) return;
    for (const auto& m : moves[q]) self(self, m.to, glue(acc, as_ipomset(m.letter)), left - 1);
  };
  for (CellIndex q = 0; q < x.size(); ++q)
    if (x.is_start(q)) dfs(dfs, q, identity(x.events(q)), max_steps);
  return keys;
}

/// A bijection of cells preserving conclists, faces, start and accept cells.
inline std::optional<std::vector<CellIndex>> hda_isomorphic(const Hda& x, const Hda& y) {
  if (x.size() != y.size()) return std::nullopt;
  return detail::search_bijection(
      x.size(),
      [&](CellIndex a, CellIndex b) {
        return x.events(a) == y.events(b) && x.is_start(a) == y.is_start(b) && x.is_accept(a) == y.is_accept(b);
      },
      [&](CellIndex a, CellIndex b, CellIndex a2, CellIndex b2) {
        for (std::size_t p = 0; p < x.dimension(a); ++p)
          for (int nu = 0; nu < 2; ++nu)
            if ((x.singleton_face(a, p, nu) == a2) != (y.singleton_face(b, p, nu) == b2)) return false;
        for (std::size_t p = 0; p < x.dimension(a2); ++p)
          for (int nu = 0; nu < 2; ++nu)
            if ((x.singleton_face(a2, p, nu) == a) != (y.singleton_face(b2, p, nu) == b)) return false;
        return true;
      });
}

}  // namespace ipomset
