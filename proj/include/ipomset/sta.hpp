#pragma once

// ST-automata: automata whose states carry conclists and whose edges carry
// starters and terminators. Includes the translations to and from HDAs.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/pending/disjoint_sets.hpp>

#include "ipomset/hda.hpp"
#include "ipomset/letter.hpp"
#include "ipomset/loset.hpp"
#include "ipomset/steps.hpp"

namespace ipomset {

using StateIndex = std::size_t;

struct StState {
  std::string id;
  LabelSeq events;
};

struct RawStEdge {
  std::string from;
  StepLetter letter;
  std::string to;
};

struct RawSta {
  std::vector<StState> states;
  std::vector<RawStEdge> edges;
  std::vector<std::string> initial, final;
};

struct StEdge {
  StateIndex from;
  StepLetter letter;
  StateIndex to;
};

class StAutomaton {
 public:
  std::size_t size() const noexcept { return states_.size(); }
  const std::string& id(StateIndex q) const { return states_[q].id; }
  const LabelSeq& events(StateIndex q) const { return states_[q].events; }
  const std::vector<StState>& states() const noexcept { return states_; }
  const std::vector<StEdge>& edges() const noexcept { return edges_; }
  const std::vector<std::size_t>& out_edges(StateIndex q) const { return out_[q]; }
  bool is_initial(StateIndex q) const { return initial_[q]; }
  bool is_final(StateIndex q) const { return final_[q]; }

  std::optional<StateIndex> index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool has_edge(StateIndex from, const StepLetter& l, StateIndex to) const {
    for (auto e : out_[from])
      if (edges_[e].to == to && edges_[e].letter == l) return true;
    return false;
  }

 private:
  friend StAutomaton validate_sta(const RawSta& raw);

  std::vector<StState> states_;
  std::vector<StEdge> edges_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<bool> initial_, final_;
  std::unordered_map<std::string, StateIndex> index_;
};

/// Checks that every edge's letter starts at its source's conclist and ends at
/// its target's. Duplicate edges are merged.
inline StAutomaton validate_sta(const RawSta& raw) {
  std::vector<Violation> errors;
  StAutomaton a;
  for (const auto& s : raw.states) {
    if (!a.index_.emplace(s.id, a.states_.size()).second)
      errors.push_back({ErrorKind::InvalidInput, "duplicate state id '" + s.id + "'"});
    for (const auto& l : s.events)
      if (!is_identifier(l)) errors.push_back({ErrorKind::InvalidInput, "label '" + l + "' is not an identifier"});
    a.states_.push_back(s);
  }
  a.out_.assign(a.states_.size(), {});
  std::set<std::tuple<StateIndex, std::string, StateIndex>> seen;
  for (std::size_t k = 0; k < raw.edges.size(); ++k) {
    const auto& e = raw.edges[k];
    const auto from = a.index_of(e.from), to = a.index_of(e.to);
    if (!from || !to) {
      errors.push_back({ErrorKind::UnknownState, "edge " + std::to_string(k + 1) + " mentions an unknown state"});
      continue;
    }
    if (e.letter.source() != a.events(*from) || e.letter.target() != a.events(*to)) {
      errors.push_back({ErrorKind::LabelMismatch, "edge " + std::to_string(k + 1) + " " + e.from + " --" +
                                                      to_loset(e.letter) + "--> " + e.to +
                                                      " does not match the state conclists"});
      continue;
    }
    if (!seen.emplace(*from, to_loset(e.letter), *to).second) continue;
    a.out_[*from].push_back(a.edges_.size());
    a.edges_.push_back({*from, e.letter, *to});
  }
  for (auto* list : {&raw.initial, &raw.final}) {
    auto& flags = list == &raw.initial ? a.initial_ : a.final_;
    flags.assign(a.states_.size(), false);
    for (const auto& id : *list) {
      if (auto q = a.index_of(id)) flags[*q] = true;
      else errors.push_back({ErrorKind::UnknownState, "unknown initial/final state '" + id + "'"});
    }
  }
  if (!errors.empty()) throw ValidationError(std::move(errors));
  return a;
}

inline RawSta to_raw(const StAutomaton& a) {
  RawSta raw;
  raw.states = a.states();
  for (const auto& e : a.edges()) raw.edges.push_back({a.id(e.from), e.letter, a.id(e.to)});
  for (StateIndex q = 0; q < a.size(); ++q) {
    if (a.is_initial(q)) raw.initial.push_back(a.id(q));
    if (a.is_final(q)) raw.final.push_back(a.id(q));
  }
  return raw;
}

/// Sparse forms (as loset strings) of the labels of accepting paths with at
/// most `max_steps` edges.
inline std::set<std::string> language_bounded(const StAutomaton& a, std::size_t max_steps) {
  std::set<std::string> keys;
  std::map<std::pair<StateIndex, std::string>, std::size_t> best;

  auto dfs = [&](auto&& self, StateIndex q, const CohWord& w, std::size_t left) -> void {
    const std::string key = to_loset(w);
    auto [it, fresh] = best.try_emplace({q, key}, left);
    if (!fresh) {
      if (it->second >= left) return;
      it->second = left;
    }
    if (a.is_final(q)) keys.insert(key);
    if (left == 0) return;
    for (auto k : a.out_edges(q)) {
      const auto& e = a.edges()[k];
      self(self, e.to, normalize(concat(w, CohWord(w.target(), {e.letter}))), left - 1);
    }
  };
  for (StateIndex q = 0; q < a.size(); ++q)
    if (a.is_initial(q)) dfs(dfs, q, CohWord::identity(a.events(q)), max_steps);
  return keys;
}

/// ST(X): one state per cell, and for every cell q and every A within ev(q)
/// the starter edge from the lower A-face into q and the terminator edge from
/// q to its upper A-face. A = {} gives an identity self-loop.
inline StAutomaton st_of_hda(const Hda& x) {
  RawSta raw;
  for (CellIndex q = 0; q < x.size(); ++q) {
    raw.states.push_back({x.id(q), x.events(q)});
    if (x.is_start(q)) raw.initial.push_back(x.id(q));
    if (x.is_accept(q)) raw.final.push_back(x.id(q));
  }
  for (CellIndex q = 0; q < x.size(); ++q)
    mask::for_each_subset(mask::full(x.dimension(q)), [&](Mask a) {
      raw.edges.push_back({x.id(face(x, q, a, 0)), make_starter(x.events(q), a), x.id(q)});
      raw.edges.push_back({x.id(q), make_terminator(x.events(q), a), x.id(face(x, q, a, 1))});
    });
  return validate_sta(raw);
}

/// Upper bound on the number of formal cells hd_of_sta will create.
inline constexpr std::size_t kMaxFreeCells = 100000;

namespace detail {

// A formal cell (q, B, C) of HD(A): state q with the events B not yet started
// and the events C already terminated. Masks index the state's conclist.
struct FreeCell {
  StateIndex state;
  Mask unstarted, terminated;

  Mask gone() const { return unstarted | terminated; }
};

struct FaceEntry {
  std::size_t from;
  int nu;
  Mask events;  // positions in the carrier of `from`
  std::size_t to;
};

class FreeComplex {
 public:
  explicit FreeComplex(const StAutomaton& a) : a_(a) {
    std::size_t total = 0;
    for (StateIndex q = 0; q < a.size(); ++q) {
      std::size_t c = 1;
      for (std::size_t i = 0; i < a.events(q).size() && c <= kMaxFreeCells; ++i) c *= 3;
      total += c;
      if (total > kMaxFreeCells)
        throw Error(ErrorKind::SizeLimitExceeded, "more than " + std::to_string(kMaxFreeCells) + " formal cells");
    }
    for (StateIndex q = 0; q < a.size(); ++q) {
      const std::size_t n = a.events(q).size();
      mask::for_each_subset(mask::full(n), [&](Mask b) {
        mask::for_each_subset(mask::full(n) & ~b, [&](Mask c) {
          index_.emplace(std::make_tuple(q, b, c), cells_.size());
          cells_.push_back({q, b, c});
        });
      });
    }
  }

  std::size_t size() const noexcept { return cells_.size(); }
  const FreeCell& cell(std::size_t i) const { return cells_[i]; }
  std::size_t index(StateIndex q, Mask b, Mask c) const { return index_.at(std::make_tuple(q, b, c)); }
  std::size_t width(std::size_t i) const {
    return a_.events(cells_[i].state).size() - mask::count(cells_[i].gone());
  }
  LabelSeq carrier(std::size_t i) const { return remove_positions(a_.events(cells_[i].state), cells_[i].gone()); }

  // Face relations: formal faces of every cell, plus the automaton's edges
  // copied to every formal face on which their events are still active.
  std::vector<FaceEntry> face_relations() const {
    std::vector<FaceEntry> out;
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      const auto& c = cells_[i];
      const std::size_t n = a_.events(c.state).size();
      mask::for_each_subset(mask::full(n) & ~c.gone(), [&](Mask act) {
        if (act == 0) return;
        const Mask local = mask::compress(act, c.gone(), n);
        out.push_back({i, 0, local, index(c.state, c.unstarted | act, c.terminated)});
        out.push_back({i, 1, local, index(c.state, c.unstarted, c.terminated | act)});
      });
    }
    for (const auto& e : a_.edges()) {
      if (e.letter.is_identity()) continue;
      const bool starter = e.letter.kind() == LetterKind::Starter;
      const StateIndex high = starter ? e.to : e.from;
      const StateIndex low = starter ? e.from : e.to;
      const Mask act = e.letter.marked();
      const std::size_t n = e.letter.size();
      mask::for_each_subset(mask::full(n) & ~act, [&](Mask b) {
        mask::for_each_subset(mask::full(n) & ~act & ~b, [&](Mask c) {
          out.push_back({index(high, b, c), starter ? 0 : 1, mask::compress(act, b | c, n),
                         index(low, mask::compress(b, act, n), mask::compress(c, act, n))});
        });
      });
    }
    return out;
  }

  // Identity edges make their endpoints, and all their formal faces, equal.
  std::vector<std::pair<std::size_t, std::size_t>> identifications() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (const auto& e : a_.edges()) {
      if (!e.letter.is_identity() || e.from == e.to) continue;
      const std::size_t n = e.letter.size();
      mask::for_each_subset(mask::full(n), [&](Mask b) {
        mask::for_each_subset(mask::full(n) & ~b, [&](Mask c) {
          out.emplace_back(index(e.from, b, c), index(e.to, b, c));
        });
      });
    }
    return out;
  }

 private:
  const StAutomaton& a_;
  std::vector<FreeCell> cells_;
  std::map<std::tuple<StateIndex, Mask, Mask>, std::size_t> index_;
};

}  // namespace detail

/// HD(A): adds all formal faces, then merges cells until face relations are
/// functions satisfying the precubical identities.
inline Hda hd_of_sta(const StAutomaton& a) {
  const detail::FreeComplex fc(a);
  const auto relations = fc.face_relations();
  boost::disjoint_sets_with_storage<> uf(fc.size());
  for (const auto& [x, y] : fc.identifications()) uf.union_set(x, y);

  using FaceKey = std::tuple<std::size_t, int, Mask>;
  std::map<FaceKey, std::size_t> faces;
  bool changed = true;
  while (changed) {
    changed = false;
    // Functionality: related successors of one class collapse.
    bool merged = true;
    while (merged) {
      merged = false;
      faces.clear();
      for (const auto& r : relations) {
        const std::size_t to = uf.find_set(r.to);
        auto [it, fresh] = faces.try_emplace({uf.find_set(r.from), r.nu, r.events}, to);
        if (!fresh && uf.find_set(it->second) != to) {
          uf.union_set(it->second, to);
          merged = changed = true;
        }
      }
    }
    // Composites: faces on disjoint A and B commute, and two faces of the
    // same kind compose to the face on their union.
    auto face_of = [&](std::size_t cls, int nu, Mask m) {
      return m == 0 ? cls : uf.find_set(faces.at({cls, nu, m}));
    };
    std::set<std::size_t> roots;
    for (std::size_t i = 0; i < fc.size(); ++i) roots.insert(uf.find_set(i));
    for (const std::size_t r : roots) {
      const std::size_t k = fc.width(r);
      const Mask all = mask::full(k);
      mask::for_each_subset(all, [&](Mask am) {
        if (am == 0 || changed) return;
        mask::for_each_subset(all & ~am, [&](Mask bm) {
          if (bm == 0 || changed) return;
          for (int nu = 0; nu < 2 && !changed; ++nu)
            for (int mu = 0; mu < 2 && !changed; ++mu) {
              const std::size_t r1 = face_of(face_of(r, nu, am), mu, mask::compress(bm, am, k));
              const std::size_t r2 = face_of(face_of(r, mu, bm), nu, mask::compress(am, bm, k));
              if (uf.find_set(r1) != uf.find_set(r2)) {
                uf.union_set(r1, r2);
                changed = true;
                continue;
              }
              if (nu == mu) {
                const std::size_t r3 = face_of(r, nu, am | bm);
                if (uf.find_set(r1) != uf.find_set(r3)) {
                  uf.union_set(r1, r3);
                  changed = true;
                }
              }
            }
        });
      });
      if (changed) break;
    }
  }

  // Quotient: name each class after its least formal member.
  std::map<std::size_t, std::size_t> rep;
  auto rank = [&](std::size_t i) {
    const auto& c = fc.cell(i);
    return std::make_tuple(mask::count(c.gone()), c.state, c.unstarted, c.terminated);
  };
  for (std::size_t i = 0; i < fc.size(); ++i) {
    auto [it, fresh] = rep.try_emplace(uf.find_set(i), i);
    if (!fresh && rank(i) < rank(it->second)) it->second = i;
  }
  auto name = [&](std::size_t cls) {
    const auto& c = fc.cell(rep.at(uf.find_set(cls)));
    std::string id = a.id(c.state);
    if (c.gone() == 0) return id;
    auto list = [](Mask m) {
      std::string s;
      for (auto p : mask::positions(m)) s += (s.empty() ? "" : ",") + std::to_string(p);
      return s;
    };
    return id + "/u" + list(c.unstarted) + "/t" + list(c.terminated);
  };

  RawHda raw;
  for (const auto& [cls, member] : rep) {
    RawCell cell{name(cls), fc.carrier(member), {}, {}};
    for (std::size_t p = 0; p < cell.events.size(); ++p) {
      cell.d0[p] = name(faces.at({cls, 0, mask::bit(p)}));
      cell.d1[p] = name(faces.at({cls, 1, mask::bit(p)}));
    }
    raw.cells.push_back(std::move(cell));
  }
  std::set<std::string> start, accept;
  for (StateIndex q = 0; q < a.size(); ++q) {
    const std::string id = name(fc.index(q, 0, 0));
    if (a.is_initial(q)) start.insert(id);
    if (a.is_final(q)) accept.insert(id);
  }
  raw.start.assign(start.begin(), start.end());
  raw.accept.assign(accept.begin(), accept.end());
  return validate_hda(raw);
}

// ---------------------------------------------------------------------------
// Necessary conditions for being the image of an HDA

struct ImageViolation {
  int item;  ///< 1: missing faces, 2: not closed under fusion, 3: not splittable
  std::string detail;
};

struct ImageReport {
  bool faces = true, fusion = true, splitting = true;
  std::vector<ImageViolation> violations;

  bool ok() const { return faces && fusion && splitting; }
};

inline ImageReport check_hda_image(const StAutomaton& a) {
  ImageReport report;
  auto fail = [&](int item, std::string detail) {
    (item == 1 ? report.faces : item == 2 ? report.fusion : report.splitting) = false;
    report.violations.push_back({item, std::move(detail)});
  };
  auto edge_text = [&](StateIndex p, const StepLetter& l, StateIndex r) {
    return a.id(p) + " --" + to_loset(l) + "--> " + a.id(r);
  };

  // (1) every state has an incoming starter and an outgoing terminator for
  // every subset of its conclist
  for (StateIndex q = 0; q < a.size(); ++q) {
    const LabelSeq& u = a.events(q);
    mask::for_each_subset(mask::full(u.size()), [&](Mask m) {
      bool in = false, out = false;
      for (const auto& e : a.edges()) {
        if (e.to == q && e.letter.is_starter() && e.letter.carrier() == u && e.letter.marked() == m) in = true;
        if (e.from == q && e.letter.is_terminator() && e.letter.carrier() == u && e.letter.marked() == m)
          out = true;
      }
      if (!in) fail(1, "no starter " + to_loset(make_starter(u, m)) + " into " + a.id(q));
      if (!out) fail(1, "no terminator " + to_loset(make_terminator(u, m)) + " out of " + a.id(q));
    });
  }

  // (2) consecutive starters (resp. terminators) have their fusion as an edge
  for (const auto& e1 : a.edges())
    for (auto k : a.out_edges(e1.to)) {
      const auto& e2 = a.edges()[k];
      const bool both_start = e1.letter.is_starter() && e2.letter.is_starter();
      const bool both_term = e1.letter.is_terminator() && e2.letter.is_terminator();
      if (!both_start && !both_term) continue;
      const StepLetter fused = fuse(e1.letter, e2.letter);
      if (!a.has_edge(e1.from, fused, e2.to))
        fail(2, edge_text(e1.from, e1.letter, e1.to) + " then " + to_loset(e2.letter) + " lacks " +
                    edge_text(e1.from, fused, e2.to));
    }

  // (3) every edge marking several events splits through some state
  for (const auto& e : a.edges()) {
    const Mask all = e.letter.marked();
    if (mask::count(all) < 2) continue;
    const LabelSeq& u = e.letter.carrier();
    mask::for_each_subset(all, [&](Mask first) {
      if (first == 0 || first == all) return;
      const Mask second = all & ~first;
      StepLetter p = e.letter, q = e.letter;
      if (e.letter.kind() == LetterKind::Starter) {
        p = make_starter(remove_positions(u, second), mask::compress(first, second, u.size()));
        q = make_starter(u, second);
      } else {
        p = make_terminator(u, first);
        q = make_terminator(remove_positions(u, first), mask::compress(second, first, u.size()));
      }
      bool found = false;
      for (auto k : a.out_edges(e.from)) {
        const auto& mid = a.edges()[k];
        if (mid.letter == p && a.has_edge(mid.to, q, e.to)) found = true;
      }
      if (!found)
        fail(3, edge_text(e.from, e.letter, e.to) + " has no split " + to_loset(p) + " " + to_loset(q));
    });
  }
  return report;
}

}  // namespace ipomset
