#pragma once

// Subsumption of ipomsets and its presentation by transpositions of
// neighbouring letters in dense step decompositions.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ipomset/core.hpp"
#include "ipomset/steps.hpp"

namespace ipomset {

/// Transposition searches enumerate dense decompositions and are exponential.
inline constexpr std::size_t kMaxSubsumptionEvents = 8;

/// A subsumption p -> q: interface- and label-preserving bijection which may
/// remove precedence and add essential event order. Returns a witness iff p is
/// at least as ordered as q.
inline std::optional<EventMap> is_subsumption(const Ipomset& p, const Ipomset& q) {
  if (p.size() != q.size() || p.precedence().pair_count() < q.precedence().pair_count() ||
      !detail::same_label_multiset(p, q))
    return std::nullopt;
  const auto sp = detail::signatures(p), sq = detail::signatures(q);
  return detail::search_bijection(
      p.size(),
      [&](std::size_t x, std::size_t y) {
        return sp[x].label == sq[y].label && sp[x].source == sq[y].source &&
               sp[x].target == sq[y].target && sq[y].preds <= sp[x].preds && sq[y].succs <= sp[x].succs;
      },
      [&](std::size_t x, std::size_t y, std::size_t x2, std::size_t y2) {
        if (q.precedes(y, y2) && !p.precedes(x, x2)) return false;
        if (q.precedes(y2, y) && !p.precedes(x2, x)) return false;
        if (p.concurrent(x, x2)) {
          if (p.event_before(x, x2) && !q.event_before(y, y2)) return false;
          if (p.event_before(x2, x) && !q.event_before(y2, y)) return false;
        }
        return true;
      });
}

using EventPair = std::pair<std::size_t, std::size_t>;

/// The precedence pairs of p that the witness does not carry into q, with the
/// partial order (x, y) <= (x', y') iff x <=_p x' and y >=_p y'.
struct OrderDiff {
  std::vector<EventPair> pairs;

  static bool below(const Ipomset& p, const EventPair& a, const EventPair& b) {
    const bool x_le = a.first == b.first || p.precedes(a.first, b.first);
    const bool y_ge = a.second == b.second || p.precedes(b.second, a.second);
    return x_le && y_ge;
  }

  std::vector<EventPair> maximal(const Ipomset& p) const {
    std::vector<EventPair> out;
    for (const auto& a : pairs) {
      bool dominated = false;
      for (const auto& b : pairs)
        if (a != b && below(p, a, b)) dominated = true;
      if (!dominated) out.push_back(a);
    }
    return out;
  }
};

inline OrderDiff order_difference(const Ipomset& p, const Ipomset& q, const EventMap& f) {
  OrderDiff d;
  for (std::size_t x = 0; x < p.size(); ++x)
    for (std::size_t y = 0; y < p.size(); ++y)
      if (p.precedes(x, y) && !q.precedes(f[x], f[y])) d.pairs.emplace_back(x, y);
  return d;
}

// ---------------------------------------------------------------------------
// Transpositions

enum class TranspositionCase {
  SS,  ///< starter, starter: equivalent word
  TT,  ///< terminator, terminator: equivalent word
  ST,  ///< starter, terminator: adds precedence
  TS,  ///< terminator, starter: removes precedence
};

inline std::string_view to_string(TranspositionCase c) {
  switch (c) {
    case TranspositionCase::SS: return "SS";
    case TranspositionCase::TT: return "TT";
    case TranspositionCase::ST: return "ST";
    case TranspositionCase::TS: return "TS";
  }
  return "?";
}

/// For TS: where terminated and started events go in the merged conclist when
/// their relative order is not determined by the surrounding events.
enum class MergeOrder { TerminatedFirst, StartedFirst };

struct TranspositionStep {
  std::size_t index;  ///< 1-based position of the left letter
  TranspositionCase kind;
  MergeOrder order = MergeOrder::TerminatedFirst;

  friend bool operator==(const TranspositionStep&, const TranspositionStep&) = default;
};

inline TranspositionCase transposition_case(const CohWord& w, std::size_t i) {
  if (i < 1 || i >= w.size())
    throw Error(ErrorKind::NotApplicable, "index " + std::to_string(i) + " out of range");
  const bool left_start = w[i - 1].kind() == LetterKind::Starter;
  const bool right_start = w[i].kind() == LetterKind::Starter;
  if (left_start) return right_start ? TranspositionCase::SS : TranspositionCase::ST;
  return right_start ? TranspositionCase::TS : TranspositionCase::TT;
}

namespace detail {

// Merges U \ B (with A marked) and U \ A (with B marked) into U. Returns the
// merged carrier and the positions of A and B in it.
struct Merged {
  LabelSeq carrier;
  Mask a = 0, b = 0;
};

inline Merged merge_conclists(const StepLetter& terminated, const StepLetter& started, MergeOrder order) {
  auto gaps = [](const StepLetter& l) {
    // gap index (number of unmarked events before it) for each marked event
    std::vector<std::vector<Label>> g(l.size() - mask::count(l.marked()) + 1);
    std::size_t common = 0;
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (mask::test(l.marked(), i)) g[common].push_back(l.carrier()[i]);
      else ++common;
    }
    return g;
  };
  const auto ga = gaps(terminated), gb = gaps(started);
  const LabelSeq common = remove_positions(terminated.carrier(), terminated.marked());

  Merged m;
  auto emit = [&](const std::vector<Label>& labels, Mask& bits) {
    for (const auto& l : labels) {
      bits |= mask::bit(m.carrier.size());
      m.carrier.push_back(l);
    }
  };
  for (std::size_t g = 0; g <= common.size(); ++g) {
    if (order == MergeOrder::TerminatedFirst) {
      emit(ga[g], m.a);
      emit(gb[g], m.b);
    } else {
      emit(gb[g], m.b);
      emit(ga[g], m.a);
    }
    if (g < common.size()) m.carrier.push_back(common[g]);
  }
  return m;
}

}  // namespace detail

/// The i-th transposition (1-based): swaps letters i and i+1, adjusting their
/// carriers so that the word stays coherent.
inline CohWord transpose(const CohWord& w, std::size_t i, MergeOrder order = MergeOrder::TerminatedFirst) {
  const TranspositionCase c = transposition_case(w, i);
  const StepLetter& left = w[i - 1];
  const StepLetter& right = w[i];
  std::vector<StepLetter> letters = w.letters();

  switch (c) {
    case TranspositionCase::SS: {
      // up_A on U \ B, up_B on U  ->  up_B on U \ A, up_A on U
      const LabelSeq& u = right.carrier();
      const Mask a = mask::embed(left.marked(), right.marked(), u.size());
      const Mask b = right.marked();
      letters[i - 1] = make_starter(remove_positions(u, a), mask::compress(b, a, u.size()));
      letters[i] = make_starter(u, a);
      break;
    }
    case TranspositionCase::TT: {
      // down_A on U, down_B on U \ A  ->  down_B on U, down_A on U \ B
      const LabelSeq& u = left.carrier();
      const Mask a = left.marked();
      const Mask b = mask::embed(right.marked(), a, u.size());
      letters[i - 1] = make_terminator(u, b);
      letters[i] = make_terminator(remove_positions(u, b), mask::compress(a, b, u.size()));
      break;
    }
    case TranspositionCase::ST: {
      // up_A on U, down_B on U  ->  down_B on U \ A, up_A on U \ B
      const LabelSeq& u = left.carrier();
      const Mask a = left.marked(), b = right.marked();
      if (a & b)
        throw Error(ErrorKind::NotApplicable, "overlapping marks: an event is started and terminated");
      letters[i - 1] = make_terminator(remove_positions(u, a), mask::compress(b, a, u.size()));
      letters[i] = make_starter(remove_positions(u, b), mask::compress(a, b, u.size()));
      break;
    }
    case TranspositionCase::TS: {
      // down_A on U \ B, up_B on U \ A  ->  up_B on U, down_A on U
      const auto merged = detail::merge_conclists(left, right, order);
      letters[i - 1] = make_starter(merged.carrier, merged.b);
      letters[i] = make_terminator(merged.carrier, merged.a);
      break;
    }
  }
  return CohWord(w.source(), std::move(letters));
}

/// Applies the steps in order and checks that each recorded case matches.
inline CohWord replay(CohWord w, const std::vector<TranspositionStep>& steps) {
  for (const auto& s : steps) {
    if (transposition_case(w, s.index) != s.kind)
      throw Error(ErrorKind::NotApplicable, "recorded case does not match the word");
    w = transpose(w, s.index, s.order);
  }
  return w;
}

namespace detail {

// Breadth-first search over the dense words reachable from `start` by SS and
// TT transpositions, i.e. over the dense representatives of one step
// sequence. `goal(word)` may return a final step and the word it leads to;
// the search stops at the first hit and returns the path.
struct ClassPath {
  std::vector<CohWord> words;  // excluding the start word
  std::vector<TranspositionStep> steps;
};

template <class Goal>
std::optional<ClassPath> search_class(const CohWord& start, Goal&& goal) {
  struct Node {
    CohWord word;
    std::size_t parent;
    TranspositionStep step;
  };
  std::vector<Node> nodes;
  std::unordered_map<std::string, std::size_t> seen;
  nodes.push_back({start, 0, {0, TranspositionCase::SS}});
  seen.emplace(to_loset(start), 0);

  auto path_to = [&](std::size_t k) {
    ClassPath path;
    while (k != 0) {
      path.words.push_back(nodes[k].word);
      path.steps.push_back(nodes[k].step);
      k = nodes[k].parent;
    }
    std::reverse(path.words.begin(), path.words.end());
    std::reverse(path.steps.begin(), path.steps.end());
    return path;
  };

  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const CohWord word = nodes[k].word;
    if (auto hit = goal(word)) {
      ClassPath path = path_to(k);
      if (hit->first) {
        path.steps.push_back(*hit->first);
        path.words.push_back(hit->second);
      }
      return path;
    }
    for (std::size_t i = 1; i < word.size(); ++i) {
      const auto c = transposition_case(word, i);
      if (c != TranspositionCase::SS && c != TranspositionCase::TT) continue;
      CohWord next = transpose(word, i);
      if (seen.emplace(to_loset(next), nodes.size()).second)
        nodes.push_back({std::move(next), k, {i, c}});
    }
  }
  return std::nullopt;
}

using GoalHit = std::optional<std::pair<std::optional<TranspositionStep>, CohWord>>;

inline void check_size(const Ipomset& p) {
  if (p.size() > kMaxSubsumptionEvents)
    throw Error(ErrorKind::SizeLimitExceeded,
                std::to_string(p.size()) + " events; limit is " + std::to_string(kMaxSubsumptionEvents));
}

}  // namespace detail

/// Every ipomset obtained from p by one starter/terminator swap in some dense
/// decomposition of p, keyed by canonical key. Each is strictly more ordered
/// than p, by exactly one precedence pair.
inline std::map<std::string, Ipomset> elementary_extensions(const Ipomset& p) {
  detail::check_size(p);
  if (!is_interval(p)) throw Error(ErrorKind::NotInterval, "elementary_extensions needs an interval ipomset");
  std::map<std::string, Ipomset> out;
  detail::search_class(densify(phi(p)), [&](const CohWord& w) -> detail::GoalHit {
    for (std::size_t i = 1; i < w.size(); ++i) {
      if (transposition_case(w, i) != TranspositionCase::ST || (w[i - 1].marked() & w[i].marked()))
        continue;
      if (w[i - 1].is_identity() || w[i].is_identity()) continue;
      Ipomset r = psi(transpose(w, i));
      out.emplace(canonical_key(r), std::move(r));
    }
    return std::nullopt;
  });
  return out;
}

/// A sequence of dense words, each obtained from the previous one by the
/// recorded transposition.
struct SubsumptionChain {
  std::vector<CohWord> words;
  std::vector<TranspositionStep> steps;
};

inline bool is_valid_chain(const SubsumptionChain& chain) {
  if (chain.words.empty() || chain.words.size() != chain.steps.size() + 1) return false;
  try {
    for (std::size_t k = 0; k < chain.steps.size(); ++k)
      if (replay(chain.words[k], {chain.steps[k]}) != chain.words[k + 1]) return false;
  } catch (const Error&) {
    return false;
  }
  return true;
}

/// Optional fixed endpoints for subsumption_chain; both must be dense.
struct ChainEnds {
  std::optional<CohWord> start;
  std::optional<CohWord> end;
};

/// A chain of transpositions from a dense decomposition of p to one of q, if
/// p is subsumed by q. Precedence pairs are removed one at a time, choosing a
/// maximal pair of the order difference whose removal leaves an interval
/// ipomset; each removal is realized by a TS transposition found by searching
/// the current step sequence's dense representatives.
inline std::optional<SubsumptionChain> subsumption_chain(const Ipomset& p, const Ipomset& q,
                                                         const ChainEnds& ends = {}) {
  detail::check_size(p);
  detail::check_size(q);
  if (!is_interval(p) || !is_interval(q))
    throw Error(ErrorKind::NotInterval, "subsumption_chain needs interval ipomsets");
  const auto f = is_subsumption(p, q);
  if (!f) return std::nullopt;

  auto check_end = [](const CohWord& w, const Ipomset& x, const char* which) {
    if (!is_dense(w) || canonical_key(psi(w)) != canonical_key(x))
      throw Error(ErrorKind::InvalidInput, std::string(which) + " word is not a dense decomposition");
  };
  CohWord current = densify(phi(p));
  if (ends.start) {
    check_end(*ends.start, p, "start");
    current = *ends.start;
  }
  if (ends.end) check_end(*ends.end, q, "end");

  const std::size_t n = p.size();
  Relation q_lt(n), q_ev(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      q_lt.set(i, j, q.precedes((*f)[i], (*f)[j]));
      q_ev.set(i, j, q.event_before((*f)[i], (*f)[j]));
    }

  SubsumptionChain chain;
  chain.words.push_back(current);
  auto append = [&](detail::ClassPath&& path) {
    for (auto& w : path.words) chain.words.push_back(std::move(w));
    for (auto& s : path.steps) chain.steps.push_back(s);
  };

  Ipomset r = p;
  while (true) {
    OrderDiff diff;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (r.precedes(x, y) && !q_lt(x, y)) diff.pairs.emplace_back(x, y);
    if (diff.pairs.empty()) break;

    std::vector<EventPair> candidates = diff.maximal(r);
    for (const auto& pr : diff.pairs)
      if (std::find(candidates.begin(), candidates.end(), pr) == candidates.end()) candidates.push_back(pr);

    std::optional<Ipomset> next;
    EventPair removed{};
    for (const auto& [x, y] : candidates) {
      bool through = false;
      for (std::size_t z = 0; z < n && !through; ++z) through = r.precedes(x, z) && r.precedes(z, y);
      if (through) continue;
      Relation lt = r.precedence();
      lt.set(x, y, false);
      if (!is_interval_order(lt)) continue;
      next = Ipomset::make(r.events(), std::move(lt), q_ev, r.sources(), r.targets());
      removed = {x, y};
      break;
    }
    if (!next) throw std::logic_error("subsumption_chain: no removable precedence pair");

    const std::string target = canonical_key(*next);
    const Label& x_label = r.label(removed.first);
    const Label& y_label = r.label(removed.second);
    auto path = detail::search_class(current, [&](const CohWord& w) -> detail::GoalHit {
      for (std::size_t i = 1; i < w.size(); ++i) {
        if (transposition_case(w, i) != TranspositionCase::TS) continue;
        const auto& term = w[i - 1];
        const auto& start = w[i];
        if (!term.is_elementary() || !start.is_elementary()) continue;
        if (term.carrier()[mask::positions(term.marked())[0]] != x_label ||
            start.carrier()[mask::positions(start.marked())[0]] != y_label)
          continue;
        for (auto order : {MergeOrder::TerminatedFirst, MergeOrder::StartedFirst}) {
          CohWord swapped = transpose(w, i, order);
          if (canonical_key(psi(swapped)) == target)
            return std::make_pair(std::optional<TranspositionStep>({i, TranspositionCase::TS, order}),
                                  std::move(swapped));
        }
      }
      return std::nullopt;
    });
    if (!path) throw std::logic_error("subsumption_chain: no adjacent terminate/start representative");
    current = path->words.back();
    append(std::move(*path));
    r = std::move(*next);
  }

  if (ends.end && current != *ends.end) {
    auto path = detail::search_class(current, [&](const CohWord& w) -> detail::GoalHit {
      if (w == *ends.end) return std::make_pair(std::optional<TranspositionStep>{}, w);
      return std::nullopt;
    });
    if (!path) throw Error(ErrorKind::InvalidInput, "end word is not reachable from the computed chain");
    append(std::move(*path));
  }
  return chain;
}

/// w1 <= w2 on step sequences, decided on the ipomset side.
inline bool leq_words(const CohWord& a, const CohWord& b) { return is_subsumption(psi(a), psi(b)).has_value(); }

}  // namespace ipomset
