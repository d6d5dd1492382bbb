#pragma once

// Interval pomsets with interfaces: values, validation, interval recognition,
// gluing composition and isomorphism.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ipomset/error.hpp"
#include "ipomset/relation.hpp"

namespace ipomset {

using Label = std::string;
using LabelSeq = std::vector<Label>;

struct Event {
  std::string id;
  Label label;

  friend bool operator==(const Event&, const Event&) = default;
};

/// A list of concurrent events; the sequence order is the event order.
struct Conclist {
  std::vector<Event> events;

  std::size_t size() const noexcept { return events.size(); }

  LabelSeq labels() const {
    LabelSeq out;
    out.reserve(events.size());
    for (const auto& e : events) out.push_back(e.label);
    return out;
  }
};

/// Unvalidated description, as read from a file. Relations need not be closed.
struct RawIpomset {
  std::vector<Event> events;
  std::vector<std::pair<std::string, std::string>> precedence;
  std::vector<std::pair<std::string, std::string>> event_order;
  std::vector<std::string> sources;
  std::vector<std::string> targets;
};

/// Labels are identifiers so that they can appear in the bracketed letter
/// notation unambiguously.
inline bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
}

/// A validated ipomset. Both relations are stored transitively closed. Events
/// are addressed by index; ids are kept for display and file round-trips.
class Ipomset {
 public:
  /// The empty ipomset, i.e. the identity on the empty conclist.
  Ipomset() = default;

  /// Closes both relations and checks every axiom. Throws ValidationError
  /// listing all violations.
  static Ipomset make(std::vector<Event> events, Relation precedence, Relation event_order,
                      std::vector<bool> sources, std::vector<bool> targets) {
    std::vector<Violation> violations;
    const std::size_t n = events.size();
    if (precedence.size() != n || event_order.size() != n || sources.size() != n ||
        targets.size() != n)
      throw Error(ErrorKind::InvalidInput, "relation sizes do not match the event count");

    std::unordered_set<std::string> seen;
    for (const auto& e : events) {
      if (!seen.insert(e.id).second)
        violations.push_back({ErrorKind::InvalidInput, "duplicate event id " + e.id});
      if (!is_identifier(e.label))
        violations.push_back({ErrorKind::InvalidInput, "label '" + e.label + "' is not an identifier"});
    }

    precedence.close();
    event_order.close();
    if (auto x = precedence.reflexive_witness())
      violations.push_back({ErrorKind::NotAPartialOrder,
                            "precedence has a cycle through " + events[*x].id});
    if (auto x = event_order.reflexive_witness())
      violations.push_back({ErrorKind::NotAPartialOrder,
                            "event order has a cycle through " + events[*x].id});

    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (!precedence(i, j) && !precedence(j, i) && !event_order(i, j) && !event_order(j, i))
          violations.push_back(
              {ErrorKind::NotTotal, events[i].id + " and " + events[j].id + " are unrelated"});

    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (!precedence(j, i)) continue;
        if (sources[i])
          violations.push_back({ErrorKind::InterfaceViolation,
                                "source " + events[i].id + " is preceded by " + events[j].id});
        if (targets[j])
          violations.push_back({ErrorKind::InterfaceViolation,
                                "target " + events[j].id + " precedes " + events[i].id});
      }

    if (!violations.empty()) throw ValidationError(std::move(violations));

    Ipomset p;
    p.events_ = std::move(events);
    p.precedence_ = std::move(precedence);
    p.event_order_ = std::move(event_order);
    p.sources_ = std::move(sources);
    p.targets_ = std::move(targets);
    return p;
  }

  std::size_t size() const noexcept { return events_.size(); }
  bool empty() const noexcept { return events_.empty(); }

  const std::vector<Event>& events() const noexcept { return events_; }
  const std::string& id(std::size_t i) const { return events_[i].id; }
  const Label& label(std::size_t i) const { return events_[i].label; }

  const Relation& precedence() const noexcept { return precedence_; }
  const Relation& event_order() const noexcept { return event_order_; }

  bool precedes(std::size_t i, std::size_t j) const { return precedence_(i, j); }
  bool event_before(std::size_t i, std::size_t j) const { return event_order_(i, j); }
  bool concurrent(std::size_t i, std::size_t j) const {
    return i != j && !precedence_(i, j) && !precedence_(j, i);
  }
  /// Event order between <-incomparable events; the only kind isomorphisms see.
  bool essential_before(std::size_t i, std::size_t j) const {
    return concurrent(i, j) && event_order_(i, j);
  }

  bool is_source(std::size_t i) const { return sources_[i]; }
  bool is_target(std::size_t i) const { return targets_[i]; }
  const std::vector<bool>& sources() const noexcept { return sources_; }
  const std::vector<bool>& targets() const noexcept { return targets_; }

  std::optional<std::size_t> index_of(std::string_view id) const {
    for (std::size_t i = 0; i < events_.size(); ++i)
      if (events_[i].id == id) return i;
    return std::nullopt;
  }

 private:
  std::vector<Event> events_;
  Relation precedence_;
  Relation event_order_;
  std::vector<bool> sources_;
  std::vector<bool> targets_;
};

inline Ipomset validate(const RawIpomset& raw) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < raw.events.size(); ++i) index.emplace(raw.events[i].id, i);
  std::vector<Violation> unknown;
  auto lookup = [&](const std::string& id) -> std::optional<std::size_t> {
    auto it = index.find(id);
    if (it == index.end()) {
      unknown.push_back({ErrorKind::InvalidInput, "unknown event id " + id});
      return std::nullopt;
    }
    return it->second;
  };

  const std::size_t n = raw.events.size();
  Relation lt(n), ev(n);
  for (const auto& [a, b] : raw.precedence) {
    auto i = lookup(a), j = lookup(b);
    if (i && j) lt.set(*i, *j);
  }
  for (const auto& [a, b] : raw.event_order) {
    auto i = lookup(a), j = lookup(b);
    if (i && j) ev.set(*i, *j);
  }
  std::vector<bool> s(n, false), t(n, false);
  for (const auto& id : raw.sources)
    if (auto i = lookup(id)) s[*i] = true;
  for (const auto& id : raw.targets)
    if (auto i = lookup(id)) t[*i] = true;
  if (!unknown.empty()) throw ValidationError(std::move(unknown));
  return Ipomset::make(raw.events, std::move(lt), std::move(ev), std::move(s), std::move(t));
}

/// Inverse of validate: precedence as its covering pairs, event order as the
/// essential pairs only.
inline RawIpomset to_raw(const Ipomset& p) {
  RawIpomset raw;
  raw.events = p.events();
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (p.precedes(i, j)) {
        bool covered = false;
        for (std::size_t k = 0; k < n && !covered; ++k)
          covered = p.precedes(i, k) && p.precedes(k, j);
        if (!covered) raw.precedence.emplace_back(p.id(i), p.id(j));
      }
      if (p.essential_before(i, j)) raw.event_order.emplace_back(p.id(i), p.id(j));
    }
  for (std::size_t i = 0; i < n; ++i) {
    if (p.is_source(i)) raw.sources.push_back(p.id(i));
    if (p.is_target(i)) raw.targets.push_back(p.id(i));
  }
  return raw;
}

/// Indices of the selected events sorted by event order. The selection must be
/// a <-antichain, on which event order is total.
inline std::vector<std::size_t> ordered_antichain(const Ipomset& p, const std::vector<bool>& selected) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (selected[i]) out.push_back(i);
  std::sort(out.begin(), out.end(),
            [&](std::size_t a, std::size_t b) { return p.event_before(a, b); });
  return out;
}

inline Conclist restrict_to(const Ipomset& p, const std::vector<bool>& selected) {
  Conclist c;
  for (auto i : ordered_antichain(p, selected)) c.events.push_back(p.events()[i]);
  return c;
}

inline Conclist source_interface(const Ipomset& p) { return restrict_to(p, p.sources()); }
inline Conclist target_interface(const Ipomset& p) { return restrict_to(p, p.targets()); }

/// id_U: every event is both source and target, no precedence.
inline Ipomset identity(const LabelSeq& labels) {
  const std::size_t n = labels.size();
  std::vector<Event> events;
  for (std::size_t i = 0; i < n; ++i) events.push_back({"e" + std::to_string(i), labels[i]});
  Relation ev(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) ev.set(i, j);
  return Ipomset::make(std::move(events), Relation(n), std::move(ev), std::vector<bool>(n, true),
                       std::vector<bool>(n, true));
}

// ---------------------------------------------------------------------------
// Interval orders

/// Interval representation with integer endpoints 0..magnitude-1, built from
/// the ranks of predecessor and successor sets.
struct IntervalRep {
  std::vector<std::size_t> begin;
  std::vector<std::size_t> end;
  std::size_t magnitude = 0;
};

namespace detail {

inline std::vector<std::size_t> predecessor_counts(const Relation& lt) {
  std::vector<std::size_t> c(lt.size(), 0);
  for (std::size_t x = 0; x < lt.size(); ++x)
    for (std::size_t y = 0; y < lt.size(); ++y) c[x] += lt(y, x);
  return c;
}

inline std::vector<std::size_t> successor_counts(const Relation& lt) {
  std::vector<std::size_t> c(lt.size(), 0);
  for (std::size_t x = 0; x < lt.size(); ++x)
    for (std::size_t y = 0; y < lt.size(); ++y) c[x] += lt(x, y);
  return c;
}

// Dense rank of each value among the distinct values, ascending.
inline std::vector<std::size_t> dense_rank(const std::vector<std::size_t>& values, bool descending) {
  std::vector<std::size_t> distinct(values);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (descending) std::reverse(distinct.begin(), distinct.end());
  std::vector<std::size_t> out;
  out.reserve(values.size());
  for (auto v : values)
    out.push_back(static_cast<std::size_t>(std::find(distinct.begin(), distinct.end(), v) -
                                           distinct.begin()));
  return out;
}

}  // namespace detail

/// A strict order is an interval order iff its strict predecessor sets are
/// totally ordered by inclusion.
inline bool is_interval_order(const Relation& lt) {
  const std::size_t n = lt.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      bool x_in_y = true, y_in_x = true;
      for (std::size_t z = 0; z < n; ++z) {
        if (lt(z, x) && !lt(z, y)) x_in_y = false;
        if (lt(z, y) && !lt(z, x)) y_in_x = false;
      }
      if (!x_in_y && !y_in_x) return false;
    }
  return true;
}

inline bool is_interval(const Ipomset& p) { return is_interval_order(p.precedence()); }

/// Canonical representation: begin(x) is the rank of x's predecessor set in
/// the inclusion chain, end(x) the rank of its successor set in the reverse
/// chain. On a chain, distinct sets have distinct sizes, so ranks by size.
inline IntervalRep interval_representation(const Ipomset& p) {
  if (!is_interval(p)) throw Error(ErrorKind::NotInterval, "precedence contains a 2+2");
  const Relation& lt = p.precedence();
  IntervalRep rep;
  rep.begin = detail::dense_rank(detail::predecessor_counts(lt), false);
  rep.end = detail::dense_rank(detail::successor_counts(lt), true);
  if (p.empty()) return rep;

  const std::size_t m_begin = *std::max_element(rep.begin.begin(), rep.begin.end()) + 1;
  const std::size_t m_end = *std::max_element(rep.end.begin(), rep.end.end()) + 1;
  if (m_begin != m_end)
    throw std::logic_error("interval representation: predecessor and successor chains differ");
  rep.magnitude = m_begin;

  for (std::size_t x = 0; x < p.size(); ++x) {
    if (rep.begin[x] > rep.end[x]) throw std::logic_error("interval representation: b(x) > e(x)");
    if (p.is_source(x) && rep.begin[x] != 0) throw std::logic_error("interval representation: source not at 0");
    if (p.is_target(x) && rep.end[x] != rep.magnitude - 1)
      throw std::logic_error("interval representation: target not at m-1");
    for (std::size_t y = 0; y < p.size(); ++y)
      if (p.precedes(x, y) != (rep.end[x] < rep.begin[y]))
        throw std::logic_error("interval representation does not realize the order");
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Gluing

/// Serial composition P * Q. The target interface of p is matched with the
/// source interface of q position by position in event order; q's events are
/// renamed where their ids clash with p's.
inline Ipomset glue(const Ipomset& p, const Ipomset& q) {
  const auto tp = ordered_antichain(p, p.targets());
  const auto sq = ordered_antichain(q, q.sources());
  auto labels_of = [](const Ipomset& x, const std::vector<std::size_t>& idx) {
    LabelSeq l;
    for (auto i : idx) l.push_back(x.label(i));
    return l;
  };
  const LabelSeq expected = labels_of(p, tp), actual = labels_of(q, sq);
  if (expected != actual) {
    auto show = [](const LabelSeq& s) {
      std::string out = "[";
      for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + s[i];
      return out + "]";
    };
    throw Error(ErrorKind::InterfaceMismatch, "expected " + show(expected) + ", got " + show(actual));
  }

  std::vector<Event> events = p.events();
  std::unordered_set<std::string> ids;
  for (const auto& e : events) ids.insert(e.id);

  std::vector<std::size_t> qmap(q.size());
  std::vector<bool> shared(q.size(), false);
  for (std::size_t k = 0; k < sq.size(); ++k) {
    qmap[sq[k]] = tp[k];
    shared[sq[k]] = true;
  }
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (shared[i]) continue;
    std::string id = q.id(i);
    while (ids.count(id)) id += '\'';
    ids.insert(id);
    qmap[i] = events.size();
    events.push_back({id, q.label(i)});
  }

  const std::size_t n = events.size();
  Relation lt(n), ev(n);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (p.precedes(i, j)) lt.set(i, j);
      if (p.event_before(i, j)) ev.set(i, j);
    }
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) {
      if (q.precedes(i, j)) lt.set(qmap[i], qmap[j]);
      if (q.event_before(i, j)) ev.set(qmap[i], qmap[j]);
    }
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.is_target(i)) continue;
    for (std::size_t j = 0; j < q.size(); ++j)
      if (!q.is_source(j)) lt.set(i, qmap[j]);
  }

  std::vector<bool> s(n, false), t(n, false);
  for (std::size_t i = 0; i < p.size(); ++i) s[i] = p.is_source(i);
  for (std::size_t j = 0; j < q.size(); ++j)
    if (q.is_target(j)) t[qmap[j]] = true;

  Ipomset r = Ipomset::make(std::move(events), std::move(lt), std::move(ev), std::move(s), std::move(t));
  if (is_interval(p) && is_interval(q) && !is_interval(r))
    throw std::logic_error("glue: gluing of interval ipomsets is not interval");
  return r;
}

// ---------------------------------------------------------------------------
// Isomorphism

/// event index in the first ipomset -> event index in the second.
using EventMap = std::vector<std::size_t>;

namespace detail {

struct EventSignature {
  Label label;
  bool source, target;
  std::size_t preds, succs;
  friend bool operator==(const EventSignature&, const EventSignature&) = default;
};

inline std::vector<EventSignature> signatures(const Ipomset& p) {
  const auto preds = predecessor_counts(p.precedence());
  const auto succs = successor_counts(p.precedence());
  std::vector<EventSignature> out;
  for (std::size_t i = 0; i < p.size(); ++i)
    out.push_back({p.label(i), p.is_source(i), p.is_target(i), preds[i], succs[i]});
  return out;
}

// Generic backtracking over label- and interface-respecting bijections.
// `candidate(x, y)` filters single pairs; `compatible(x, y, x2, y2)` checks a
// new pair (x, y) against an already assigned pair (x2, y2).
template <class Candidate, class Compatible>
std::optional<EventMap> search_bijection(std::size_t n, Candidate&& candidate, Compatible&& compatible) {
  EventMap map(n, 0);
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> extend = [&](std::size_t x) -> bool {
    if (x == n) return true;
    for (std::size_t y = 0; y < n; ++y) {
      if (used[y] || !candidate(x, y)) continue;
      bool ok = true;
      for (std::size_t x2 = 0; x2 < x && ok; ++x2) ok = compatible(x, y, x2, map[x2]);
      if (!ok) continue;
      used[y] = true;
      map[x] = y;
      if (extend(x + 1)) return true;
      used[y] = false;
    }
    return false;
  };
  if (!extend(0)) return std::nullopt;
  return map;
}

inline bool same_label_multiset(const Ipomset& p, const Ipomset& q) {
  std::multiset<Label> a, b;
  for (const auto& e : p.events()) a.insert(e.label);
  for (const auto& e : q.events()) b.insert(e.label);
  return a == b;
}

}  // namespace detail

/// The unique isomorphism p -> q, if any. Inessential event order (between
/// <-comparable events) is ignored.
inline std::optional<EventMap> isomorphic(const Ipomset& p, const Ipomset& q) {
  if (p.size() != q.size() || p.precedence().pair_count() != q.precedence().pair_count() ||
      !detail::same_label_multiset(p, q))
    return std::nullopt;
  const auto sp = detail::signatures(p), sq = detail::signatures(q);
  return detail::search_bijection(
      p.size(), [&](std::size_t x, std::size_t y) { return sp[x] == sq[y]; },
      [&](std::size_t x, std::size_t y, std::size_t x2, std::size_t y2) {
        if (p.precedes(x, x2) != q.precedes(y, y2) || p.precedes(x2, x) != q.precedes(y2, y))
          return false;
        if (p.concurrent(x, x2) && p.event_before(x, x2) != q.event_before(y, y2)) return false;
        return true;
      });
}

}  // namespace ipomset
