#pragma once

// Starters, terminators and coherent words over them.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ipomset/core.hpp"
#include "ipomset/mask.hpp"

namespace ipomset {

enum class LetterKind { Starter, Terminator };

/// A discrete ipomset that starts or terminates the marked events of its
/// carrier conclist. With nothing marked it is the identity on the carrier;
/// the kind of an identity is only a display convention.
class StepLetter {
 public:
  StepLetter(LabelSeq carrier, Mask marked, LetterKind kind)
      : carrier_(std::move(carrier)), marked_(marked), kind_(kind) {
    if (carrier_.size() > kMaxConclist)
      throw Error(ErrorKind::SizeLimitExceeded, "conclists are limited to 64 events");
    if (!mask::subset(marked_, mask::full(carrier_.size())))
      throw Error(ErrorKind::NotASubset, "marked events are not a subset of the carrier");
  }

  const LabelSeq& carrier() const noexcept { return carrier_; }
  Mask marked() const noexcept { return marked_; }
  LetterKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return carrier_.size(); }

  bool is_identity() const noexcept { return marked_ == 0; }
  bool is_elementary() const noexcept { return mask::count(marked_) == 1; }
  /// Membership in St resp. Te; identities belong to both.
  bool is_starter() const noexcept { return is_identity() || kind_ == LetterKind::Starter; }
  bool is_terminator() const noexcept { return is_identity() || kind_ == LetterKind::Terminator; }

  LabelSeq source() const {
    return kind_ == LetterKind::Starter ? remove_positions(carrier_, marked_) : carrier_;
  }
  LabelSeq target() const {
    return kind_ == LetterKind::Terminator ? remove_positions(carrier_, marked_) : carrier_;
  }

  friend bool operator==(const StepLetter& a, const StepLetter& b) {
    return a.carrier_ == b.carrier_ && a.marked_ == b.marked_ &&
           (a.kind_ == b.kind_ || a.marked_ == 0);
  }

 private:
  LabelSeq carrier_;
  Mask marked_;
  LetterKind kind_;
};

/// Starter on u starting the events in a.
inline StepLetter make_starter(LabelSeq u, Mask a) { return {std::move(u), a, LetterKind::Starter}; }
/// Terminator on u terminating the events in b.
inline StepLetter make_terminator(LabelSeq u, Mask b) { return {std::move(u), b, LetterKind::Terminator}; }
inline StepLetter make_identity(LabelSeq u) { return {std::move(u), 0, LetterKind::Starter}; }

/// The letter as an ipomset on events e0, e1, ... in carrier order.
inline Ipomset as_ipomset(const StepLetter& l) {
  const std::size_t n = l.size();
  std::vector<Event> events;
  for (std::size_t i = 0; i < n; ++i) events.push_back({"e" + std::to_string(i), l.carrier()[i]});
  Relation ev(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) ev.set(i, j);
  std::vector<bool> s(n, true), t(n, true);
  for (auto i : mask::positions(l.marked())) {
    if (l.kind() == LetterKind::Starter) s[i] = false;
    else t[i] = false;
  }
  return Ipomset::make(std::move(events), Relation(n), std::move(ev), std::move(s), std::move(t));
}

/// A coherent word: the target of every letter equals the source of the next.
/// The interface is the source conclist; it is what identifies the empty word.
class CohWord {
 public:
  CohWord(LabelSeq interface, std::vector<StepLetter> letters)
      : interface_(std::move(interface)), letters_(std::move(letters)) {
    check();
  }

  explicit CohWord(std::vector<StepLetter> letters)
      : interface_(first_source(letters)), letters_(std::move(letters)) {
    check();
  }

  /// The identity word: a single identity letter.
  static CohWord identity(const LabelSeq& u) { return CohWord({make_identity(u)}); }

  const std::vector<StepLetter>& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  const StepLetter& operator[](std::size_t i) const { return letters_[i]; }

  const LabelSeq& source() const noexcept { return interface_; }
  LabelSeq target() const { return letters_.empty() ? interface_ : letters_.back().target(); }

  friend bool operator==(const CohWord& a, const CohWord& b) {
    return a.interface_ == b.interface_ && a.letters_ == b.letters_;
  }

 private:
  void check() const {
    if (!letters_.empty() && letters_.front().source() != interface_)
      throw Error(ErrorKind::NotCoherent, "first letter does not start at the word's interface");
    for (std::size_t i = 0; i + 1 < letters_.size(); ++i)
      if (letters_[i].target() != letters_[i + 1].source())
        throw Error(ErrorKind::NotCoherent, "letters " + std::to_string(i + 1) + " and " +
                                                std::to_string(i + 2) + " do not match");
  }

  static LabelSeq first_source(const std::vector<StepLetter>& letters) {
    if (letters.empty()) throw Error(ErrorKind::NotCoherent, "empty word without interface");
    return letters.front().source();
  }

  LabelSeq interface_;
  std::vector<StepLetter> letters_;
};

/// Concatenation; the words must meet at a common conclist.
inline CohWord concat(const CohWord& a, const CohWord& b) {
  std::vector<StepLetter> letters = a.letters();
  letters.insert(letters.end(), b.letters().begin(), b.letters().end());
  if (a.target() != b.source()) throw Error(ErrorKind::NotCoherent, "words do not meet");
  return CohWord(a.source(), std::move(letters));
}

inline bool is_dense(const CohWord& w) {
  if (w.size() == 1 && w[0].is_identity()) return true;
  for (const auto& l : w.letters())
    if (!l.is_elementary()) return false;
  return true;
}

inline bool is_sparse(const CohWord& w) {
  if (w.size() == 1 && w[0].is_identity()) return true;
  if (w.empty()) return false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i].is_identity()) return false;
    if (i > 0 && w[i].kind() == w[i - 1].kind()) return false;
  }
  return true;
}

}  // namespace ipomset
