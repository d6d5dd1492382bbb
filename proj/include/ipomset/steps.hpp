#pragma once

// Step decompositions: the congruence generated by fusing neighbouring
// starters (resp. terminators) and absorbing identities, its sparse normal
// form, and the two mutually inverse maps between ipomsets and step sequences.

#include <cstddef>
#include <string>
#include <vector>

#include "ipomset/core.hpp"
#include "ipomset/letter.hpp"
#include "ipomset/loset.hpp"

namespace ipomset {

/// Glues two starters into a starter, or two terminators into a terminator.
/// An identity on either side is absorbed.
inline StepLetter fuse(const StepLetter& first, const StepLetter& second) {
  if (first.target() != second.source())
    throw Error(ErrorKind::NotCoherent, "fuse: " + to_loset(first) + " does not meet " + to_loset(second));
  if (first.is_identity()) return second;
  if (second.is_identity()) return first;
  if (first.kind() != second.kind())
    throw Error(ErrorKind::KindMismatch, "fuse: cannot fuse a starter with a terminator");

  if (first.kind() == LetterKind::Starter) {
    // first = up_A on U \ B, second = up_B on U  ->  up_{A+B} on U
    const Mask a = mask::embed(first.marked(), second.marked(), second.size());
    return make_starter(second.carrier(), a | second.marked());
  }
  // first = down_A on U, second = down_B on U \ A  ->  down_{A+B} on U
  const Mask b = mask::embed(second.marked(), first.marked(), first.size());
  return make_terminator(first.carrier(), first.marked() | b);
}

/// Evaluates a word by gluing its letters left to right.
inline Ipomset psi(const CohWord& w) {
  if (w.empty()) return identity(w.source());
  Ipomset acc = as_ipomset(w[0]);
  for (std::size_t i = 1; i < w.size(); ++i) acc = glue(acc, as_ipomset(w[i]));
  return acc;
}

/// The sparse step decomposition, read off the maximal antichains of the
/// canonical interval representation.
inline CohWord phi(const Ipomset& p) {
  const IntervalRep rep = interval_representation(p);
  if (p.empty()) return CohWord::identity({});

  const std::size_t n = p.size(), m = rep.magnitude;
  std::vector<std::vector<bool>> antichain(m, std::vector<bool>(n, false));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t i = rep.begin[x]; i <= rep.end[x]; ++i) antichain[i][x] = true;

  auto letter_on = [&](std::size_t i, auto&& marked, LetterKind kind) {
    const auto order = ordered_antichain(p, antichain[i]);
    LabelSeq carrier;
    Mask bits = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      carrier.push_back(p.label(order[k]));
      if (marked(order[k])) bits |= mask::bit(k);
    }
    return StepLetter(std::move(carrier), bits, kind);
  };

  std::vector<StepLetter> letters;
  letters.push_back(letter_on(0, [&](std::size_t x) { return !p.is_source(x); }, LetterKind::Starter));
  for (std::size_t i = 0; i + 1 < m; ++i) {
    letters.push_back(letter_on(i, [&](std::size_t x) { return !antichain[i + 1][x]; }, LetterKind::Terminator));
    letters.push_back(letter_on(i + 1, [&](std::size_t x) { return !antichain[i][x]; }, LetterKind::Starter));
  }
  letters.push_back(letter_on(m - 1, [&](std::size_t x) { return !p.is_target(x); }, LetterKind::Terminator));

  const LabelSeq first_carrier = letters.front().carrier();
  if (letters.back().is_identity()) letters.pop_back();
  if (!letters.empty() && letters.front().is_identity()) letters.erase(letters.begin());
  if (letters.empty()) return CohWord::identity(first_carrier);
  return CohWord(std::move(letters));
}

/// Drops identities and fuses same-kind neighbours. Fused letters are never
/// identities, so a single stack pass reaches the fixpoint.
inline CohWord normalize(const CohWord& w) {
  std::vector<StepLetter> out;
  for (const auto& l : w.letters()) {
    if (l.is_identity()) continue;
    if (!out.empty() && out.back().kind() == l.kind()) out.back() = fuse(out.back(), l);
    else out.push_back(l);
  }
  if (out.empty()) return CohWord::identity(w.source());
  return CohWord(std::move(out));
}

/// Splits every letter into elementary ones, handling marked events in
/// carrier order.
inline CohWord densify(const CohWord& w) {
  if (w.empty()) return CohWord::identity(w.source());
  std::vector<StepLetter> out;
  for (const auto& l : w.letters()) {
    if (l.is_identity()) continue;
    if (mask::count(l.marked()) == 1) {
      out.push_back(l);
      continue;
    }
    const auto pos = mask::positions(l.marked());
    if (l.kind() == LetterKind::Starter) {
      Mask later = l.marked();
      for (auto p : pos) {
        later &= ~mask::bit(p);
        out.push_back(make_starter(remove_positions(l.carrier(), later),
                                   mask::compress(mask::bit(p), later, l.size())));
      }
    } else {
      Mask earlier = 0;
      for (auto p : pos) {
        out.push_back(make_terminator(remove_positions(l.carrier(), earlier),
                                      mask::compress(mask::bit(p), earlier, l.size())));
        earlier |= mask::bit(p);
      }
    }
  }
  if (out.empty()) return CohWord::identity(w.source());
  return CohWord(w.source(), std::move(out));
}

inline bool equivalent(const CohWord& a, const CohWord& b) { return normalize(a) == normalize(b); }

/// Isomorphism-invariant key: the printed sparse decomposition. Two interval
/// ipomsets are isomorphic iff their keys are equal.
inline std::string canonical_key(const Ipomset& p) { return to_loset(phi(p)); }

/// Key of the step sequence of a word, computed by rewriting only.
inline std::string word_key(const CohWord& w) { return to_loset(normalize(w)); }

}  // namespace ipomset
