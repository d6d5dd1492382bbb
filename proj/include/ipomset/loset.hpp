#pragma once

// ASCII notation for step letters and coherent words.
//
//   word   := letter+            (whitespace allowed between letters)
//   letter := '[' row ('|' row)* ']'  |  '[]'
//   row    := '.'? IDENT '.'?
//
// Rows are listed top to bottom in event order. `x.` is started, `.x` is
// terminated, `.x.` is carried through. `[]` is the identity on the empty
// conclist.

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ipomset/letter.hpp"

namespace ipomset {

inline std::string to_loset(const StepLetter& l) {
  std::string out = "[";
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (i > 0) out += '|';
    const bool marked = mask::test(l.marked(), i);
    const bool started = marked && l.kind() == LetterKind::Starter;
    const bool terminated = marked && l.kind() == LetterKind::Terminator;
    if (!started) out += '.';
    out += l.carrier()[i];
    if (!terminated) out += '.';
  }
  return out + "]";
}

inline std::string to_loset(const CohWord& w) {
  if (w.empty()) return to_loset(make_identity(w.source()));
  std::string out;
  for (const auto& l : w.letters()) out += to_loset(l);
  return out;
}

namespace detail {

class LosetParser {
 public:
  explicit LosetParser(std::string_view text) : text_(text) {}

  std::vector<std::pair<StepLetter, std::string>> letters() {
    std::vector<std::pair<StepLetter, std::string>> out;
    skip_space();
    if (at_end()) fail(ErrorKind::SyntaxError, "empty word");
    while (!at_end()) {
      const std::string where = position();
      out.emplace_back(letter(), where);
      skip_space();
    }
    return out;
  }

 private:
  struct Row {
    bool pre, post;
    std::string label;
  };

  StepLetter letter() {
    expect('[');
    std::vector<Row> rows;
    if (peek() == ']') {
      advance();
      return make_identity({});
    }
    const std::string where = position();
    rows.push_back(row());
    while (peek() == '|') {
      advance();
      rows.push_back(row());
    }
    expect(']');

    bool any_started = false, any_terminated = false;
    LabelSeq carrier;
    Mask marked = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      if (!r.pre && !r.post)
        fail(ErrorKind::MixedKindLetter, "bare row '" + r.label + "' at " + where);
      if (!r.pre) any_started = true;
      if (!r.post) any_terminated = true;
      if (!r.pre || !r.post) marked |= mask::bit(i);
      carrier.push_back(r.label);
    }
    if (any_started && any_terminated)
      fail(ErrorKind::MixedKindLetter, "letter at " + where + " both starts and terminates events");
    if (carrier.size() > kMaxConclist) fail(ErrorKind::SizeLimitExceeded, "letter too large at " + where);
    return StepLetter(std::move(carrier), marked,
                      any_terminated ? LetterKind::Terminator : LetterKind::Starter);
  }

  Row row() {
    Row r{false, false, {}};
    if (peek() == '.') {
      r.pre = true;
      advance();
    }
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
      r.label += peek();
      advance();
    }
    if (r.label.empty()) fail(ErrorKind::SyntaxError, "expected a label at " + position());
    if (peek() == '.') {
      r.post = true;
      advance();
    }
    return r;
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }

  void expect(char c) {
    if (peek() != c)
      fail(ErrorKind::SyntaxError, std::string("expected '") + c + "' at " + position());
    advance();
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string position() const { return std::to_string(line_) + ":" + std::to_string(col_); }

  [[noreturn]] void fail(ErrorKind kind, const std::string& msg) const { throw Error(kind, msg); }

  std::string_view text_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

}  // namespace detail

/// Parses a word and checks coherence. Errors carry line:column positions.
inline CohWord parse_loset(std::string_view text) {
  auto parsed = detail::LosetParser(text).letters();
  std::vector<StepLetter> letters;
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    if (i > 0 && parsed[i - 1].first.target() != parsed[i].first.source())
      throw Error(ErrorKind::NotCoherent, "letter at " + parsed[i].second +
                                              " does not continue the previous letter's target");
    letters.push_back(parsed[i].first);
  }
  return CohWord(std::move(letters));
}

inline StepLetter parse_letter(std::string_view text) {
  auto w = parse_loset(text);
  if (w.size() != 1) throw Error(ErrorKind::SyntaxError, "expected exactly one letter");
  return w[0];
}

}  // namespace ipomset
