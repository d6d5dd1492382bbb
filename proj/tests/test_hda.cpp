#include <gtest/gtest.h>

#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace ipomset;

namespace {

ErrorKind hda_error(const RawHda& raw) {
  try {
    validate_hda(raw);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected a validation error";
  return ErrorKind::InvalidInput;
}

// One vertex with two loops a and b and the square between them; the
// square's lower-b face is `lower_b` (either loop would be well-typed only
// for the a-loop, so a mismatching choice breaks the corner identities).
RawHda torus(const std::string& lower_b_target) {
  RawHda raw;
  raw.cells.push_back({"v", {}, {}, {}});
  raw.cells.push_back({"w", {}, {}, {}});
  raw.cells.push_back({"ea", {"a"}, {{0, "v"}}, {{0, "v"}}});
  raw.cells.push_back({"eb", {"b"}, {{0, "v"}}, {{0, "v"}}});
  raw.cells.push_back({"ea2", {"a"}, {{0, "w"}}, {{0, "v"}}});
  raw.cells.push_back({"s", {"a", "b"}, {{0, "eb"}, {1, lower_b_target}}, {{0, "eb"}, {1, "ea"}}});
  raw.start = {"v"};
  raw.accept = {"v"};
  return raw;
}

std::string key_of(const char* word) { return canonical_key(psi(parse_loset(word))); }

}  // namespace

TEST(ValidateHda, TwoSquares) {
  const Hda x = fixtures::two_squares();
  EXPECT_EQ(x.size(), 15u);
  std::size_t by_dim[3] = {0, 0, 0};
  for (CellIndex q = 0; q < x.size(); ++q) ++by_dim[x.dimension(q)];
  EXPECT_EQ(by_dim[0], 6u);
  EXPECT_EQ(by_dim[1], 7u);
  EXPECT_EQ(by_dim[2], 2u);
}

TEST(ValidateHda, SingleVertex) {
  const Hda x = validate_hda({{{"v", {}, {}, {}}}, {"v"}, {"v"}});
  EXPECT_EQ(x.size(), 1u);
}

TEST(ValidateHda, Errors) {
  EXPECT_EQ(hda_error({{{"e", {"a"}, {{0, "v"}}, {}}, {"v", {}, {}, {}}}, {}, {}}), ErrorKind::MissingFace);
  EXPECT_EQ(hda_error({{{"e", {"a"}, {{0, "u"}}, {{0, "u"}}}}, {}, {}}), ErrorKind::UnknownCell);
  EXPECT_EQ(hda_error({{{"e", {"a"}, {{0, "f"}}, {{0, "f"}}}, {"f", {"a"}, {{0, "e"}}, {{0, "e"}}}}, {}, {}}),
            ErrorKind::FaceConclistMismatch);
  EXPECT_EQ(hda_error({{{"v", {}, {}, {}}}, {"nope"}, {}}), ErrorKind::UnknownCell);
}

TEST(ValidateHda, CornerIdentities) {
  EXPECT_NO_THROW(validate_hda(torus("ea")));
  EXPECT_EQ(hda_error(torus("ea2")), ErrorKind::PrecubicalViolation);
}

TEST(Face, SquareCorners) {
  const Hda x = fixtures::two_squares();
  const CellIndex bd = *x.index_of("bd");
  EXPECT_EQ(x.id(face(x, bd, 0b11, 0)), "ac");
  EXPECT_EQ(x.id(face(x, bd, 0b11, 1)), "ce");
  EXPECT_EQ(face(x, bd, 0, 0), bd);
  EXPECT_THROW(face(x, bd, 0b100, 0), Error);
  EXPECT_THROW(face(x, 99, 0, 0), Error);
}

TEST(Face, CompositionOrderIsIrrelevant) {
  gen::Rng rng(101);
  for (int i = 0; i < 100; ++i) {
    const Hda x = gen::hda(rng);
    for (CellIndex q = 0; q < x.size(); ++q)
      for (std::size_t a = 0; a < x.dimension(q); ++a)
        for (std::size_t b = 0; b < x.dimension(q); ++b) {
          if (a == b) continue;
          for (int nu = 0; nu < 2; ++nu)
            for (int mu = 0; mu < 2; ++mu) {
              const std::size_t b_after = b > a ? b - 1 : b, a_after = a > b ? a - 1 : a;
              EXPECT_EQ(x.singleton_face(x.singleton_face(q, a, nu), b_after, mu),
                        x.singleton_face(x.singleton_face(q, b, mu), a_after, nu));
            }
        }
  }
}

TEST(Path, StraightRunReadsBThenC) {
  const Hda x = fixtures::two_squares();
  auto at = [&](const char* id) { return *x.index_of(id); };
  const HdaPath run{{at("ac"), at("bc"), at("cc"), at("dc"), at("ec")},
                    {{StepDir::Up, 1}, {StepDir::Down, 1}, {StepDir::Up, 1}, {StepDir::Down, 1}}};
  const CohWord w = ev_path(x, run);
  EXPECT_EQ(to_loset(w), "[b.][.b][c.][.c]");
  EXPECT_EQ(canonical_key(psi(w)), key_of("[b.][.b][c.][.c]"));
}

TEST(Path, TrivialPathIsIdentity) {
  const Hda x = fixtures::two_squares();
  const CellIndex bd = *x.index_of("bd");
  EXPECT_EQ(to_loset(ev_path(x, {{bd}, {}})), "[.b.|.a.]");
}

TEST(Path, ThroughSquare) {
  const Hda x = fixtures::two_squares();
  auto at = [&](const char* id) { return *x.index_of(id); };
  const HdaPath alpha{{at("ac"), at("bd"), at("be"), at("ce")},
                      {{StepDir::Up, 0b11}, {StepDir::Down, 0b10}, {StepDir::Down, 1}}};
  const CohWord w = ev_path(x, alpha);
  EXPECT_EQ(to_loset(w), "[b.|a.][.b.|.a][.b]");
  EXPECT_TRUE(isomorphic(psi(w), psi(parse_loset("[b.|a.][.b|.a]"))).has_value());
}

TEST(Path, InvalidSteps) {
  const Hda x = fixtures::two_squares();
  auto at = [&](const char* id) { return *x.index_of(id); };
  EXPECT_THROW(ev_path(x, {{at("ac"), at("dc")}, {{StepDir::Up, 1}}}), Error);
  EXPECT_THROW(ev_path(x, {{at("ac")}, {{StepDir::Up, 1}}}), Error);
}

TEST(Path, Concatenation) {
  const Hda x = fixtures::two_squares();
  auto at = [&](const char* id) { return *x.index_of(id); };
  const HdaPath a{{at("ac"), at("bc")}, {{StepDir::Up, 1}}};
  const HdaPath b{{at("bc"), at("cc")}, {{StepDir::Down, 1}}};
  const HdaPath ab = concat(a, b);
  EXPECT_EQ(ab.cells.size(), 3u);
  EXPECT_EQ(ev_path(x, ab), concat(ev_path(x, a), ev_path(x, b)));
  EXPECT_THROW(concat(b, a), Error);
}

TEST(Language, TwoSquares) {
  EXPECT_EQ(language_bounded(fixtures::two_squares(), 6), std::set<std::string>{key_of("[b.][.b][c.][.c]")});
}

TEST(Language, SingleVertex) {
  const Hda x = validate_hda({{{"v", {}, {}, {}}}, {"v"}, {"v"}});
  EXPECT_EQ(language_bounded(x, 4), std::set<std::string>{"[]"});
}

TEST(Language, GrowsWithBound) {
  const Hda x = validate_hda(torus("ea"));
  const auto small = language_bounded(x, 2), large = language_bounded(x, 4);
  EXPECT_TRUE(std::includes(large.begin(), large.end(), small.begin(), small.end()));
  EXPECT_GT(large.size(), small.size());
  EXPECT_TRUE(large.count(key_of("[a.|b.][.a|.b]")));
}

TEST(Language, ClosedUnderSubsumption) {
  gen::Rng rng(103);
  const std::size_t bound = 6;
  for (int i = 0; i < 60; ++i) {
    const Hda x = gen::hda(rng);
    const auto lang = language_bounded(x, bound);
    for (const auto& key : lang) {
      const Ipomset q = psi(parse_loset(key));
      std::size_t s = 0, t = 0;
      for (std::size_t e = 0; e < q.size(); ++e) {
        s += q.is_source(e);
        t += q.is_target(e);
      }
      if (2 * q.size() - s - t > bound) continue;
      for (const auto& p : oracle::more_ordered(q)) EXPECT_TRUE(lang.count(canonical_key(p))) << key;
    }
  }
}

TEST(Isomorphism, HdaWithItself) {
  const Hda x = fixtures::two_squares();
  EXPECT_TRUE(hda_isomorphic(x, x).has_value());
  RawHda raw = to_raw(x);
  std::reverse(raw.cells.begin(), raw.cells.end());
  EXPECT_TRUE(hda_isomorphic(x, validate_hda(raw)).has_value());
  raw.accept = {"ee"};
  EXPECT_FALSE(hda_isomorphic(x, validate_hda(raw)).has_value());
}
