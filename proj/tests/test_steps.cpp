#include <gtest/gtest.h>

#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace ipomset;

namespace {

ErrorKind parse_error(const std::string& text) {
  try {
    parse_loset(text);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected a parse error for " << text;
  return ErrorKind::InvalidInput;
}

}  // namespace

TEST(Loset, ParsesFourEventsWord) {
  const CohWord w = parse_loset(fixtures::kFourSparse);
  ASSERT_EQ(w.size(), 6u);
  EXPECT_TRUE(w[0].is_starter());
  EXPECT_EQ(w[0].carrier(), (LabelSeq{"a", "c"}));
  EXPECT_EQ(w[0].marked(), 1u);
  EXPECT_EQ(w.source(), LabelSeq{"c"});
  EXPECT_TRUE(w.target().empty());
  EXPECT_EQ(to_loset(w), fixtures::kFourSparse);
}

TEST(Loset, CarriedRowsGiveIdentity) {
  const StepLetter l = parse_letter("[.a.]");
  EXPECT_TRUE(l.is_identity());
  EXPECT_EQ(l.carrier(), LabelSeq{"a"});
  EXPECT_TRUE(parse_letter("[]").is_identity());
  EXPECT_TRUE(parse_letter("[]").carrier().empty());
}

TEST(Loset, Errors) {
  EXPECT_EQ(parse_error("[a]"), ErrorKind::MixedKindLetter);
  EXPECT_EQ(parse_error("[a.|.b]"), ErrorKind::MixedKindLetter);
  EXPECT_EQ(parse_error("[a.][.b]"), ErrorKind::NotCoherent);
  EXPECT_EQ(parse_error("[a."), ErrorKind::SyntaxError);
  EXPECT_EQ(parse_error(""), ErrorKind::SyntaxError);
  EXPECT_EQ(parse_error("[.|a.]"), ErrorKind::SyntaxError);
}

TEST(Loset, ErrorsCarryPositions) {
  try {
    parse_loset("[a.]\n[.a][b]");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("2:"), std::string::npos) << e.what();
  }
}

TEST(Loset, WhitespaceBetweenLetters) {
  EXPECT_EQ(to_loset(parse_loset("  [a.]  [.a]\n")), "[a.][.a]");
}

TEST(Loset, PrintParseRoundTrip) {
  gen::Rng rng(17);
  for (int i = 0; i < 500; ++i) {
    const CohWord w = gen::coherent_word(rng, 8, 3);
    EXPECT_EQ(parse_loset(to_loset(w)), w) << to_loset(w);
  }
}

TEST(Letter, RejectsMarksOutsideCarrier) {
  EXPECT_THROW(make_starter({"a"}, 2), Error);
}

TEST(Letter, SourceAndTarget) {
  const StepLetter s = make_starter({"a", "b", "c"}, 0b101);
  EXPECT_EQ(s.source(), LabelSeq{"b"});
  EXPECT_EQ(s.target(), (LabelSeq{"a", "b", "c"}));
  const StepLetter t = make_terminator({"a", "b", "c"}, 0b010);
  EXPECT_EQ(t.source(), (LabelSeq{"a", "b", "c"}));
  EXPECT_EQ(t.target(), (LabelSeq{"a", "c"}));
}

TEST(Fuse, Starters) {
  // [a.|.b.] then [.a.|.b.|c.] is [a.|.b.|c.]
  EXPECT_EQ(to_loset(fuse(parse_letter("[a.|.b.]"), parse_letter("[.a.|.b.|c.]"))), "[a.|.b.|c.]");
}

TEST(Fuse, Terminators) {
  EXPECT_EQ(to_loset(fuse(parse_letter("[.a|.b.|.c.]"), parse_letter("[.b.|.c]"))), "[.a|.b.|.c]");
}

TEST(Fuse, IdentityIsAbsorbed) {
  const StepLetter s = parse_letter("[a.|.b.]");
  EXPECT_EQ(fuse(parse_letter("[.b.]"), s), s);
  EXPECT_EQ(fuse(s, parse_letter("[.a.|.b.]")), s);
}

TEST(Fuse, MixedKindsFail) {
  try {
    fuse(parse_letter("[a.]"), parse_letter("[.a]"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::KindMismatch);
  }
}

TEST(Fuse, AgreesWithGluing) {
  gen::Rng rng(23);
  for (int i = 0; i < 300; ++i) {
    const CohWord w = gen::coherent_word(rng, 6, 2);
    for (std::size_t k = 0; k + 1 < w.size(); ++k) {
      if (w[k].is_identity() || w[k + 1].is_identity() || w[k].kind() != w[k + 1].kind()) continue;
      const Ipomset glued = glue(as_ipomset(w[k]), as_ipomset(w[k + 1]));
      EXPECT_TRUE(isomorphic(glued, as_ipomset(fuse(w[k], w[k + 1]))).has_value());
    }
  }
}

TEST(Phi, FourEvents) { EXPECT_EQ(to_loset(phi(fixtures::four_events())), fixtures::kFourSparse); }

TEST(Phi, EmptyAndIdentities) {
  EXPECT_EQ(to_loset(phi(identity({}))), "[]");
  EXPECT_EQ(to_loset(phi(identity({"a", "b"}))), "[.a.|.b.]");
}

TEST(Phi, SingleEvent) { EXPECT_EQ(to_loset(phi(fixtures::ab())), "[a.][.a][b.][.b]"); }

TEST(Phi, IsSparse) {
  gen::Rng rng(29);
  for (int i = 0; i < 300; ++i) EXPECT_TRUE(is_sparse(phi(gen::interval_ipomset(rng, 7, 3))));
}

TEST(Psi, FourEventWordComposesBack) {
  EXPECT_TRUE(isomorphic(psi(parse_loset(fixtures::kFourSparse)), fixtures::four_events()).has_value());
}

TEST(Normalize, FourEventsDenseWords) {
  EXPECT_EQ(to_loset(normalize(parse_loset(fixtures::kFourDenseBFirst))), fixtures::kFourSparse);
  EXPECT_EQ(to_loset(normalize(parse_loset(fixtures::kFourDenseAFirst))), fixtures::kFourSparse);
}

TEST(Normalize, DropsIdentitiesAndKeepsInterface) {
  EXPECT_EQ(to_loset(normalize(parse_loset("[.a.][.a.]"))), "[.a.]");
  EXPECT_EQ(to_loset(normalize(parse_loset("[][]"))), "[]");
}

TEST(Normalize, IsIdempotentAndSparse) {
  gen::Rng rng(31);
  for (int i = 0; i < 500; ++i) {
    const CohWord n = normalize(gen::coherent_word(rng, 10, 2));
    EXPECT_TRUE(is_sparse(n));
    EXPECT_EQ(normalize(n), n);
  }
}

TEST(Densify, CarrierOrder) {
  EXPECT_EQ(to_loset(densify(parse_loset(fixtures::kFourSparse))), fixtures::kFourDenseBFirst);
  EXPECT_EQ(to_loset(densify(parse_loset("[a.|b.]"))), "[a.][.a.|b.]");
  EXPECT_EQ(to_loset(densify(parse_loset("[.a|.b]"))), "[.a|.b.][.b]");
}

TEST(Densify, IsDenseAndEquivalent) {
  gen::Rng rng(37);
  for (int i = 0; i < 500; ++i) {
    const CohWord w = gen::coherent_word(rng, 8, 2);
    const CohWord d = densify(w);
    EXPECT_TRUE(is_dense(d)) << to_loset(d);
    EXPECT_TRUE(equivalent(w, d));
  }
}

TEST(RoundTrip, PsiPhiIsIsomorphic) {
  gen::Rng rng(41);
  for (int i = 0; i < 500; ++i) {
    const Ipomset p = gen::interval_ipomset(rng, 8, 4);
    EXPECT_TRUE(isomorphic(psi(phi(p)), p).has_value()) << to_loset(phi(p));
  }
}

TEST(RoundTrip, PhiPsiIsNormalize) {
  gen::Rng rng(43);
  for (int i = 0; i < 500; ++i) {
    const CohWord w = gen::coherent_word(rng, 10, 3);
    EXPECT_EQ(to_loset(phi(psi(w))), to_loset(normalize(w))) << to_loset(w);
  }
}

TEST(RoundTrip, PsiRespectsEquivalence) {
  gen::Rng rng(47);
  for (int i = 0; i < 300; ++i) {
    const CohWord w = gen::coherent_word(rng, 8, 2);
    EXPECT_TRUE(isomorphic(psi(w), psi(normalize(w))).has_value());
    EXPECT_TRUE(isomorphic(psi(w), psi(densify(w))).has_value());
  }
}

TEST(RoundTrip, GluingIsConcatenation) {
  gen::Rng rng(53);
  for (int i = 0; i < 200; ++i) {
    const CohWord w = gen::coherent_word(rng, 8, 2);
    if (w.size() < 2) continue;
    const std::size_t cut = gen::uniform(rng, 1, w.size() - 1);
    const CohWord a(w.source(), {w.letters().begin(), w.letters().begin() + static_cast<std::ptrdiff_t>(cut)});
    const CohWord b(a.target(), {w.letters().begin() + static_cast<std::ptrdiff_t>(cut), w.letters().end()});
    EXPECT_EQ(canonical_key(glue(psi(a), psi(b))), to_loset(normalize(concat(a, b))));
  }
}
