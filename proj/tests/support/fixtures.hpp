#pragma once

#include <fstream>
#include <string>

#include "ipomset/ipomset.hpp"

#ifndef IPOMSET_SAMPLES_DIR
#error "IPOMSET_SAMPLES_DIR must point at the samples directory"
#endif

namespace fixtures {

using namespace ipomset;

inline io::json load(const std::string& name) {
  std::ifstream in(std::string(IPOMSET_SAMPLES_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing sample " + name);
  return io::json::parse(in);
}

/// a < b, c < b, c < a', with c a source; a above c, a above a', b above a'.
inline Ipomset four_events() { return io::ipomset_from_json(load("four_events.ipomset.json")); }

/// Two squares glued along an edge; the only accepting run reads b then c.
inline Hda two_squares() { return io::hda_from_json(load("two_squares.hda.json")); }

/// Six states, no accepting path, missing faces.
inline StAutomaton missing_faces() { return io::sta_from_json(load("missing_faces.sta.json")); }

inline Ipomset ab() { return io::ipomset_from_json(load("ab.ipomset.json")); }
inline Ipomset a_over_b() { return io::ipomset_from_json(load("a_over_b.ipomset.json")); }

inline constexpr const char* kFourSparse = "[a.|.c.][.a.|.c][.a.|a.][.a|.a.][b.|.a.][.b|.a]";
// The two dense decompositions; they differ in the order of the final
// terminations.
inline constexpr const char* kFourDenseBFirst = "[a.|.c.][.a.|.c][.a.|a.][.a|.a.][b.|.a.][.b|.a.][.a]";
inline constexpr const char* kFourDenseAFirst = "[a.|.c.][.a.|.c][.a.|a.][.a|.a.][b.|.a.][.b.|.a][.b]";

inline constexpr const char* kSwap = "[b.][a.|.b.|c.][.a.|.b|.c.][.a.|.c][.a]";
inline constexpr const char* kSwapTau3 = "[b.][a.|.b.|c.][.a.|.b.|.c][.a.|.b][.a]";
inline constexpr const char* kSwapTau2 = "[b.][.b][a.|c.][.a.|.c][.a]";

inline constexpr const char* kChain[] = {
    "[a.][.a][b.][.b]",
    "[a.][.a.|b.][.a|.b.][.b]",
    "[a.][.a.|b.][.a.|.b][.a]",
    "[b.][a.|.b.][.a.|.b][.a]",
};
inline constexpr std::size_t kChainIndices[] = {2, 3, 1};

}  // namespace fixtures
