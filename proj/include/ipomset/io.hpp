#pragma once

// JSON file formats for ipomsets, HDAs and ST-automata, and DOT export.

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ipomset/core.hpp"
#include "ipomset/hda.hpp"
#include "ipomset/loset.hpp"
#include "ipomset/sta.hpp"

namespace ipomset::io {

using json = nlohmann::json;

namespace detail {

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string(what) + ": " + e.what());
  }
}

inline std::vector<std::pair<std::string, std::string>> pairs(const json& j, const char* key) {
  std::vector<std::pair<std::string, std::string>> out;
  if (!j.contains(key)) return out;
  for (const auto& p : j.at(key)) {
    if (!p.is_array() || p.size() != 2)
      throw Error(ErrorKind::InvalidInput, std::string(key) + ": expected [id, id] pairs");
    out.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
  }
  return out;
}

inline std::vector<std::string> strings(const json& j, const char* key) {
  if (!j.contains(key)) return {};
  return j.at(key).get<std::vector<std::string>>();
}

inline std::map<std::size_t, std::string> face_map(const json& j, const char* key) {
  std::map<std::size_t, std::string> out;
  if (!j.contains(key)) return out;
  for (const auto& [pos, id] : j.at(key).items()) {
    std::size_t used = 0;
    std::size_t p = 0;
    try {
      p = std::stoul(pos, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != pos.size() || pos.empty())
      throw Error(ErrorKind::InvalidInput, std::string(key) + ": position '" + pos + "' is not a number");
    out[p] = id.get<std::string>();
  }
  return out;
}

inline std::string quote(const std::string& s) { return json(s).dump(); }

}  // namespace detail

// ---------------------------------------------------------------------------
// Ipomsets

inline RawIpomset raw_ipomset_from_json(const json& j) {
  return detail::guarded("ipomset", [&] {
    RawIpomset raw;
    for (const auto& e : j.at("events")) raw.events.push_back({e.at("id").get<std::string>(), e.at("label").get<std::string>()});
    raw.precedence = detail::pairs(j, "precedence");
    raw.event_order = detail::pairs(j, "eventOrder");
    raw.sources = detail::strings(j, "sources");
    raw.targets = detail::strings(j, "targets");
    return raw;
  });
}

inline Ipomset ipomset_from_json(const json& j) { return validate(raw_ipomset_from_json(j)); }

inline json to_json(const Ipomset& p) {
  const RawIpomset raw = to_raw(p);
  json j;
  j["events"] = json::array();
  for (const auto& e : raw.events) j["events"].push_back({{"id", e.id}, {"label", e.label}});
  j["precedence"] = json::array();
  for (const auto& [a, b] : raw.precedence) j["precedence"].push_back({a, b});
  j["eventOrder"] = json::array();
  for (const auto& [a, b] : raw.event_order) j["eventOrder"].push_back({a, b});
  j["sources"] = raw.sources;
  j["targets"] = raw.targets;
  return j;
}

// ---------------------------------------------------------------------------
// HDAs

inline RawHda raw_hda_from_json(const json& j) {
  return detail::guarded("hda", [&] {
    RawHda raw;
    for (const auto& c : j.at("cells"))
      raw.cells.push_back({c.at("id").get<std::string>(), detail::strings(c, "events"), detail::face_map(c, "d0"),
                           detail::face_map(c, "d1")});
    raw.start = detail::strings(j, "start");
    raw.accept = detail::strings(j, "accept");
    return raw;
  });
}

inline Hda hda_from_json(const json& j) { return validate_hda(raw_hda_from_json(j)); }

inline json to_json(const Hda& x) {
  const RawHda raw = to_raw(x);
  json j;
  j["cells"] = json::array();
  for (const auto& c : raw.cells) {
    json d0 = json::object(), d1 = json::object();
    for (const auto& [p, id] : c.d0) d0[std::to_string(p)] = id;
    for (const auto& [p, id] : c.d1) d1[std::to_string(p)] = id;
    j["cells"].push_back({{"id", c.id}, {"events", c.events}, {"d0", d0}, {"d1", d1}});
  }
  j["start"] = raw.start;
  j["accept"] = raw.accept;
  return j;
}

// ---------------------------------------------------------------------------
// ST-automata

inline RawSta raw_sta_from_json(const json& j) {
  return detail::guarded("sta", [&] {
    RawSta raw;
    for (const auto& s : j.at("states"))
      raw.states.push_back({s.at("id").get<std::string>(), detail::strings(s, "events")});
    if (j.contains("edges"))
      for (const auto& e : j.at("edges"))
        raw.edges.push_back({e.at("from").get<std::string>(), parse_letter(e.at("letter").get<std::string>()),
                             e.at("to").get<std::string>()});
    raw.initial = detail::strings(j, "initial");
    raw.final = detail::strings(j, "final");
    return raw;
  });
}

inline StAutomaton sta_from_json(const json& j) { return validate_sta(raw_sta_from_json(j)); }

inline json to_json(const StAutomaton& a) {
  json j;
  j["states"] = json::array();
  for (const auto& s : a.states()) j["states"].push_back({{"id", s.id}, {"events", s.events}});
  j["edges"] = json::array();
  for (const auto& e : a.edges())
    j["edges"].push_back({{"from", a.id(e.from)}, {"letter", to_loset(e.letter)}, {"to", a.id(e.to)}});
  const RawSta raw = to_raw(a);
  j["initial"] = raw.initial;
  j["final"] = raw.final;
  return j;
}

// ---------------------------------------------------------------------------
// DOT

inline std::string conclist_text(const LabelSeq& u) {
  if (u.empty()) return "()";
  std::string s;
  for (const auto& l : u) s += (s.empty() ? "" : "|") + l;
  return "(" + s + ")";
}

/// Cells as nodes; lower faces dashed, upper faces solid, both pointing from
/// the cell to its face and labelled with the event position.
inline std::string to_dot(const Hda& x) {
  std::ostringstream out;
  out << "digraph hda {\n  rankdir=LR;\n";
  for (CellIndex q = 0; q < x.size(); ++q) {
    out << "  " << detail::quote(x.id(q)) << " [label=" << detail::quote(x.id(q) + "\n" + conclist_text(x.events(q)));
    if (x.is_start(q) && x.is_accept(q)) out << ", shape=doubleoctagon";
    else if (x.is_start(q)) out << ", shape=box";
    else if (x.is_accept(q)) out << ", shape=doublecircle";
    out << "];\n";
  }
  for (CellIndex q = 0; q < x.size(); ++q)
    for (std::size_t p = 0; p < x.dimension(q); ++p) {
      out << "  " << detail::quote(x.id(q)) << " -> " << detail::quote(x.id(x.lower(q, p)))
          << " [style=dashed, label=" << detail::quote("d0 " + x.events(q)[p]) << "];\n";
      out << "  " << detail::quote(x.id(q)) << " -> " << detail::quote(x.id(x.upper(q, p)))
          << " [label=" << detail::quote("d1 " + x.events(q)[p]) << "];\n";
    }
  out << "}\n";
  return out.str();
}

inline std::string to_dot(const StAutomaton& a) {
  std::ostringstream out;
  out << "digraph sta {\n  rankdir=LR;\n";
  for (StateIndex q = 0; q < a.size(); ++q) {
    out << "  " << detail::quote(a.id(q)) << " [label=" << detail::quote(a.id(q) + "\n" + conclist_text(a.events(q)));
    if (a.is_initial(q) && a.is_final(q)) out << ", shape=doubleoctagon";
    else if (a.is_initial(q)) out << ", shape=box";
    else if (a.is_final(q)) out << ", shape=doublecircle";
    out << "];\n";
  }
  for (const auto& e : a.edges())
    out << "  " << detail::quote(a.id(e.from)) << " -> " << detail::quote(a.id(e.to))
        << " [label=" << detail::quote(to_loset(e.letter)) << "];\n";
  out << "}\n";
  return out.str();
}

}  // namespace ipomset::io
