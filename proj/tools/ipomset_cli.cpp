// Command-line front end. Exit status: 0 success, 1 property does not hold,
// 2 invalid input. Errors are printed to stderr as a JSON object.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ipomset/ipomset.hpp"

namespace {

using namespace ipomset;
using io::json;

constexpr int kOk = 0, kNegative = 1, kInvalid = 2;

struct Options {
  bool json_out = false;
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::SyntaxError, path + ": " + e.what());
  }
}

// A word is given literally, or as @FILE.
std::string word_text(const std::string& arg) {
  if (arg.empty() || arg[0] != '@') return arg;
  std::ifstream in(arg.substr(1));
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open '" + arg.substr(1) + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

enum class FileKind { Ipomset, Hda, Sta };

FileKind kind_of(const json& j) {
  if (j.is_object() && j.contains("cells")) return FileKind::Hda;
  if (j.is_object() && j.contains("states")) return FileKind::Sta;
  if (j.is_object() && j.contains("events")) return FileKind::Ipomset;
  throw Error(ErrorKind::InvalidInput, "cannot tell whether the file is an ipomset, an HDA or an ST-automaton");
}

void print_keys(const std::set<std::string>& keys, const Options& o) {
  if (o.json_out) {
    std::cout << json(std::vector<std::string>(keys.begin(), keys.end())).dump(2) << "\n";
    return;
  }
  for (const auto& k : keys) std::cout << k << "\n";
}

json map_json(const Ipomset& p, const Ipomset& q, const EventMap& f) {
  json m = json::object();
  for (std::size_t i = 0; i < f.size(); ++i) m[p.id(i)] = q.id(f[i]);
  return m;
}

void print_map(const Ipomset& p, const Ipomset& q, const EventMap& f) {
  for (std::size_t i = 0; i < f.size(); ++i) std::cout << p.id(i) << " -> " << q.id(f[i]) << "\n";
}

int cmd_check(const std::string& file, const Options& o) {
  const json j = read_json(file);
  json out;
  switch (kind_of(j)) {
    case FileKind::Ipomset: {
      const Ipomset p = io::ipomset_from_json(j);
      out = {{"kind", "ipomset"}, {"events", p.size()}, {"interval", is_interval(p)}};
      break;
    }
    case FileKind::Hda: {
      const Hda x = io::hda_from_json(j);
      out = {{"kind", "hda"}, {"cells", x.size()}};
      break;
    }
    case FileKind::Sta: {
      const StAutomaton a = io::sta_from_json(j);
      out = {{"kind", "sta"}, {"states", a.size()}, {"edges", a.edges().size()}};
      break;
    }
  }
  if (o.json_out) {
    out["valid"] = true;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "valid " << out["kind"].get<std::string>();
    if (out.contains("interval")) std::cout << (out["interval"].get<bool>() ? ", interval" : ", not interval");
    std::cout << "\n";
  }
  return kOk;
}

int cmd_decompose(const std::string& file, bool dense, const Options& o) {
  const Ipomset p = io::ipomset_from_json(read_json(file));
  CohWord w = phi(p);
  if (dense) w = densify(w);
  if (o.json_out) std::cout << json({{"word", to_loset(w)}, {"letters", w.size()}}).dump(2) << "\n";
  else std::cout << to_loset(w) << "\n";
  return kOk;
}

int cmd_compose(const std::string& word, const Options& o) {
  const Ipomset p = psi(parse_loset(word_text(word)));
  if (o.json_out) std::cout << io::to_json(p).dump(2) << "\n";
  else std::cout << io::to_json(p).dump() << "\n";
  return kOk;
}

int cmd_normalize(const std::string& word, const Options& o) {
  const CohWord w = normalize(parse_loset(word_text(word)));
  if (o.json_out) std::cout << json({{"word", to_loset(w)}}).dump(2) << "\n";
  else std::cout << to_loset(w) << "\n";
  return kOk;
}

int cmd_iso(const std::string& f1, const std::string& f2, const Options& o) {
  const Ipomset p = io::ipomset_from_json(read_json(f1));
  const Ipomset q = io::ipomset_from_json(read_json(f2));
  const auto f = isomorphic(p, q);
  if (o.json_out) {
    json out = {{"isomorphic", f.has_value()}};
    if (f) out["map"] = map_json(p, q, *f);
    std::cout << out.dump(2) << "\n";
  } else if (f) {
    print_map(p, q, *f);
  } else {
    std::cout << "not isomorphic\n";
  }
  return f ? kOk : kNegative;
}

int cmd_subsume(const std::string& f1, const std::string& f2, bool witness, const Options& o) {
  const Ipomset p = io::ipomset_from_json(read_json(f1));
  const Ipomset q = io::ipomset_from_json(read_json(f2));
  const auto f = is_subsumption(p, q);
  std::optional<SubsumptionChain> chain;
  if (f && witness && is_interval(p) && is_interval(q) && p.size() <= kMaxSubsumptionEvents)
    chain = subsumption_chain(p, q);
  if (o.json_out) {
    json out = {{"subsumed", f.has_value()}};
    if (f && witness) out["map"] = map_json(p, q, *f);
    if (chain) {
      json words = json::array(), steps = json::array();
      for (const auto& w : chain->words) words.push_back(to_loset(w));
      for (const auto& s : chain->steps)
        steps.push_back({{"index", s.index},
                         {"case", to_string(s.kind)},
                         {"merge", s.order == MergeOrder::TerminatedFirst ? "terminated-first" : "started-first"}});
      out["chain"] = {{"words", words}, {"steps", steps}};
    }
    std::cout << out.dump(2) << "\n";
  } else if (!f) {
    std::cout << "not subsumed\n";
  } else {
    std::cout << "subsumed\n";
    if (witness) print_map(p, q, *f);
    if (chain) {
      std::cout << to_loset(chain->words[0]) << "\n";
      for (std::size_t k = 0; k < chain->steps.size(); ++k)
        std::cout << "  tau_" << chain->steps[k].index << " (" << to_string(chain->steps[k].kind) << ") "
                  << to_loset(chain->words[k + 1]) << "\n";
    }
  }
  return f ? kOk : kNegative;
}

int cmd_extensions(const std::string& file, const Options& o) {
  const auto ext = elementary_extensions(io::ipomset_from_json(read_json(file)));
  std::set<std::string> keys;
  for (const auto& [k, _] : ext) keys.insert(k);
  print_keys(keys, o);
  return kOk;
}

int cmd_dot(const std::string& file) {
  const json j = read_json(file);
  switch (kind_of(j)) {
    case FileKind::Hda: std::cout << io::to_dot(io::hda_from_json(j)); return kOk;
    case FileKind::Sta: std::cout << io::to_dot(io::sta_from_json(j)); return kOk;
    case FileKind::Ipomset: break;
  }
  throw Error(ErrorKind::InvalidInput, "dot expects an HDA or an ST-automaton");
}

int cmd_sta_check(const std::string& file, const Options& o) {
  const ImageReport r = check_hda_image(io::sta_from_json(read_json(file)));
  if (o.json_out) {
    json v = json::array();
    for (const auto& x : r.violations) v.push_back({{"item", x.item}, {"detail", x.detail}});
    std::cout << json({{"faces", r.faces}, {"fusion", r.fusion}, {"splitting", r.splitting}, {"violations", v}})
                     .dump(2)
              << "\n";
  } else {
    auto line = [](const char* name, bool ok) { std::cout << name << ": " << (ok ? "pass" : "FAIL") << "\n"; };
    line("1 faces", r.faces);
    line("2 fusion", r.fusion);
    line("3 splitting", r.splitting);
    for (const auto& x : r.violations) std::cout << "  (" << x.item << ") " << x.detail << "\n";
  }
  return r.ok() ? kOk : kNegative;
}

void print_error(const std::string& kind, const std::string& message, const std::vector<Violation>& all = {}) {
  json err = {{"error", kind}, {"message", message}};
  if (!all.empty()) {
    err["violations"] = json::array();
    for (const auto& v : all) err["violations"].push_back({{"kind", to_string(v.kind)}, {"detail", v.detail}});
  }
  std::cerr << err.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interval pomsets with interfaces: step decompositions, subsumption, HDAs and ST-automata"};
  app.require_subcommand(1);
  Options opts;
  app.add_flag("--json", opts.json_out, "Machine-readable output");

  std::string file, file2, word;
  bool dense = false, witness = false;
  std::size_t max_steps = 6;

  auto* check = app.add_subcommand("check", "Validate an ipomset, HDA or ST-automaton file");
  check->add_option("FILE", file)->required();
  auto* decompose = app.add_subcommand("decompose", "Print the sparse (or dense) step decomposition");
  decompose->add_option("FILE", file)->required();
  decompose->add_flag("--dense", dense, "Split into elementary letters");
  auto* compose = app.add_subcommand("compose", "Glue a word into an ipomset");
  compose->add_option("WORD", word, "Loset word, or @FILE")->required();
  auto* norm = app.add_subcommand("normalize", "Sparse normal form of a word");
  norm->add_option("WORD", word, "Loset word, or @FILE")->required();
  auto* iso = app.add_subcommand("iso", "Decide isomorphism of two ipomsets");
  iso->add_option("FILE1", file)->required();
  iso->add_option("FILE2", file2)->required();
  auto* subsume = app.add_subcommand("subsume", "Decide whether FILE1 is subsumed by FILE2");
  subsume->add_option("FILE1", file)->required();
  subsume->add_option("FILE2", file2)->required();
  subsume->add_flag("--witness", witness, "Print the event map and a transposition chain");
  auto* extensions = app.add_subcommand("extensions", "List the one-step more ordered ipomsets");
  extensions->add_option("FILE", file)->required();
  auto* hda_lang = app.add_subcommand("hda-lang", "Bounded language of an HDA");
  hda_lang->add_option("FILE", file)->required();
  hda_lang->add_option("--max-steps", max_steps)->required();
  auto* sta_lang = app.add_subcommand("sta-lang", "Bounded language of an ST-automaton");
  sta_lang->add_option("FILE", file)->required();
  sta_lang->add_option("--max-steps", max_steps)->required();
  auto* hda2sta = app.add_subcommand("hda2sta", "Translate an HDA into an ST-automaton");
  hda2sta->add_option("FILE", file)->required();
  auto* sta2hda = app.add_subcommand("sta2hda", "Translate an ST-automaton into an HDA");
  sta2hda->add_option("FILE", file)->required();
  auto* sta_check = app.add_subcommand("sta-check", "Check necessary conditions for being an HDA image");
  sta_check->add_option("FILE", file)->required();
  auto* dot = app.add_subcommand("dot", "Graphviz export of an HDA or ST-automaton");
  dot->add_option("FILE", file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    print_error("UsageError", e.what());
    return kInvalid;
  }

  try {
    if (*check) return cmd_check(file, opts);
    if (*decompose) return cmd_decompose(file, dense, opts);
    if (*compose) return cmd_compose(word, opts);
    if (*norm) return cmd_normalize(word, opts);
    if (*iso) return cmd_iso(file, file2, opts);
    if (*subsume) return cmd_subsume(file, file2, witness, opts);
    if (*extensions) return cmd_extensions(file, opts);
    if (*hda_lang) {
      print_keys(language_bounded(io::hda_from_json(read_json(file)), max_steps), opts);
      return kOk;
    }
    if (*sta_lang) {
      print_keys(language_bounded(io::sta_from_json(read_json(file)), max_steps), opts);
      return kOk;
    }
    if (*hda2sta) {
      std::cout << io::to_json(st_of_hda(io::hda_from_json(read_json(file)))).dump(2) << "\n";
      return kOk;
    }
    if (*sta2hda) {
      std::cout << io::to_json(hd_of_sta(io::sta_from_json(read_json(file)))).dump(2) << "\n";
      return kOk;
    }
    if (*sta_check) return cmd_sta_check(file, opts);
    if (*dot) return cmd_dot(file);
  } catch (const ValidationError& e) {
    print_error(std::string(to_string(e.kind())), e.what(), e.violations());
    return kInvalid;
  } catch (const Error& e) {
    print_error(std::string(to_string(e.kind())), e.what());
    return kInvalid;
  } catch (const std::exception& e) {
    print_error("InternalError", e.what());
    return 3;
  }
  return kInvalid;
}
