#pragma once

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "indmorse/complex.hpp"
#include "indmorse/complex_io.hpp"
#include "indmorse/families.hpp"
#include "indmorse/homology/homology.hpp"
#include "indmorse/morse/e_script.hpp"
#include "indmorse/morse/lemma_scripts.hpp"
#include "indmorse/morse/morse_io.hpp"
#include "indmorse/morse/search.hpp"
#include "indmorse/morse/sg2k.hpp"
#include "indmorse/text_io.hpp"
#include "indmorse/theorems/reports.hpp"
#include "indmorse/theorems/verify.hpp"

namespace indmorse::cli {

using textio::complex_from_string;
using textio::complex_to_string;
using textio::graph_from_string;
using textio::graph_to_string;

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;

class usage_error : public error {
 public:
  using error::error;
};

struct IntRange {
  int lo = 0;
  int hi = 0;
};

/// `7` or `3..12`.
inline std::optional<IntRange> parse_range(const std::string& s) {
  auto number = [](const std::string& t, int& v) {
    if (t.empty()) return false;
    std::size_t used = 0;
    try {
      v = std::stoi(t, &used);
    } catch (const std::exception&) {
      return false;
    }
    return used == t.size();
  };
  IntRange r;
  const auto dots = s.find("..");
  if (dots == std::string::npos) {
    if (!number(s, r.lo)) return std::nullopt;
    r.hi = r.lo;
    return r;
  }
  if (!number(s.substr(0, dots), r.lo) || !number(s.substr(dots + 2), r.hi) || r.lo > r.hi) return std::nullopt;
  return r;
}

struct RunConfig {
  std::string subcommand;
  std::string family;
  std::map<char, std::string> params;  // 'n', 'k', 'r' as given
  std::string channels = "both";
  std::size_t face_budget = kDefaultFaceBudget;
  std::size_t node_budget = kDefaultNodeBudget;
  std::size_t snf_threshold = kDefaultSnfFaceThreshold;
  std::string out;
  std::string input;
  std::string format = "text";
  std::string kind = "ind";
  std::string what = "graph";
  bool emit_script = false;
  bool emit_matching = false;
};

// ---------------------------------------------------------------------------
// Families
// ---------------------------------------------------------------------------

struct FamilySpec {
  std::string name;
  std::vector<std::string> aliases;
  std::string params;  // letters of the required parameters
};

inline const std::vector<FamilySpec>& family_specs() {
  static const std::vector<FamilySpec> specs{
      {"cycle", {"cycle", "c", "C"}, "n"},       {"path", {"path", "p", "P"}, "n"},
      {"complete", {"complete", "K"}, "n"},      {"kg", {"kg", "KG", "kneser"}, "nk"},
      {"sg", {"sg", "SG", "schrijver"}, "nk"},   {"sg2", {"sg2", "SG2"}, "k"},
      {"e", {"e", "E"}, "n"},                    {"el", {"el", "EL"}, "r"},
      {"dc", {"dc", "DC"}, "n"},                 {"codd", {"codd"}, "n"},
  };
  return specs;
}

inline const FamilySpec& resolve_family(const std::string& name) {
  for (const auto& s : family_specs()) {
    for (const auto& a : s.aliases) {
      if (a == name) return s;
    }
  }
  throw usage_error("unknown family '" + name + "'");
}

inline std::map<char, IntRange> family_ranges(const RunConfig& c, const FamilySpec& s) {
  std::map<char, IntRange> out;
  for (char p : s.params) {
    const auto it = c.params.find(p);
    if (it == c.params.end() || it->second.empty()) {
      throw usage_error("family " + s.name + " needs -" + std::string(1, p));
    }
    const auto r = parse_range(it->second);
    if (!r) throw usage_error("malformed value '" + it->second + "' for -" + std::string(1, p));
    out[p] = *r;
  }
  for (const auto& [p, v] : c.params) {
    if (!v.empty() && s.params.find(p) == std::string::npos) {
      throw usage_error("family " + s.name + " takes no -" + std::string(1, p));
    }
  }
  return out;
}

inline Graph build_graph(const FamilySpec& s, const std::map<char, int>& v) {
  try {
    if (s.name == "cycle") return cycle_graph(v.at('n'));
    if (s.name == "path") return path_graph(v.at('n'));
    if (s.name == "complete") return complete_graph(v.at('n'));
    if (s.name == "kg") return kneser(v.at('n'), v.at('k'));
    if (s.name == "sg") return stable_kneser(v.at('n'), v.at('k'));
    if (s.name == "sg2") return stable_kneser(2, v.at('k'));
    if (s.name == "e") return e_graph(v.at('n'));
    if (s.name == "el") return el_graph(v.at('r'));
    if (s.name == "dc") return dc_cycle(v.at('n'));
    if (s.name == "codd") return c_odd(v.at('n'));
  } catch (const parameter_error& e) {
    throw usage_error(e.what());
  }
  throw usage_error("unknown family '" + s.name + "'");
}

/// The theorem family a generated graph belongs to, if any.
inline std::optional<std::pair<Family, int>> theorem_family(const Graph& g) {
  const auto& f = g.family();
  const auto n = f.get("n");
  if (f.family == "c" && n) return std::pair{Family::cycle, *n};
  if (f.family == "p" && n) return std::pair{Family::path, *n};
  if (f.family == "e" && n) return std::pair{Family::e, *n};
  if (f.family == "el" && f.get("r")) return std::pair{Family::el, *f.get("r")};
  if (f.family == "sg" && n == 2 && f.get("k")) return std::pair{Family::sg2, *f.get("k")};
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Inputs and outputs
// ---------------------------------------------------------------------------

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw usage_error("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Writes via a temporary file and a rename, or to `out` when no path is given.
inline void write_output(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty()) {
    out << content;
    return;
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary);
    if (!f) throw usage_error("cannot write '" + path + "'");
    f << content;
    if (!f) throw usage_error("cannot write '" + path + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw usage_error("cannot write '" + path + "'");
}

inline bool starts_with_word(const std::string& text, const std::string& word) {
  std::istringstream s(text);
  std::string first;
  while (s >> first) {
    if (first.front() == '#') {
      std::getline(s, first);
      continue;
    }
    return first == word;
  }
  return false;
}

inline std::map<char, int> single_values(const RunConfig& c, const FamilySpec& s) {
  std::map<char, int> v;
  for (const auto& [p, r] : family_ranges(c, s)) {
    if (r.lo != r.hi) throw usage_error("-" + std::string(1, p) + " takes a single value for " + c.subcommand);
    v[p] = r.lo;
  }
  return v;
}

inline Graph input_graph(const RunConfig& c) {
  if (!c.input.empty()) {
    if (!c.family.empty()) throw usage_error("give either --input or --family");
    return graph_from_string(read_file(c.input));
  }
  if (c.family.empty()) throw usage_error(c.subcommand + " needs --family or --input");
  const auto& s = resolve_family(c.family);
  return build_graph(s, single_values(c, s));
}

inline SimplicialComplex complex_of(const RunConfig& c, const Graph& g) {
  if (c.kind == "ind") return independence_complex(g, c.face_budget);
  if (c.kind == "nbhd") return neighborhood_complex(g, c.face_budget);
  throw usage_error("unknown complex kind '" + c.kind + "'");
}

/// A complex either read from a complex file or built from a graph.
inline std::pair<std::string, SimplicialComplex> input_complex(const RunConfig& c) {
  if (!c.input.empty() && c.family.empty()) {
    const std::string text = read_file(c.input);
    if (starts_with_word(text, "complex")) return {c.input, complex_from_string(text, c.face_budget)};
  }
  const Graph g = input_graph(c);
  const std::string id = (c.kind == "nbhd" ? "N(" : "Ind(") + g.family().id() + ")";
  return {id, complex_of(c, g)};
}

struct MorseRun {
  std::string construction;
  std::shared_ptr<const SimplicialComplex> complex;
  std::optional<MatchingTree> tree;
  std::optional<Sg2kMatching> sg2;
  std::optional<PartialMatching> matching;
  const PartialMatching& result() const { return sg2 ? sg2->matching() : *matching; }
};

inline MorseRun morse_run(const Graph& g, const RunConfig& c) {
  MorseRun run;
  const auto fam = theorem_family(g);
  if (fam && fam->first == Family::sg2 && fam->second >= 3) {
    run.construction = "grading";
    run.sg2 = sg2k_matching(fam->second, c.face_budget);
    run.complex = run.sg2->complex;
  } else {
    if (fam && fam->first == Family::cycle) {
      run.construction = "script";
      run.tree = run_script(g, cycle_script(fam->second));
    } else if (fam && fam->first == Family::path) {
      run.construction = "script";
      run.tree = run_script(g, path_script(fam->second));
    } else if (fam && fam->first == Family::e && fam->second >= 3) {
      run.construction = "script";
      run.tree = run_script(g, e_graph_script(fam->second).program);
    } else {
      run.construction = "search";
      SearchOptions so;
      so.node_budget = c.node_budget;
      run.tree = search_tree(g, so);
    }
    run.complex = std::make_shared<const SimplicialComplex>(independence_complex(g, c.face_budget));
    run.matching = induced_matching(*run.tree, *run.complex);
  }
  run.result().verify_acyclic();
  return run;
}

/// The program to emit: the scripted E tree keeps its notes.
inline TreeProgram emitted_program(const Graph& g, const MatchingTree& t) {
  const auto fam = theorem_family(g);
  if (fam && fam->first == Family::e && fam->second >= 3) return e_graph_script(fam->second).program;
  return tree_program(t);
}

inline std::string summary_line(const RunConfig& c, const std::string& head, const nlohmann::ordered_json& fields) {
  if (c.format == "json") return fields.dump() + "\n";
  std::string s = head;
  for (const auto& [key, value] : fields.items()) {
    s += " " + key + "=" + (value.is_string() ? value.get<std::string>() : value.dump());
  }
  return s + "\n";
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

/// The graph goes to --out (or stdout, with the summary on stderr).
inline int cmd_gen(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const Graph g = detail::input_graph(c);
  detail::write_output(c.out, graph_to_string(g), out);
  nlohmann::ordered_json f{{"vertices", g.size()}, {"edges", g.edge_count()}};
  (c.out.empty() ? err : out) << detail::summary_line(c, "gen " + g.family().id(), f);
  return kExitOk;
}

inline int cmd_complex(const RunConfig& c, std::ostream& out) {
  const auto [id, k] = detail::input_complex(c);
  std::string fv;
  for (auto x : k.f_vector().counts) fv += (fv.empty() ? "" : ",") + std::to_string(x);
  nlohmann::ordered_json f{{"vertices", k.vertex_count()},
                           {"faces", k.face_count()},
                           {"dim", k.dimension()},
                           {"f_vector", fv},
                           {"euler", euler_characteristic(k)}};
  if (!c.out.empty()) detail::write_output(c.out, complex_to_string(k), out);
  out << detail::summary_line(c, "complex " + id, f);
  return kExitOk;
}

inline int cmd_morse(const RunConfig& c, std::ostream& out) {
  if (c.emit_script && c.emit_matching) throw usage_error("--emit-script and --emit-matching are exclusive");
  const Graph g = detail::input_graph(c);
  const auto run = detail::morse_run(g, c);
  const auto& m = run.result();
  const auto s = morse_summary(m);
  nlohmann::ordered_json f{{"construction", run.construction},
                           {"faces", run.complex->face_count()},
                           {"critical", indmorse::detail::cells_string(s)},
                           {"empty_face_matched", s.empty_face_matched ? "yes" : "no"}};
  if (run.tree) f["critical_leaves"] = run.tree->nonempty_leaves().size();
  std::string artifact;
  if (c.emit_script) {
    if (!run.tree) throw usage_error("the " + run.construction + " construction has no matching tree to emit");
    artifact = script_to_string(g, detail::emitted_program(g, *run.tree));
  } else if (c.emit_matching) {
    artifact = matching_to_string(m);
  }
  out << detail::summary_line(c, "morse " + g.family().id(), f);
  if (!artifact.empty()) detail::write_output(c.out, artifact, out);
  return kExitOk;
}

inline int cmd_homology(const RunConfig& c, std::ostream& out) {
  const auto [id, k] = detail::input_complex(c);
  HomologyOptions ho;
  ho.snf_face_threshold = c.snf_threshold;
  const auto h = homology(k, ho);
  std::string text;
  if (c.format == "json") {
    nlohmann::ordered_json j;
    j["complex"] = id;
    j["torsion_checked"] = h.torsion_computed;
    j["groups"] = nlohmann::ordered_json::array();
    for (const auto& grp : h.groups) {
      std::vector<std::string> t;
      for (const auto& x : grp.torsion) t.push_back(x.get_str());
      j["groups"].push_back({{"dim", grp.dim}, {"betti", grp.betti}, {"torsion", t}});
    }
    text = j.dump(2) + "\n";
  } else {
    text = homology_rows(id, h);
  }
  detail::write_output(c.out, text, out);
  return kExitOk;
}

inline int cmd_verify(const RunConfig& c, std::ostream& out) {
  if (c.family.empty()) throw usage_error("verify needs --family");
  const auto& spec = resolve_family(c.family);
  auto ranges = family_ranges(c, spec);
  Family fam;
  IntRange range;
  if (spec.name == "sg") {
    if (ranges['n'].lo != 2 || ranges['n'].hi != 2) throw usage_error("verify supports SG_{n,k} only for n=2");
    fam = Family::sg2;
    range = ranges['k'];
  } else if (const auto f = parse_family(spec.name)) {
    fam = *f;
    range = ranges.begin()->second;
  } else {
    throw usage_error("no verification is defined for family " + spec.name);
  }
  VerifyOptions opt;
  if (c.channels == "morse") {
    opt.homology = false;
  } else if (c.channels == "homology") {
    opt.morse = false;
  } else if (c.channels != "both") {
    throw usage_error("unknown channel selection '" + c.channels + "'");
  }
  opt.face_budget = c.face_budget;
  opt.node_budget = c.node_budget;
  opt.snf_threshold = c.snf_threshold;
  std::vector<VerificationReport> reports;
  try {
    reports = verify_family(fam, range.lo, range.hi, opt);
  } catch (const parameter_error& e) {
    throw usage_error(e.what());
  }
  const std::string text =
      c.format == "json" ? reports_json(reports) : report_blocks(reports) + "\n" + summary_table(reports);
  detail::write_output(c.out, text, out);
  bool mismatch = false;
  bool budget = false;
  for (const auto& r : reports) {
    mismatch = mismatch || r.verdict() == Verdict::mismatch;
    budget = budget || r.budget_exhausted.has_value();
  }
  if (mismatch) return kExitMismatch;
  return budget ? kExitBudget : kExitOk;
}

/// Writes one artifact: a graph, its complex, or its Morse script or matching.
inline int cmd_export(const RunConfig& c, std::ostream& out) {
  const Graph g = detail::input_graph(c);
  std::string text;
  if (c.what == "graph") {
    text = graph_to_string(g);
  } else if (c.what == "complex") {
    text = complex_to_string(detail::complex_of(c, g));
  } else if (c.what == "script" || c.what == "matching") {
    const auto run = detail::morse_run(g, c);
    if (c.what == "matching") {
      text = matching_to_string(run.result());
    } else {
      if (!run.tree) throw usage_error("the " + run.construction + " construction has no matching tree to emit");
      text = script_to_string(g, detail::emitted_program(g, *run.tree));
    }
  } else {
    throw usage_error("unknown artifact '" + c.what + "'");
  }
  detail::write_output(c.out, text, out);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Independence complexes, matching trees and homology"};
  app.require_subcommand(1);
  RunConfig c;
  std::string n, k, r;

  auto common = [&](CLI::App* s, bool params) {
    if (params) {
      s->add_option("--family", c.family, "graph family");
      s->add_option("-n,--n", n, "parameter n (verify: a..b)");
      s->add_option("-k,--k", k, "parameter k (verify: a..b)");
      s->add_option("-r,--r", r, "parameter r (verify: a..b)");
    }
    s->add_option("--budget-faces", c.face_budget, "face budget")->check(CLI::PositiveNumber);
    s->add_option("--budget-nodes", c.node_budget, "search node budget")->check(CLI::PositiveNumber);
    s->add_option("--snf-threshold", c.snf_threshold, "faces up to which torsion is computed")
        ->check(CLI::PositiveNumber);
    s->add_option("--out", c.out, "output file");
    s->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  };
  auto* gen = app.add_subcommand("gen", "write a graph");
  common(gen, true);
  auto* cx = app.add_subcommand("complex", "build Ind(G) or the neighborhood complex");
  common(cx, true);
  cx->add_option("--input", c.input, "graph or complex file");
  cx->add_option("--kind", c.kind, "ind or nbhd")->check(CLI::IsMember({"ind", "nbhd"}));
  auto* morse = app.add_subcommand("morse", "build the acyclic matching");
  common(morse, true);
  morse->add_option("--input", c.input, "graph file");
  morse->add_flag("--emit-script", c.emit_script, "write the matching tree script");
  morse->add_flag("--emit-matching", c.emit_matching, "write the matching");
  auto* hom = app.add_subcommand("homology", "reduced integral homology");
  common(hom, true);
  hom->add_option("--input", c.input, "graph or complex file");
  hom->add_option("--kind", c.kind, "ind or nbhd")->check(CLI::IsMember({"ind", "nbhd"}));
  auto* ver = app.add_subcommand("verify", "compare predictions, matchings and homology");
  common(ver, true);
  ver->add_option("--channels", c.channels, "morse, homology or both")
      ->check(CLI::IsMember({"morse", "homology", "both"}));
  auto* exp = app.add_subcommand("export", "write a graph, complex, script or matching");
  common(exp, true);
  exp->add_option("--input", c.input, "graph file to re-export");
  exp->add_option("--what", c.what, "graph, complex, script or matching")
      ->check(CLI::IsMember({"graph", "complex", "script", "matching"}));
  exp->add_option("--kind", c.kind, "ind or nbhd")->check(CLI::IsMember({"ind", "nbhd"}));

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  c.subcommand = app.get_subcommands().front()->get_name();
  c.params = {{'n', n}, {'k', k}, {'r', r}};

  try {
    if (c.subcommand == "gen") return cmd_gen(c, out, err);
    if (c.subcommand == "complex") return cmd_complex(c, out);
    if (c.subcommand == "morse") return cmd_morse(c, out);
    if (c.subcommand == "homology") return cmd_homology(c, out);
    if (c.subcommand == "verify") return cmd_verify(c, out);
    if (c.subcommand == "export") return cmd_export(c, out);
  } catch (const usage_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const parse_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const parameter_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const size_error& e) {
    err << "budget exhausted: " << e.what() << '\n';
    return kExitBudget;
  }
  return kExitUsage;
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(std::move(args), out, err);
}

}  // namespace indmorse::cli
