#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "indmorse/complex.hpp"
#include "indmorse/families.hpp"
#include "indmorse/homology/homology.hpp"
#include "indmorse/morse/e_script.hpp"
#include "indmorse/morse/lemma_scripts.hpp"
#include "indmorse/morse/matching.hpp"
#include "indmorse/morse/matching_tree.hpp"
#include "indmorse/morse/search.hpp"
#include "indmorse/morse/sg2k.hpp"
#include "indmorse/theorems/predictions.hpp"

namespace indmorse {

enum class Verdict { match, mismatch, skipped };

inline std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::match: return "match";
    case Verdict::mismatch: return "mismatch";
    case Verdict::skipped: return "skipped";
  }
  return {};
}

struct Check {
  std::string name;
  Verdict verdict = Verdict::skipped;
  std::string detail;
};

struct VerifyOptions {
  bool morse = true;
  bool homology = true;
  std::size_t face_budget = kDefaultFaceBudget;
  std::size_t node_budget = kDefaultNodeBudget;
  std::size_t snf_threshold = kDefaultSnfFaceThreshold;
};

struct VerificationReport {
  Family family = Family::cycle;
  int param = 0;
  std::string instance;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::optional<FVector> f_vector;
  std::optional<Prediction> prediction;
  std::optional<MorsePrediction> expected_cells;
  std::string construction;
  std::optional<MorseSummary> morse;
  std::optional<HomologyResult> homology;
  std::vector<Check> checks;
  std::optional<std::string> budget_exhausted;

  Verdict verdict() const {
    bool any = false;
    for (const auto& c : checks) {
      if (c.verdict == Verdict::mismatch) return Verdict::mismatch;
      any = any || c.verdict == Verdict::match;
    }
    if (budget_exhausted) return Verdict::skipped;
    return any ? Verdict::match : Verdict::skipped;
  }

  const Check* find(const std::string& name) const {
    for (const auto& c : checks) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }
};

inline Graph family_graph(Family f, int p) {
  switch (f) {
    case Family::cycle: return cycle_graph(p);
    case Family::path: return path_graph(p);
    case Family::el: return el_graph(p);
    case Family::sg2: return stable_kneser(2, p);
    case Family::e: return e_graph(p);
  }
  throw parameter_error("family_graph: unsupported family");
}

namespace detail {

inline void add_check(VerificationReport& r, std::string name, bool ok, std::string detail) {
  r.checks.push_back({std::move(name), ok ? Verdict::match : Verdict::mismatch, std::move(detail)});
}

inline std::string cells_string(const MorseSummary& s) {
  std::string out;
  for (int d = -1; d + 1 < static_cast<int>(s.critical_by_dim.size()); ++d) {
    if (!s.count(d)) continue;
    if (!out.empty()) out += ",";
    out += "dim" + std::to_string(d) + ":" + std::to_string(s.count(d));
  }
  return out.empty() ? "none" : out;
}

inline std::string betti_string(const HomologyResult& h) {
  std::string out;
  for (const auto& g : h.groups) {
    if (!g.betti) continue;
    if (!out.empty()) out += ",";
    out += "b" + std::to_string(g.dim) + "=" + std::to_string(g.betti);
  }
  return out.empty() ? "all zero" : out;
}

/// The Morse channel: a matching from the family's construction.
struct MorseRun {
  std::optional<MatchingTree> tree;
  std::optional<Sg2kMatching> sg2;
  std::optional<PartialMatching> matching;  // for trees; sg2 owns its own
  const PartialMatching& result() const { return sg2 ? sg2->matching() : *matching; }
};

inline MorseRun run_construction(VerificationReport& r, const Graph& g, const SimplicialComplex& k,
                                 const VerifyOptions& opt) {
  MorseRun run;
  const Family f = r.family;
  const int p = r.param;
  if (f == Family::sg2 && p >= 3) {
    r.construction = "grading";
    run.sg2 = sg2k_matching(p, opt.face_budget);
    const auto& s = *run.sg2;
    add_check(r, "morse.partition", s.partition_ok(),
              std::to_string(s.unclassified.size()) + " unclassified, " + std::to_string(s.overlaps.size()) +
                  " faces under several clauses");
    add_check(r, "morse.order", s.order_ok(), s.order_ok() ? "both gradings order-preserving" : "order violation");
    add_check(r, "morse.grades", s.grade_problems.empty() && s.patchwork.ok(),
              s.grade_problems.empty() ? s.patchwork.describe(s.combined) : s.grade_problems.front());
    add_check(r, "morse.critical_set", s.critical == s.expected_critical,
              std::to_string(s.critical.size()) + " critical, " + std::to_string(s.expected_critical.size()) +
                  " expected");
    return run;
  }
  SearchOptions so;
  so.node_budget = opt.node_budget;
  switch (f) {
    case Family::cycle:
      r.construction = "script";
      run.tree = run_script(g, cycle_script(p));
      break;
    case Family::path:
      r.construction = "script";
      run.tree = run_script(g, path_script(p));
      break;
    case Family::e:
      if (p >= 3) {
        r.construction = "script";
        const auto s = e_graph_script(p);
        const auto audit = audit_script(g, s.program);
        add_check(r, "morse.script", audit.ok(),
                  std::to_string(audit.rejected.size()) + " rejected steps, " + std::to_string(audit.open_paths.size()) +
                      " open leaves");
        bool shapes = true;
        for (const auto& t : s.terminals) {
          if (t.kind == ETerminal::Kind::paths || t.expected_el >= 0) shapes = shapes && t.shape_matches;
        }
        add_check(r, "morse.terminals", shapes, std::to_string(s.terminals.size()) + " lemma terminals");
        run.tree = audit.tree;
        break;
      }
      [[fallthrough]];
    default:
      r.construction = "search";
      run.tree = search_tree(g, so);
      break;
  }
  run.matching = induced_matching(*run.tree, k);
  const auto tc = check_tree_consistency(*run.tree, *run.matching);
  add_check(r, "morse.leaves", tc.ok(), tc.ok() ? "critical cells are the nonempty leaves" : tc.problems.front());
  return run;
}

}  // namespace detail

/// Builds the instance and compares prediction, Morse construction and
/// homology. Budget overruns end the report early with `budget_exhausted`.
inline VerificationReport verify_instance(Family f, int p, const VerifyOptions& opt = {}) {
  VerificationReport r;
  r.family = f;
  r.param = p;
  const Graph g = family_graph(f, p);
  r.instance = g.family().id();
  r.vertices = g.size();
  r.edges = g.edge_count();
  r.prediction = predict(f, p);
  try {
    const auto k = independence_complex(g, opt.face_budget);
    r.f_vector = k.f_vector();
    if (opt.morse) {
      if (!(f == Family::sg2 && p < 3) && !(f == Family::e && p < 3)) r.expected_cells = predict_morse_counts(f, p);
      const auto run = detail::run_construction(r, g, k, opt);
      const auto& m = run.result();
      const auto acyc = m.verify_acyclic();
      detail::add_check(r, "morse.acyclic", acyc.acyclic, acyc.acyclic ? "acyclic" : acyc.describe());
      if (acyc.acyclic) {
        r.morse = morse_summary(m);
        const auto& s = *r.morse;
        if (r.expected_cells) {
          int top = static_cast<int>(s.critical_by_dim.size());
          for (const auto& c : r.expected_cells->cells) top = std::max(top, c.size + 1);
          bool ok = true;
          for (int d = -1; d <= top; ++d) ok = ok && s.count(d) == r.expected_cells->count_in_dim(d);
          detail::add_check(r, "morse.cells", ok,
                            detail::cells_string(s) + " against " + r.expected_cells->describe());
        }
        if (r.prediction) {
          // A matched empty face contributes the base point; the remaining
          // critical cells must be exactly the predicted spheres.
          bool ok = s.empty_face_matched;
          for (int d = -1; d + 1 < static_cast<int>(s.critical_by_dim.size()); ++d) {
            ok = ok && s.count(d) == r.prediction->betti(d);
          }
          for (const auto& sp : r.prediction->spheres) ok = ok && s.count(sp.dim) == sp.count;
          detail::add_check(r, "morse.prediction", ok, detail::cells_string(s) + " against " + r.prediction->describe());
        }
      }
    }
    if (opt.homology) {
      HomologyOptions ho;
      ho.snf_face_threshold = opt.snf_threshold;
      r.homology = homology(k, ho);
      const auto& h = *r.homology;
      detail::add_check(r, "homology.chain", boundary_matrices(k).is_chain_complex(), "boundary of boundary");
      const long long chi = euler_characteristic(k);
      detail::add_check(r, "homology.euler", chi == h.euler_from_betti(),
                        "euler " + std::to_string(chi) + ", from betti " + std::to_string(h.euler_from_betti()));
      if (h.torsion_computed) {
        detail::add_check(r, "homology.torsion", h.torsion_free(), h.torsion_free() ? "torsion-free" : "torsion found");
      } else {
        r.checks.push_back({"homology.torsion", Verdict::skipped, "above the Smith normal form threshold"});
      }
      if (r.prediction) {
        bool ok = true;
        for (const auto& grp : h.groups) ok = ok && grp.betti == r.prediction->betti(grp.dim);
        for (const auto& sp : r.prediction->spheres) ok = ok && h.betti(sp.dim) == sp.count;
        detail::add_check(r, "homology.prediction", ok, detail::betti_string(h) + " against " + r.prediction->describe());
      }
      if (r.morse) {
        bool ok = true;
        for (const auto& grp : h.groups) ok = ok && r.morse->count(grp.dim) >= grp.betti;
        std::string what = "morse inequalities";
        if (const auto d = r.morse->single_dimension(); d && r.morse->empty_face_matched) {
          for (const auto& grp : h.groups) ok = ok && grp.betti == (grp.dim == *d ? r.morse->count(*d) : 0);
          what += ", concentrated in dim " + std::to_string(*d);
        }
        detail::add_check(r, "homology.morse", ok, what);
      }
    }
  } catch (const size_error& e) {
    r.budget_exhausted = e.what();
  }
  return r;
}

inline std::vector<VerificationReport> verify_family(Family f, int lo, int hi, const VerifyOptions& opt = {}) {
  if (lo > hi) throw parameter_error("verify_family: empty range");
  std::vector<VerificationReport> out;
  for (int p = lo; p <= hi; ++p) out.push_back(verify_instance(f, p, opt));
  return out;
}

}  // namespace indmorse
