#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "indmorse/families.hpp"
#include "indmorse/graph_algorithms.hpp"
#include "indmorse/morse/lemma_scripts.hpp"
#include "indmorse/morse/matching_tree.hpp"
#include "indmorse/morse/search.hpp"

namespace indmorse {

/// A node of the E_{2n+2} construction that is finished by a lemma rather
/// than by explicit steps: an edge ladder EL_r (searched) or a union of paths.
struct ETerminal {
  enum class Kind { ladder, paths };
  std::string name;
  std::string path;
  Kind kind = Kind::ladder;
  int expected_el = -1;                 // r, for ladders
  std::vector<int> expected_paths;      // vertex counts, for paths
  SigmaNode sigma;
  Face residual = 0;
  bool shape_matches = false;           // residual induces the announced graph
  std::size_t cells = 0;                // nonempty leaves below this node
  std::vector<int> relative_sizes;      // their sizes minus |A| at this node
};

struct EScript {
  int n = 0;
  Graph graph;
  TreeProgram program;
  std::vector<ETerminal> terminals;
  std::vector<std::string> audit_notes;
};

namespace detail {

class EScriptBuilder {
 public:
  /// A node of the tree, or nothing for a branch that vanished (see `split`).
  using Handle = std::optional<std::string>;

  explicit EScriptBuilder(int n) : n_(n), m_(2 * n + 2), tree_(e_graph(n)) {
    script_.n = n;
    script_.graph = tree_.graph();
  }

  const Graph& g() const { return tree_.graph(); }
  int k(int i) const { return g().require_index(make_int(mod1(i, m_))); }
  int c(int i) const { return g().require_index(make_cycle(mod1(i, m_))); }

  /// A split on a vertex the node already excludes (or includes) leaves only
  /// one meaningful child; the node then plays that child's role and the
  /// other branch, with all steps addressed to it, is dropped.
  std::pair<Handle, Handle> split(const Handle& h, int v, const std::string& note) {
    if (!h) return {std::nullopt, std::nullopt};
    const auto& s = sigma(*h);
    if (contains(s.b, v)) {
      elided(*h, "split " + name(v), note, "already excluded, include branch is empty");
      return {h, std::nullopt};
    }
    if (contains(s.a, v)) {
      elided(*h, "split " + name(v), note, "already included, exclude branch is empty");
      return {std::nullopt, h};
    }
    const auto kids = apply(*h, TreeStep::split(v), note);
    return {tree_.node(kids[0]).path, tree_.node(kids[1]).path};
  }

  Handle match(const Handle& h, int v, int p, const std::string& note) {
    if (!h) return std::nullopt;
    const auto kids = apply(*h, TreeStep::match(v, p), note);
    return tree_.node(kids[0]).path;
  }

  void free_vertex(const Handle& h, int p, const std::string& note) {
    if (!h) return;
    apply(*h, TreeStep::free_vertex(p), note);
  }

  void ladder(const Handle& h, const std::string& name, int r) {
    if (!h) return;
    ETerminal t = start_terminal(*h, name, ETerminal::Kind::ladder);
    t.expected_el = r;
    if (r >= 0) {
      t.shape_matches = is_isomorphic_small(induced_subgraph_mask(g(), t.residual), el_graph(r));
    } else {
      t.shape_matches = false;
      script_.audit_notes.push_back(name + " at " + *h + ": no ladder EL_" + std::to_string(r) + " exists; residual " +
                                    labels_string(g(), t.residual) + " searched directly");
    }
    const auto steps = search_steps(t);
    finish_terminal(std::move(t), steps);
  }

  void paths(const Handle& h, const std::string& name, std::vector<int> lengths) {
    if (!h) return;
    ETerminal t = start_terminal(*h, name, ETerminal::Kind::paths);
    std::sort(lengths.begin(), lengths.end());
    t.expected_paths = lengths;
    TreeProgram steps;
    if (auto comps = path_components(g(), t.residual)) {
      std::vector<int> seen;
      for (const auto& cpt : *comps) seen.push_back(static_cast<int>(cpt.size()));
      std::sort(seen.begin(), seen.end());
      t.shape_matches = seen == lengths;
      append_paths_program(*comps, *h, steps);
    } else {
      script_.audit_notes.push_back(name + " at " + *h + ": residual is not a union of paths; searched instead");
      steps = search_steps(t);
    }
    if (!t.shape_matches) {
      std::string want;
      for (int x : lengths) want += (want.empty() ? "" : ",") + std::to_string(x);
      script_.audit_notes.push_back(name + " at " + *h + ": expected paths on " + want + " vertices, residual " +
                                    labels_string(g(), t.residual));
    }
    finish_terminal(std::move(t), steps);
  }

  EScript finish() {
    const auto open = tree_.open_leaves();
    if (!open.empty()) {
      std::vector<std::string> paths;
      for (int id : open) paths.push_back(tree_.node(id).path);
      throw incomplete_tree_error(std::move(paths));
    }
    return std::move(script_);
  }

  int n() const { return n_; }

 private:
  static int mod1(int i, int m) { return ((i - 1) % m + m) % m + 1; }

  std::string name(int v) const { return to_string(g().label(v)); }

  const SigmaNode& sigma(const std::string& path) const { return tree_.node(*tree_.find(path)).sigma; }

  std::vector<int> apply(const std::string& path, const TreeStep& step, const std::string& note) {
    if (auto bad = tree_.check(path, step)) {
      throw script_error(script_.program.size(), path, *bad, step_to_string(g(), step) + "; " + note);
    }
    script_.program.push_back({path, step, note});
    return tree_.apply(path, step);
  }

  void elided(const std::string& path, const std::string& step, const std::string& note, const std::string& why) {
    script_.audit_notes.push_back("at " + path + " " + step + " (" + note + ") elided: " + why);
  }

  ETerminal start_terminal(const std::string& path, const std::string& name, ETerminal::Kind kind) {
    ETerminal t;
    t.name = name;
    t.path = path;
    t.kind = kind;
    t.sigma = sigma(path);
    t.residual = residual(g(), t.sigma);
    return t;
  }

  // Searched on the induced subgraph, so the host may exceed the search size limit.
  TreeProgram search_steps(const ETerminal& t) const {
    const auto sub = induced_subgraph_mask(g(), t.residual);
    const auto host = face_indices(t.residual);
    auto steps = search_program(sub, SigmaNode{}, t.path);
    for (auto& line : steps) {
      if (line.step.v >= 0) line.step.v = host[line.step.v];
      if (line.step.p >= 0) line.step.p = host[line.step.p];
    }
    return steps;
  }

  void finish_terminal(ETerminal t, const TreeProgram& steps) {
    const std::size_t first_node = tree_.nodes().size();
    for (auto line : steps) {
      line.note = t.name;
      apply(line.path, line.step, line.note);
    }
    const int base = face_size(t.sigma.a);
    auto add_leaf = [&](const TreeNode& node) {
      if (!node.is_leaf() || node.void_leaf) return;
      ++t.cells;
      t.relative_sizes.push_back(face_size(node.sigma.a) - base);
    };
    add_leaf(tree_.node(*tree_.find(t.path)));
    for (std::size_t i = first_node; i < tree_.nodes().size(); ++i) add_leaf(tree_.node(static_cast<int>(i)));
    std::sort(t.relative_sizes.begin(), t.relative_sizes.end());
    script_.terminals.push_back(std::move(t));
  }

  int n_;
  int m_;
  MatchingTree tree_;
  EScript script_;
};

inline void e_script_odd(EScriptBuilder& b) {
  const int n = b.n();
  auto K = [&](int i) { return b.k(i); };
  auto C = [&](int i) { return b.c(i); };
  EScriptBuilder::Handle cur = std::string(".");
  for (int i = 0; i <= n - 2; ++i) {
    const std::string tag = "first loop, i=" + std::to_string(i);
    auto [exc, inc] = b.split(cur, K(i + 1), tag);
    auto x = b.match(inc, C(i + 3), K(i + 3), tag);
    b.free_vertex(x, K(i + 4 + n), tag);
    cur = exc;
  }
  for (int r = 0; r <= n - 2; ++r) {
    const std::string tag = "second loop, r=" + std::to_string(r);
    auto [exc, inc] = b.split(cur, K(n + r), tag);
    auto x = b.match(inc, C(n + r + 2), K(n + r + 2), tag);
    x = b.match(x, C(n + r + 4), K(n + r + 4), tag);
    b.free_vertex(x, C(r + 2), tag);
    cur = exc;
  }
  auto [without, with] = b.split(cur, K(2 * n), "split on 2n");

  // 2n included.
  {
    const std::string tag = "2n included";
    auto [e1, i1] = b.split(with, C(2 * n + 2), tag);
    b.free_vertex(e1, K(2 * n + 2), tag);
    auto [e2, i2] = b.split(i1, C(n - 1), tag);
    b.free_vertex(e2, C(n), tag);
    b.ladder(i2, "2n included", n - 4);
  }
  // 2n excluded.
  {
    auto [e1, i1] = b.split(without, C(2 * n + 2), "2n excluded");
    b.free_vertex(i1, K(2 * n + 1), "2n excluded");
    auto [x, y] = b.split(e1, K(2 * n + 1), "2n excluded");

    std::string tag = "2n, 2n+1 excluded";
    x = b.match(x, K(2 * n - 1), K(2 * n + 2), tag);
    auto [xe, xi] = b.split(x, C(n - 1), tag);
    b.free_vertex(xi, C(2 * n + 1), tag);
    auto [xe2, xi2] = b.split(xe, C(2 * n + 1), tag);
    b.free_vertex(xe2, C(2 * n), tag);
    auto [xe3, xi3] = b.split(xi2, C(n + 2), tag);
    b.free_vertex(xe3, C(n + 1), tag);
    b.ladder(xi3, tag, n - 5);

    tag = "2n excluded, 2n+1 included";
    y = b.match(y, C(2 * n - 1), K(2 * n - 1), tag);
    y = b.match(y, C(n), C(n - 1), tag);
    auto [ye, yi] = b.split(y, C(n + 2), tag);
    b.ladder(ye, tag + ", c_{n+2} excluded", n - 5);
    b.ladder(yi, tag + ", c_{n+2} included", n - 6);
  }
}

inline void e_script_even(EScriptBuilder& b) {
  const int n = b.n();
  auto K = [&](int i) { return b.k(i); };
  auto C = [&](int i) { return b.c(i); };
  EScriptBuilder::Handle cur = std::string(".");
  for (int i = 0; i <= 2 * n - 3; ++i) {
    const std::string tag = "loop, i=" + std::to_string(i);
    auto [exc, inc] = b.split(cur, K(i + 1), tag);
    auto x = i % 2 == 1 ? b.match(inc, C(i + n + 4), K(i + 3), tag) : b.match(inc, C(i + 3), K(i + 3), tag);
    b.free_vertex(x, K(i + 5), tag);
    cur = exc;
  }
  auto [without, with] = b.split(cur, C(n + 1), "split on c_{n+1}");

  if (n % 6 == 0 || n % 6 == 2) {
    const std::string tag = "c_{n+1} excluded";
    auto [e, i] = b.split(without, K(2 * n + 1), tag);
    b.paths(i, tag + ", 2n+1 included", {n / 2, n / 2});
    e = b.match(e, K(2 * n - 1), K(2 * n + 2), tag);
    b.paths(e, tag + ", 2n+1 excluded", {n / 2 + 1, n / 2 - 2});
  } else {
    const std::string tag = "c_{n+1} excluded";
    auto x = without;
    for (int j = n + 5; j <= 2 * n - 5; j += 6) x = b.match(x, C(j), C(j - 2), tag + ", upper chain");
    auto [e, i] = b.split(x, K(2 * n), tag);
    for (int j = n - 3; j >= 1; j -= 6) e = b.match(e, C(j), C(j + 2), tag + ", lower chain");
    b.paths(e, tag + ", 2n excluded", {4});
    b.free_vertex(i, K(2 * n + 2), tag + ", 2n included");
  }

  const std::string tag = "c_{n+1} included";
  auto [e, i] = b.split(with, K(2 * n), tag);
  b.paths(i, tag + ", 2n included", {n - 2});
  e = b.match(e, C(2 * n + 1), K(2 * n + 1), tag + ", 2n excluded");
  b.free_vertex(e, K(2 * n - 1), tag + ", 2n excluded");
}

}  // namespace detail

/// The explicit matching tree for Ind(E_{2n+2}), n ≥ 3. Steps are validated
/// as they are issued; ladder and path nodes are finished by search and by
/// the path construction respectively.
inline EScript e_graph_script(int n) {
  if (n < 3) throw parameter_error("e_graph_script: n must be at least 3");
  detail::EScriptBuilder b(n);
  if (n % 2 == 1) {
    detail::e_script_odd(b);
  } else {
    detail::e_script_even(b);
  }
  return b.finish();
}

}  // namespace indmorse
