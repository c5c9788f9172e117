#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "indmorse/complex.hpp"
#include "indmorse/errors.hpp"
#include "indmorse/face.hpp"
#include "indmorse/graph.hpp"
#include "indmorse/morse/matching.hpp"

namespace indmorse {

/// Σ(A, B): independent sets containing A and missing B.
struct SigmaNode {
  Face a = 0;
  Face b = 0;
  bool operator==(const SigmaNode&) const = default;
};

inline Face residual(const Graph& g, const SigmaNode& s) { return g.all_mask() & ~(s.a | s.b); }

enum class StepKind { free, match, split };

struct TreeStep {
  StepKind kind = StepKind::split;
  int v = -1;  // matching or splitting vertex
  int p = -1;  // free vertex, or the witness of a match

  static TreeStep free_vertex(int p) { return {StepKind::free, -1, p}; }
  static TreeStep match(int v, int p) { return {StepKind::match, v, p}; }
  static TreeStep split(int v) { return {StepKind::split, v, -1}; }

  bool operator==(const TreeStep&) const = default;
};

/// `split 3`, `match c5 via 5`, `free 7`, with vertex labels.
inline std::string step_to_string(const Graph& g, const TreeStep& s) {
  auto name = [&](int v) { return v >= 0 && v < static_cast<int>(g.size()) ? to_string(g.label(v)) : "#" + std::to_string(v); };
  switch (s.kind) {
    case StepKind::free:
      return "free " + name(s.p);
    case StepKind::match:
      return "match " + name(s.v) + " via " + name(s.p);
    case StepKind::split:
      return "split " + name(s.v);
  }
  return {};
}

struct StepViolation {
  enum class Code {
    vertex_out_of_range,
    node_overlap,         // A ∩ B ≠ ∅
    neighborhood_open,    // N(A) ⊄ B
    vertex_used,          // the step vertex lies in A ∪ B
    not_adjacent,         // match: v ∉ N(p)
    neighbors_remain,     // free: N(p) \ (A ∪ B) ≠ ∅
    wrong_neighbors,      // match: N(p) \ (A ∪ B) ≠ {v}
    unknown_node,
    not_a_leaf,
    void_node,
    singleton_node,       // |Σ| < 2: the loop guard forbids a step
  };
  Code code;
  std::string message;
};

inline std::string labels_string(const Graph& g, Face f) {
  std::string s = "{";
  bool first = true;
  for (Face m = f; m; m &= m - 1) {
    if (!first) s += ',';
    first = false;
    s += to_string(g.label(std::countr_zero(m)));
  }
  return s + "}";
}

inline std::string sigma_to_string(const Graph& g, const SigmaNode& s) {
  return "Σ(" + labels_string(g, s.a) + ", " + labels_string(g, s.b) + ")";
}

inline std::optional<StepViolation> validate_node(const Graph& g, const SigmaNode& s) {
  using C = StepViolation::Code;
  const Face all = g.all_mask();
  if ((s.a | s.b) & ~all) return StepViolation{C::vertex_out_of_range, "node mentions a vertex outside the graph"};
  if (s.a & s.b) return StepViolation{C::node_overlap, "A and B share " + labels_string(g, s.a & s.b)};
  Face na = 0;
  for (Face m = s.a; m; m &= m - 1) na |= g.neighbor_mask(std::countr_zero(m));
  if (na & ~s.b) return StepViolation{C::neighborhood_open, "N(A) has " + labels_string(g, na & ~s.b) + " outside B"};
  return std::nullopt;
}

/// Checks the preconditions of one step at a node (the node itself is assumed valid).
inline std::optional<StepViolation> validate_step(const Graph& g, const SigmaNode& s, const TreeStep& step) {
  using C = StepViolation::Code;
  const int n = static_cast<int>(g.size());
  const Face used = s.a | s.b;
  auto in_range = [&](int v) { return v >= 0 && v < n; };
  auto name = [&](int v) { return to_string(g.label(v)); };
  switch (step.kind) {
    case StepKind::split:
      if (!in_range(step.v)) return StepViolation{C::vertex_out_of_range, "split vertex out of range"};
      if (contains(used, step.v)) return StepViolation{C::vertex_used, "split vertex " + name(step.v) + " lies in A ∪ B"};
      return std::nullopt;
    case StepKind::free: {
      if (used == g.all_mask()) return StepViolation{C::vertex_used, "no free vertex exists: every vertex lies in A ∪ B"};
      if (!in_range(step.p)) return StepViolation{C::vertex_out_of_range, "free vertex out of range"};
      if (contains(used, step.p)) return StepViolation{C::vertex_used, "free vertex " + name(step.p) + " lies in A ∪ B"};
      const Face left = g.neighbor_mask(step.p) & ~used;
      if (left) {
        return StepViolation{C::neighbors_remain,
                             "N(" + name(step.p) + ") \\ (A ∪ B) = " + labels_string(g, left) + " is not empty"};
      }
      return std::nullopt;
    }
    case StepKind::match: {
      if (!in_range(step.v) || !in_range(step.p)) return StepViolation{C::vertex_out_of_range, "match vertex out of range"};
      if (contains(used, step.p)) return StepViolation{C::vertex_used, "witness " + name(step.p) + " lies in A ∪ B"};
      if (!g.adjacent(step.v, step.p)) {
        return StepViolation{C::not_adjacent, name(step.v) + " is not a neighbor of " + name(step.p)};
      }
      const Face left = g.neighbor_mask(step.p) & ~used;
      if (left != bit(step.v)) {
        return StepViolation{C::wrong_neighbors, "N(" + name(step.p) + ") \\ (A ∪ B) = " + labels_string(g, left) +
                                                     ", not {" + name(step.v) + "}"};
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

/// Child labels of a valid step; Free has the single child ∅ and yields none.
inline std::vector<SigmaNode> step_children(const Graph& g, const SigmaNode& s, const TreeStep& step) {
  switch (step.kind) {
    case StepKind::free:
      return {};
    case StepKind::match:
      return {SigmaNode{s.a | bit(step.v), s.b | g.neighbor_mask(step.v)}};
    case StepKind::split:
      return {SigmaNode{s.a, s.b | bit(step.v)}, SigmaNode{s.a | bit(step.v), s.b | g.neighbor_mask(step.v)}};
  }
  return {};
}

/// Members of Σ(A, B) in ascending face order. Stops with a size error past `limit`.
inline std::vector<Face> expand_sigma(const Graph& g, const SigmaNode& s,
                                      std::size_t limit = std::numeric_limits<std::size_t>::max()) {
  if (auto bad = validate_node(g, s)) throw contract_error("expand_sigma: " + bad->message);
  std::vector<Face> out;
  std::vector<std::pair<Face, Face>> stack{{s.a, residual(g, s)}};
  while (!stack.empty()) {
    auto [face, allowed] = stack.back();
    stack.pop_back();
    if (out.size() >= limit) throw size_error("expand_sigma: Σ-set exceeds the limit", limit);
    out.push_back(face);
    for (Face m = allowed; m; m &= m - 1) {
      const int v = std::countr_zero(m);
      const Face above = allowed & ~(bit(v) | (bit(v) - 1));
      stack.emplace_back(face | bit(v), above & ~g.neighbor_mask(v));
    }
  }
  std::sort(out.begin(), out.end(), FaceLess{});
  return out;
}

/// |Σ(A, B)| counted up to `cap`.
inline std::size_t sigma_count(const Graph& g, const SigmaNode& s, std::size_t cap) {
  std::size_t count = 0;
  std::vector<std::pair<Face, Face>> stack{{s.a, residual(g, s)}};
  while (!stack.empty() && count < cap) {
    auto [face, allowed] = stack.back();
    stack.pop_back();
    ++count;
    for (Face m = allowed; m; m &= m - 1) {
      const int v = std::countr_zero(m);
      const Face above = allowed & ~(bit(v) | (bit(v) - 1));
      stack.emplace_back(face | bit(v), above & ~g.neighbor_mask(v));
    }
  }
  return count;
}

struct TreeNode {
  SigmaNode sigma;
  std::optional<TreeStep> step;
  int parent = -1;
  std::vector<int> children;
  std::string path;  // "." for the root, else L/R letters
  bool void_leaf = false;

  bool is_leaf() const { return !step; }
};

class MatchingTree {
 public:
  explicit MatchingTree(Graph g) : g_(std::move(g)) {
    nodes_.push_back(TreeNode{SigmaNode{}, std::nullopt, -1, {}, ".", false});
    by_path_.emplace(".", 0);
  }

  const Graph& graph() const noexcept { return g_; }
  const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
  const TreeNode& node(int id) const { return nodes_.at(id); }
  const TreeNode& root() const { return nodes_.front(); }

  std::optional<int> find(const std::string& path) const {
    auto it = by_path_.find(path);
    if (it == by_path_.end()) return std::nullopt;
    return it->second;
  }

  /// Leaves still open for a step: not ∅ and |Σ| ≥ 2.
  std::vector<int> open_leaves() const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(nodes_.size()); ++i) {
      const auto& n = nodes_[i];
      if (n.is_leaf() && !n.void_leaf && sigma_count(g_, n.sigma, 2) >= 2) out.push_back(i);
    }
    return out;
  }

  /// Leaves labeled by a nonempty Σ-set, in creation order.
  std::vector<int> nonempty_leaves() const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(nodes_.size()); ++i) {
      if (nodes_[i].is_leaf() && !nodes_[i].void_leaf) out.push_back(i);
    }
    return out;
  }

  /// A-sets of the nonempty leaves, in ascending face order.
  std::vector<Face> critical_faces() const {
    std::vector<Face> out;
    for (int i : nonempty_leaves()) out.push_back(nodes_[i].sigma.a);
    std::sort(out.begin(), out.end(), FaceLess{});
    return out;
  }

  bool complete() const { return open_leaves().empty(); }

  /// Validates and applies a step at the leaf `path`, returning the child ids.
  std::vector<int> apply(const std::string& path, const TreeStep& step) {
    if (auto bad = check(path, step)) throw contract_error("matching tree at " + path + ": " + bad->message);
    const int id = *find(path);
    nodes_[id].step = step;
    const SigmaNode sigma = nodes_[id].sigma;
    std::vector<int> kids;
    if (step.kind == StepKind::free) {
      kids.push_back(add_child(id, "L", SigmaNode{}, true));
    } else {
      const auto labels = step_children(g_, sigma, step);
      const char* letters = step.kind == StepKind::match ? "R" : "LR";
      for (std::size_t i = 0; i < labels.size(); ++i) kids.push_back(add_child(id, std::string(1, letters[i]), labels[i], false));
    }
    return kids;
  }

  /// Why `step` may not be applied at `path`, if anything.
  std::optional<StepViolation> check(const std::string& path, const TreeStep& step) const {
    using C = StepViolation::Code;
    const auto id = find(path);
    if (!id) return StepViolation{C::unknown_node, "no node at path " + path};
    const auto& n = nodes_[*id];
    if (!n.is_leaf()) return StepViolation{C::not_a_leaf, "node " + path + " already carries a step"};
    if (n.void_leaf) return StepViolation{C::void_node, "node " + path + " is labeled ∅"};
    if (sigma_count(g_, n.sigma, 2) < 2) return StepViolation{C::singleton_node, "node " + path + " has |Σ| = 1"};
    return validate_step(g_, n.sigma, step);
  }

 private:
  int add_child(int parent, const std::string& letter, SigmaNode s, bool void_leaf) {
    const int id = static_cast<int>(nodes_.size());
    const std::string& base = nodes_[parent].path;
    std::string path = base == "." ? letter : base + letter;
    nodes_.push_back(TreeNode{s, std::nullopt, parent, {}, path, void_leaf});
    nodes_[parent].children.push_back(id);
    by_path_.emplace(std::move(path), id);
    return id;
  }

  Graph g_;
  std::vector<TreeNode> nodes_;
  std::unordered_map<std::string, int> by_path_;
};

/// One line of a tree program. `note` is free text carried into reports.
struct ScriptLine {
  std::string path;
  TreeStep step;
  std::string note;
};

using TreeProgram = std::vector<ScriptLine>;

/// A program step was rejected.
class script_error : public error {
 public:
  script_error(std::size_t index, std::string path, StepViolation violation, const std::string& text)
      : error("step " + std::to_string(index) + " at " + path + " (" + text + "): " + violation.message),
        index_(index),
        path_(std::move(path)),
        violation_(std::move(violation)) {}
  std::size_t index() const noexcept { return index_; }
  const std::string& path() const noexcept { return path_; }
  const StepViolation& violation() const noexcept { return violation_; }

 private:
  std::size_t index_;
  std::string path_;
  StepViolation violation_;
};

/// The program ended with leaves that still hold two or more sets.
class incomplete_tree_error : public error {
 public:
  explicit incomplete_tree_error(std::vector<std::string> paths)
      : error("matching tree incomplete: open leaves " + join(paths)), paths_(std::move(paths)) {}
  const std::vector<std::string>& paths() const noexcept { return paths_; }

 private:
  static std::string join(const std::vector<std::string>& p) {
    std::string s;
    for (std::size_t i = 0; i < p.size() && i < 8; ++i) s += (i ? ", " : "") + p[i];
    if (p.size() > 8) s += ", ...";
    return s;
  }
  std::vector<std::string> paths_;
};

inline MatchingTree run_script(const Graph& g, const TreeProgram& program) {
  MatchingTree t(g);
  for (std::size_t i = 0; i < program.size(); ++i) {
    const auto& line = program[i];
    if (auto bad = t.check(line.path, line.step)) throw script_error(i, line.path, *bad, step_to_string(g, line.step));
    t.apply(line.path, line.step);
  }
  const auto open = t.open_leaves();
  if (!open.empty()) {
    std::vector<std::string> paths;
    for (int id : open) paths.push_back(t.node(id).path);
    throw incomplete_tree_error(std::move(paths));
  }
  return t;
}

struct ScriptAudit {
  struct Finding {
    std::size_t index;
    std::string path;
    std::string step;
    StepViolation violation;
  };
  MatchingTree tree;
  std::vector<Finding> rejected;
  std::vector<std::string> open_paths;

  bool ok() const { return rejected.empty() && open_paths.empty(); }
};

/// Like run_script, but skips rejected steps and reports every finding.
inline ScriptAudit audit_script(const Graph& g, const TreeProgram& program) {
  ScriptAudit a{MatchingTree(g), {}, {}};
  for (std::size_t i = 0; i < program.size(); ++i) {
    const auto& line = program[i];
    if (auto bad = a.tree.check(line.path, line.step)) {
      a.rejected.push_back({i, line.path, step_to_string(g, line.step), *bad});
      continue;
    }
    a.tree.apply(line.path, line.step);
  }
  for (int id : a.tree.open_leaves()) a.open_paths.push_back(a.tree.node(id).path);
  return a;
}

/// The program that rebuilds `t`, in node creation order.
inline TreeProgram tree_program(const MatchingTree& t) {
  TreeProgram out;
  for (const auto& n : t.nodes()) {
    if (n.step) out.push_back({n.path, *n.step, {}});
  }
  return out;
}

/// Induced matching on `k` = Ind(G): each face is routed down the tree. Faces
/// at a Free(p) node, or at a Match(v, p) node without v, pair by toggling p;
/// the rest must arrive at a nonempty leaf equal to its A-set.
inline PartialMatching induced_matching(const MatchingTree& t, const SimplicialComplex& k) {
  const Graph& g = t.graph();
  if (k.vertex_count() != g.size()) throw contract_error("induced_matching: complex and tree use different vertex sets");
  std::vector<std::pair<FaceId, FaceId>> pairs;
  std::vector<char> matched(k.face_count(), 0);
  const auto& nodes = t.nodes();
  for (FaceId f = 0; f < k.face_count(); ++f) {
    if (matched[f]) continue;
    const Face sigma = k.face(f);
    int at = 0;
    for (;;) {
      const auto& n = nodes[at];
      if (!is_subset(n.sigma.a, sigma) || (n.sigma.b & sigma)) {
        throw contract_error("induced_matching: face " + face_to_string(sigma) + " left Σ at " + n.path);
      }
      if (!n.step) {
        if (n.void_leaf || sigma != n.sigma.a) {
          throw contract_error("induced_matching: face " + face_to_string(sigma) + " stops at leaf " + n.path +
                               " without equaling its A-set");
        }
        break;
      }
      const TreeStep& s = *n.step;
      if (s.kind == StepKind::split) {
        at = n.children[contains(sigma, s.v) ? 1 : 0];
        continue;
      }
      if (s.kind == StepKind::match && contains(sigma, s.v)) {
        at = n.children[0];
        continue;
      }
      if (contains(sigma, s.p)) {
        throw contract_error("induced_matching: face " + face_to_string(sigma) + " reached " + n.path +
                             " after its lower partner");
      }
      const auto up = k.find(sigma | bit(s.p));
      if (!up) throw contract_error("induced_matching: " + face_to_string(sigma | bit(s.p)) + " is not a face");
      pairs.emplace_back(f, *up);
      matched[f] = matched[*up] = 1;
      break;
    }
  }
  return PartialMatching::from_pairs(k, pairs);
}

/// The same matching built literally from the Σ-sets of the Free and Match nodes.
inline PartialMatching induced_matching_by_expansion(const MatchingTree& t, const SimplicialComplex& k,
                                                     std::size_t limit = kDefaultFaceBudget) {
  const Graph& g = t.graph();
  PartialMatching m(k);
  for (const auto& n : t.nodes()) {
    if (!n.step || n.step->kind == StepKind::split) continue;
    const TreeStep& s = *n.step;
    for (Face sigma : expand_sigma(g, n.sigma, limit)) {
      if (contains(sigma, s.p)) continue;
      if (s.kind == StepKind::match && contains(sigma, s.v)) continue;
      m.add_pair(k.id_of(sigma), k.id_of(sigma | bit(s.p)));
    }
  }
  return m;
}

/// A complex owning its storage together with a matching on it.
struct OwnedMatching {
  std::shared_ptr<const SimplicialComplex> complex;
  PartialMatching matching;
};

inline OwnedMatching tree_matching(const MatchingTree& t, std::size_t face_budget = kDefaultFaceBudget) {
  auto k = std::make_shared<const SimplicialComplex>(independence_complex(t.graph(), face_budget));
  auto m = induced_matching(t, *k);
  return OwnedMatching{std::move(k), std::move(m)};
}

struct TreeConsistency {
  bool leaves_are_singletons = true;  // every nonempty leaf has Σ = {A}
  bool critical_equals_leaves = true;
  std::vector<std::string> problems;

  bool ok() const { return leaves_are_singletons && critical_equals_leaves; }
};

/// Compares a matching's critical faces with the A-sets of the tree's nonempty leaves.
inline TreeConsistency check_tree_consistency(const MatchingTree& t, const PartialMatching& m) {
  TreeConsistency c;
  for (int id : t.nonempty_leaves()) {
    const auto& n = t.node(id);
    // A itself always belongs to Σ(A, B), so a count of one means Σ = {A}.
    if (validate_node(t.graph(), n.sigma) || sigma_count(t.graph(), n.sigma, 2) != 1) {
      c.leaves_are_singletons = false;
      c.problems.push_back("leaf " + n.path + " holds more than its A-set");
    }
  }
  auto crit = m.critical_faces();
  std::sort(crit.begin(), crit.end(), FaceLess{});
  if (crit != t.critical_faces()) {
    c.critical_equals_leaves = false;
    c.problems.push_back("critical faces differ from the A-sets of nonempty leaves");
  }
  return c;
}

}  // namespace indmorse
