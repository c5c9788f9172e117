#pragma once

#include <algorithm>
#include <bit>
#include <climits>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "indmorse/errors.hpp"
#include "indmorse/graph.hpp"
#include "indmorse/morse/matching_tree.hpp"

namespace indmorse {

inline constexpr std::size_t kDefaultNodeBudget = 2'000'000;

struct SearchOptions {
  std::size_t node_budget = kDefaultNodeBudget;  // residual states evaluated exhaustively
};

struct SearchStats {
  std::size_t states = 0;
  bool budget_exhausted = false;
};

/// The node budget ran out; the best tree found (completed greedily) is attached.
class search_error : public size_error {
 public:
  search_error(const std::string& what, std::size_t budget, TreeProgram program, std::shared_ptr<const MatchingTree> tree)
      : size_error(what, budget), program_(std::move(program)), tree_(std::move(tree)) {}
  const TreeProgram& best_program() const noexcept { return program_; }
  const std::shared_ptr<const MatchingTree>& best_tree() const noexcept { return tree_; }

 private:
  TreeProgram program_;
  std::shared_ptr<const MatchingTree> tree_;
};

namespace detail {

/// Nonempty leaves below a node, with critical sizes relative to |A| at that node.
struct SearchCost {
  int count = 0;
  int lo = INT_MAX;
  int hi = INT_MIN;

  static SearchCost leaf() { return {1, 0, 0}; }
  SearchCost shifted(int by) const { return count ? SearchCost{count, lo + by, hi + by} : *this; }
  SearchCost operator+(const SearchCost& o) const {
    return {count + o.count, std::min(lo, o.lo), std::max(hi, o.hi)};
  }
  int spread() const { return count ? hi - lo : 0; }
  bool better_than(const SearchCost& o) const {
    if (count != o.count) return count < o.count;
    return spread() < o.spread();
  }
};

class TreeSearch {
 public:
  TreeSearch(const Graph& g, SearchOptions opt) : g_(g), opt_(opt) {}

  struct Choice {
    SearchCost cost;
    TreeStep step;
  };

  const Choice& solve(Face r) {
    if (auto it = memo_.find(r); it != memo_.end()) return it->second;
    Choice best{SearchCost::leaf(), {}};
    if (r) {
      if (++stats.states > opt_.node_budget) stats.budget_exhausted = true;
      best = evaluate(r);
    }
    return memo_.emplace(r, best).first->second;
  }

  void emit(Face r, SigmaNode at, const std::string& path, TreeProgram& out) {
    if (!r) return;
    const TreeStep step = solve(r).step;
    out.push_back({path, step, {}});
    const std::string base = path == "." ? "" : path;
    switch (step.kind) {
      case StepKind::free:
        return;
      case StepKind::match: {
        const Face nv = g_.neighbor_mask(step.v);
        emit(r & ~bit(step.v) & ~nv, SigmaNode{at.a | bit(step.v), at.b | nv}, base + "R", out);
        return;
      }
      case StepKind::split: {
        const Face nv = g_.neighbor_mask(step.v);
        emit(r & ~bit(step.v), SigmaNode{at.a, at.b | bit(step.v)}, base + "L", out);
        emit(r & ~bit(step.v) & ~nv, SigmaNode{at.a | bit(step.v), at.b | nv}, base + "R", out);
        return;
      }
    }
  }

  SearchStats stats;

 private:
  Choice evaluate(Face r) {
    for (Face m = r; m; m &= m - 1) {
      const int p = std::countr_zero(m);
      if (!(g_.neighbor_mask(p) & r)) return {SearchCost{}, TreeStep::free_vertex(p)};
    }
    std::vector<TreeStep> candidates;
    Face matched_v = 0;
    for (Face m = r; m; m &= m - 1) {
      const int p = std::countr_zero(m);
      const Face left = g_.neighbor_mask(p) & r;
      if (std::popcount(left) == 1 && !(left & matched_v)) {
        matched_v |= left;
        candidates.push_back(TreeStep::match(std::countr_zero(left), p));
      }
    }
    std::vector<int> splits;
    for (Face m = r; m; m &= m - 1) splits.push_back(std::countr_zero(m));
    auto rdeg = [&](int v) { return std::popcount(g_.neighbor_mask(v) & r); };
    std::stable_sort(splits.begin(), splits.end(), [&](int a, int b) { return rdeg(a) > rdeg(b); });
    for (int v : splits) candidates.push_back(TreeStep::split(v));

    if (stats.budget_exhausted) candidates.resize(1);
    Choice best{SearchCost{INT_MAX, 0, 0}, candidates.front()};
    for (const auto& step : candidates) {
      const Face nv = g_.neighbor_mask(step.v);
      SearchCost c;
      if (step.kind == StepKind::match) {
        c = solve(r & ~bit(step.v) & ~nv).cost.shifted(1);
      } else {
        const SearchCost exc = solve(r & ~bit(step.v)).cost;
        if (exc.count > best.cost.count) continue;  // the include branch only adds leaves
        c = exc + solve(r & ~bit(step.v) & ~nv).cost.shifted(1);
      }
      if (c.better_than(best.cost)) best = {c, step};
      if (best.cost.count == 0) break;
    }
    return best;
  }

  const Graph& g_;
  SearchOptions opt_;
  std::unordered_map<Face, Choice> memo_;
};

}  // namespace detail

/// Program finishing the subtree at `start` (addressed by `path`): fewest
/// nonempty leaves, then the smallest spread of critical-cell sizes. Free
/// steps come first, then matches by witness, then splits by residual degree
/// and index. Deterministic. When the budget is exhausted the remaining states
/// take their first candidate and `stats->budget_exhausted` is set.
inline TreeProgram search_program(const Graph& g, const SigmaNode& start, const std::string& path = ".",
                                  SearchOptions opt = {}, SearchStats* stats = nullptr) {
  if (g.size() > 40) throw size_error("search_tree: graph has more than 40 vertices", 40);
  if (auto bad = validate_node(g, start)) throw contract_error("search_tree: " + bad->message);
  detail::TreeSearch s(g, opt);
  TreeProgram out;
  s.emit(residual(g, start), start, path, out);
  if (stats) *stats = s.stats;
  return out;
}

/// Searched matching tree for the whole of Ind(G).
inline MatchingTree search_tree(const Graph& g, SearchOptions opt = {}, SearchStats* stats = nullptr) {
  SearchStats local;
  auto program = search_program(g, SigmaNode{}, ".", opt, &local);
  if (stats) *stats = local;
  auto tree = run_script(g, program);
  if (local.budget_exhausted) {
    throw search_error("search_tree: node budget exhausted for " + g.family().id(), opt.node_budget,
                       std::move(program), std::make_shared<const MatchingTree>(std::move(tree)));
  }
  return tree;
}

}  // namespace indmorse
