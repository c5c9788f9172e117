#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <vector>

#include "indmorse/errors.hpp"
#include "indmorse/graph.hpp"

namespace indmorse {

/// Subgraph induced on `vertices`, labels preserved, original vertex order kept.
inline Graph induced_subgraph(const Graph& g, std::vector<int> vertices) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  std::vector<int> position(g.size(), -1);
  std::vector<VertexLabel> labels;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const int v = vertices[i];
    if (v < 0 || v >= static_cast<int>(g.size())) {
      throw parameter_error("induced_subgraph: unknown vertex index " + std::to_string(v));
    }
    position[v] = static_cast<int>(i);
    labels.push_back(g.label(v));
  }
  std::vector<std::pair<int, int>> edges;
  for (int v : vertices) {
    for (int w : g.neighbors(v)) {
      if (v < w && position[w] >= 0) edges.emplace_back(position[v], position[w]);
    }
  }
  FamilyParams fam{"induced", {}};
  return Graph(fam, std::move(labels), edges);
}

/// Induced subgraph on the vertices of a bitmask (graphs with at most 64 vertices).
inline Graph induced_subgraph_mask(const Graph& g, std::uint64_t mask) {
  std::vector<int> vs;
  for (std::uint64_t m = mask; m; m &= m - 1) vs.push_back(std::countr_zero(m));
  return induced_subgraph(g, vs);
}

inline bool is_regular(const Graph& g, std::size_t degree) {
  for (int v = 0; v < static_cast<int>(g.size()); ++v) {
    if (g.degree(v) != degree) return false;
  }
  return true;
}

inline bool is_bipartite(const Graph& g) {
  std::vector<int> side(g.size(), -1);
  for (int s = 0; s < static_cast<int>(g.size()); ++s) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int w : g.neighbors(u)) {
        if (side[w] < 0) {
          side[w] = 1 - side[u];
          q.push(w);
        } else if (side[w] == side[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

namespace detail {

/// Stable color refinement on the disjoint union of two graphs. Returns colors
/// for g's vertices followed by h's.
inline std::vector<int> refine_colors(const Graph& g, const Graph& h) {
  const int ng = static_cast<int>(g.size());
  const int total = ng + static_cast<int>(h.size());
  auto nbrs = [&](int v) { return v < ng ? g.neighbors(v) : h.neighbors(v - ng); };
  std::vector<int> color(total);
  for (int v = 0; v < total; ++v) color[v] = static_cast<int>(nbrs(v).size());
  for (int round = 0; round < total; ++round) {
    std::map<std::pair<int, std::vector<int>>, int> signature_ids;
    std::vector<int> next(total);
    for (int v = 0; v < total; ++v) {
      std::vector<int> ms;
      for (int w : nbrs(v)) ms.push_back(color[v < ng ? w : w + ng]);
      std::sort(ms.begin(), ms.end());
      auto key = std::make_pair(color[v], std::move(ms));
      auto [it, inserted] = signature_ids.emplace(std::move(key), static_cast<int>(signature_ids.size()));
      next[v] = it->second;
    }
    // Renumber canonically so both graphs share ids.
    std::vector<int> classes_before(color);
    std::sort(classes_before.begin(), classes_before.end());
    const auto before = std::unique(classes_before.begin(), classes_before.end()) - classes_before.begin();
    color = std::move(next);
    if (static_cast<long>(signature_ids.size()) == before) break;
  }
  return color;
}

struct IsoSearch {
  const Graph& g;
  const Graph& h;
  std::vector<int> color_g;
  std::vector<int> color_h;
  std::vector<int> order;
  std::vector<int> map_gh;
  std::vector<int> used_h;

  bool extend(std::size_t depth) {
    if (depth == order.size()) return true;
    const int u = order[depth];
    for (int v = 0; v < static_cast<int>(h.size()); ++v) {
      if (used_h[v] || color_h[v] != color_g[u]) continue;
      bool ok = true;
      for (std::size_t d = 0; d < depth && ok; ++d) {
        const int x = order[d];
        ok = g.adjacent(u, x) == h.adjacent(v, map_gh[x]);
      }
      if (!ok) continue;
      map_gh[u] = v;
      used_h[v] = 1;
      if (extend(depth + 1)) return true;
      used_h[v] = 0;
      map_gh[u] = -1;
    }
    return false;
  }
};

}  // namespace detail

/// Exact isomorphism test for graphs with at most `limit` vertices.
inline bool is_isomorphic_small(const Graph& g, const Graph& h, std::size_t limit = 64) {
  if (g.size() > limit || h.size() > limit) {
    throw size_error("is_isomorphic_small: graph too large", limit);
  }
  if (g.size() != h.size() || g.edge_count() != h.edge_count()) return false;
  if (g.empty()) return true;
  const auto colors = detail::refine_colors(g, h);
  const int ng = static_cast<int>(g.size());
  std::vector<int> cg(colors.begin(), colors.begin() + ng);
  std::vector<int> ch(colors.begin() + ng, colors.end());
  {
    auto a = cg;
    auto b = ch;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return false;
  }
  // Order g so that each vertex after the first of its component has a placed neighbor.
  std::map<int, int> class_size;
  for (int c : cg) ++class_size[c];
  std::vector<int> order;
  std::vector<char> placed(ng, 0);
  while (static_cast<int>(order.size()) < ng) {
    int start = -1;
    for (int v = 0; v < ng; ++v) {
      if (!placed[v] && (start < 0 || class_size[cg[v]] < class_size[cg[start]])) start = v;
    }
    std::queue<int> q;
    q.push(start);
    placed[start] = 1;
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      order.push_back(u);
      for (int w : g.neighbors(u)) {
        if (!placed[w]) {
          placed[w] = 1;
          q.push(w);
        }
      }
    }
  }
  detail::IsoSearch search{g, h, cg, ch, order, std::vector<int>(ng, -1), std::vector<int>(h.size(), 0)};
  return search.extend(0);
}

namespace detail {

inline bool colorable(const Graph& g, const std::vector<int>& order, std::vector<int>& color, std::size_t depth,
                      int k, int used) {
  if (depth == order.size()) return true;
  const int v = order[depth];
  const int limit = std::min(k, used + 1);
  for (int c = 0; c < limit; ++c) {
    bool ok = true;
    for (int w : g.neighbors(v)) {
      if (color[w] == c) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    color[v] = c;
    if (colorable(g, order, color, depth + 1, k, std::max(used, c + 1))) return true;
    color[v] = -1;
  }
  return false;
}

}  // namespace detail

/// Exact chromatic number by backtracking over color classes.
inline int chromatic_number_exact(const Graph& g, std::size_t max_vertices = 40) {
  if (g.size() > max_vertices) throw size_error("chromatic_number_exact: graph too large", max_vertices);
  if (g.empty()) return 0;
  std::vector<int> order(g.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return g.degree(a) > g.degree(b); });
  for (int k = 1; k <= static_cast<int>(g.size()); ++k) {
    std::vector<int> color(g.size(), -1);
    if (detail::colorable(g, order, color, 0, k, 0)) return k;
  }
  return static_cast<int>(g.size());
}

}  // namespace indmorse
