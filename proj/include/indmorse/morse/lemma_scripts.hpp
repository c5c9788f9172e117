#pragma once

#include <algorithm>
#include <bit>
#include <optional>
#include <string>
#include <vector>

#include "indmorse/errors.hpp"
#include "indmorse/morse/matching_tree.hpp"

namespace indmorse {

/// Steps finishing the path `order[0] - order[1] - ...` among the remaining
/// vertices of the node at `path`: match the second vertex via the first,
/// which removes three vertices, and close with a free vertex or a final
/// match. Returns the node reached, or nothing when a free vertex closed it.
inline std::optional<std::string> append_path_program(const std::vector<int>& order, std::string path,
                                                      TreeProgram& out) {
  std::size_t s = 0;
  while (s < order.size()) {
    if (order.size() - s == 1) {
      out.push_back({path, TreeStep::free_vertex(order[s]), "end of path"});
      return std::nullopt;
    }
    out.push_back({path, TreeStep::match(order[s + 1], order[s]), {}});
    path = path == "." ? "R" : path + "R";
    s += 3;
  }
  return path;
}

/// Components of the graph induced on `mask`, each listed from an endpoint,
/// when every component is a path.
inline std::optional<std::vector<std::vector<int>>> path_components(const Graph& g, Face mask) {
  std::vector<std::vector<int>> out;
  Face left = mask;
  while (left) {
    int start = -1;
    for (Face m = left; m; m &= m - 1) {
      const int v = std::countr_zero(m);
      const int d = std::popcount(g.neighbor_mask(v) & mask);
      if (d > 2) return std::nullopt;
      if (d <= 1) {
        start = v;
        break;
      }
    }
    if (start < 0) return std::nullopt;  // only cycles remain
    std::vector<int> comp{start};
    left &= ~bit(start);
    for (;;) {
      const Face next = g.neighbor_mask(comp.back()) & left;
      if (!next) break;
      if (std::popcount(next) > 1) return std::nullopt;
      comp.push_back(std::countr_zero(next));
      left &= ~next;
    }
    // A component that closes up is a cycle.
    if (comp.size() > 2 && (g.neighbor_mask(comp.back()) & bit(comp.front()))) return std::nullopt;
    out.push_back(std::move(comp));
  }
  return out;
}

/// Path steps for every component in turn.
inline void append_paths_program(const std::vector<std::vector<int>>& comps, std::string path, TreeProgram& out) {
  for (const auto& c : comps) {
    auto next = append_path_program(c, path, out);
    if (!next) return;
    path = *next;
  }
}

inline TreeProgram path_script(int n) {
  if (n < 1) throw parameter_error("path_script: n must be at least 1");
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  TreeProgram out;
  append_path_program(order, ".", out);
  return out;
}

/// Split the first vertex, leaving a path of n - 1 (exclude) and n - 3 (include) vertices.
inline TreeProgram cycle_script(int n) {
  if (n < 3) throw parameter_error("cycle_script: n must be at least 3");
  TreeProgram out{{".", TreeStep::split(0), {}}};
  std::vector<int> exc;
  std::vector<int> inc;
  for (int i = 1; i < n; ++i) exc.push_back(i);
  for (int i = 2; i < n - 1; ++i) inc.push_back(i);
  append_path_program(exc, "L", out);
  append_path_program(inc, "R", out);
  return out;
}

}  // namespace indmorse
