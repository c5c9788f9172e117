#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "indmorse/errors.hpp"
#include "indmorse/graph.hpp"

namespace indmorse {

namespace detail {

/// Builds a graph whose vertices are sorted by label, edges given by label pairs.
inline Graph graph_from_labels(FamilyParams family, std::vector<VertexLabel> labels,
                               const std::vector<std::pair<VertexLabel, VertexLabel>>& edges) {
  std::sort(labels.begin(), labels.end());
  auto index = [&](const VertexLabel& l) {
    auto it = std::lower_bound(labels.begin(), labels.end(), l);
    if (it == labels.end() || *it != l) throw contract_error("graph: edge names unknown vertex " + to_string(l));
    return static_cast<int>(it - labels.begin());
  };
  std::vector<std::pair<int, int>> idx;
  idx.reserve(edges.size());
  for (const auto& [a, b] : edges) idx.emplace_back(index(a), index(b));
  return Graph(std::move(family), std::move(labels), idx);
}

/// Representative of i modulo m in 1..m.
constexpr int mod1(int i, int m) { return ((i - 1) % m + m) % m + 1; }

inline std::uint64_t subset_mask(const std::vector<int>& s) {
  std::uint64_t m = 0;
  for (int x : s) m |= std::uint64_t{1} << (x - 1);
  return m;
}

/// All r-subsets of [m] in lexicographic order.
inline std::vector<std::vector<int>> combinations(int m, int r) {
  std::vector<std::vector<int>> out;
  if (r < 0 || r > m) return out;
  std::vector<int> cur(r);
  for (int i = 0; i < r; ++i) cur[i] = i + 1;
  while (true) {
    out.push_back(cur);
    int i = r - 1;
    while (i >= 0 && cur[i] == m - r + i + 1) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < r; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Kneser and stable Kneser graphs
// ---------------------------------------------------------------------------

/// True iff no two cyclically consecutive elements of [m] both occur in `subset`.
inline bool is_stable(const SubsetLabel& subset, int m) {
  const auto& e = subset.elements;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] < 1 || e[i] > m) {
      throw parameter_error("is_stable: element " + std::to_string(e[i]) + " outside [1," + std::to_string(m) + "]");
    }
    if (i > 0 && e[i] <= e[i - 1]) throw parameter_error("is_stable: subset entries must be strictly increasing");
  }
  for (std::size_t i = 0; i + 1 < e.size(); ++i) {
    if (e[i + 1] == e[i] + 1) return false;
  }
  if (e.size() >= 2 && e.front() == 1 && e.back() == m) return false;
  return true;
}

namespace detail {

inline void check_kneser_params(int n, int k) {
  if (n < 1) throw parameter_error("kneser: n must be at least 1");
  if (k < 0) throw parameter_error("kneser: k must be nonnegative");
  if (2 * n + k > 64) throw parameter_error("kneser: ground set larger than 64 is unsupported");
}

inline Graph subset_graph(const std::string& tag, int n, int k, bool stable_only) {
  check_kneser_params(n, k);
  const int m = 2 * n + k;
  std::vector<VertexLabel> labels;
  std::vector<std::uint64_t> masks;
  for (auto& s : combinations(m, n)) {
    SubsetLabel label{s};
    if (stable_only && !is_stable(label, m)) continue;
    masks.push_back(subset_mask(s));
    labels.emplace_back(std::move(label));
  }
  std::vector<std::pair<int, int>> edges;
  for (std::size_t i = 0; i < masks.size(); ++i) {
    for (std::size_t j = i + 1; j < masks.size(); ++j) {
      if ((masks[i] & masks[j]) == 0) edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return Graph(FamilyParams{tag, {{"n", n}, {"k", k}}}, std::move(labels), edges);
}

}  // namespace detail

/// KG_{n,k}: n-subsets of [2n+k], adjacent when disjoint.
inline Graph kneser(int n, int k) { return detail::subset_graph("kg", n, k, false); }

/// SG_{n,k}: the subgraph of KG_{n,k} induced by stable n-subsets.
inline Graph stable_kneser(int n, int k) { return detail::subset_graph("sg", n, k, true); }

// ---------------------------------------------------------------------------
// Basic families
// ---------------------------------------------------------------------------

enum class BasicFamily { cycle, path, complete, complete_bipartite };

/// C_j, P_j, K_j on labels 1..j; K_{a,b} on 1..a and a+1..a+b.
inline Graph basic_graph(BasicFamily tag, int a, int b = 0) {
  std::vector<VertexLabel> labels;
  std::vector<std::pair<VertexLabel, VertexLabel>> edges;
  switch (tag) {
    case BasicFamily::cycle: {
      if (a < 3) throw parameter_error("cycle: length must be at least 3");
      for (int i = 1; i <= a; ++i) {
        labels.push_back(make_int(i));
        edges.emplace_back(make_int(i), make_int(detail::mod1(i + 1, a)));
      }
      return detail::graph_from_labels({"c", {{"n", a}}}, labels, edges);
    }
    case BasicFamily::path: {
      if (a < 1) throw parameter_error("path: must have at least one vertex");
      for (int i = 1; i <= a; ++i) {
        labels.push_back(make_int(i));
        if (i < a) edges.emplace_back(make_int(i), make_int(i + 1));
      }
      return detail::graph_from_labels({"p", {{"n", a}}}, labels, edges);
    }
    case BasicFamily::complete: {
      if (a < 1) throw parameter_error("complete graph: must have at least one vertex");
      for (int i = 1; i <= a; ++i) {
        labels.push_back(make_int(i));
        for (int j = i + 1; j <= a; ++j) edges.emplace_back(make_int(i), make_int(j));
      }
      return detail::graph_from_labels({"k", {{"n", a}}}, labels, edges);
    }
    case BasicFamily::complete_bipartite: {
      if (a < 1 || b < 1) throw parameter_error("complete bipartite graph: part sizes must be at least 1");
      for (int i = 1; i <= a + b; ++i) labels.push_back(make_int(i));
      for (int i = 1; i <= a; ++i) {
        for (int j = a + 1; j <= a + b; ++j) edges.emplace_back(make_int(i), make_int(j));
      }
      return detail::graph_from_labels({"kb", {{"a", a}, {"b", b}}}, labels, edges);
    }
  }
  throw parameter_error("basic_graph: unknown family");
}

inline Graph cycle_graph(int j) { return basic_graph(BasicFamily::cycle, j); }
inline Graph path_graph(int j) { return basic_graph(BasicFamily::path, j); }
inline Graph complete_graph(int j) { return basic_graph(BasicFamily::complete, j); }
inline Graph complete_bipartite_graph(int a, int b) { return basic_graph(BasicFamily::complete_bipartite, a, b); }

// ---------------------------------------------------------------------------
// The end-cycle families of SG_{n,2}
// ---------------------------------------------------------------------------

namespace detail {

inline void add_dc_edges(int n, std::vector<std::pair<VertexLabel, VertexLabel>>& edges) {
  const int m = 2 * n + 2;
  for (int i = 1; i <= m; ++i) edges.emplace_back(make_cycle(i), make_cycle(mod1(i + 1, m)));
  for (int i = 1; i <= n + 1; ++i) edges.emplace_back(make_cycle(i), make_cycle(mod1(i + n + 1, m)));
}

inline void add_codd_edges(int n, std::vector<std::pair<VertexLabel, VertexLabel>>& edges) {
  const int m = 2 * n + 2;
  for (int i = 1; i <= 2 * n + 1; i += 2) edges.emplace_back(make_cycle(i), make_cycle(mod1(i + 2, m)));
}

}  // namespace detail

/// DC_{2n+2}: the (2n+2)-cycle on c_1..c_{2n+2} plus antipodal chords.
inline Graph dc_cycle(int n) {
  if (n < 2) throw parameter_error("dc_cycle: n must be at least 2");
  std::vector<VertexLabel> labels;
  for (int i = 1; i <= 2 * n + 2; ++i) labels.push_back(make_cycle(i));
  std::vector<std::pair<VertexLabel, VertexLabel>> edges;
  detail::add_dc_edges(n, edges);
  return detail::graph_from_labels({"dc", {{"n", n}}}, labels, edges);
}

/// C_{n+1} on c_1, c_3, ..., c_{2n+1} (n even).
inline Graph c_odd(int n) {
  if (n < 2) throw parameter_error("c_odd: n must be at least 2");
  if (n % 2 != 0) throw parameter_error("c_odd: n must be even");
  std::vector<VertexLabel> labels;
  for (int i = 1; i <= 2 * n + 1; i += 2) labels.push_back(make_cycle(i));
  std::vector<std::pair<VertexLabel, VertexLabel>> edges;
  detail::add_codd_edges(n, edges);
  return detail::graph_from_labels({"codd", {{"n", n}}}, labels, edges);
}

/// E_{2n+2}: K_{n+1,n+1} on [2n+2] (odds against evens) joined by spokes to
/// DC_{2n+2} when n is odd, or to C_{n+1} on the odd c_i when n is even.
inline Graph e_graph(int n) {
  if (n < 2) throw parameter_error("e_graph: n must be at least 2");
  const int m = 2 * n + 2;
  std::vector<VertexLabel> labels;
  std::vector<std::pair<VertexLabel, VertexLabel>> edges;
  for (int i = 1; i <= m; ++i) labels.push_back(make_int(i));
  for (int i = 1; i <= m; i += 2) {
    for (int j = 2; j <= m; j += 2) edges.emplace_back(make_int(i), make_int(j));
  }
  if (n % 2 == 1) {
    for (int i = 1; i <= m; ++i) {
      labels.push_back(make_cycle(i));
      edges.emplace_back(make_int(i), make_cycle(i));
    }
    detail::add_dc_edges(n, edges);
  } else {
    for (int i = 1; i <= m; i += 2) {
      labels.push_back(make_cycle(i));
      edges.emplace_back(make_cycle(i), make_int(i));
      edges.emplace_back(make_cycle(i), make_int(detail::mod1(i + n + 1, m)));
    }
    detail::add_codd_edges(n, edges);
  }
  return detail::graph_from_labels({"e", {{"n", n}}}, labels, edges);
}

/// EL_r. EL_0 = K_2 and EL_1 = K_{1,3}; in general the ladder with rails
/// a_1..a_r and b_1..b_{r+2} and rungs {a_i, b_{i+1}}, which specializes to
/// both small cases.
inline Graph el_graph(int r) {
  if (r < 0) throw parameter_error("el_graph: r must be nonnegative");
  std::vector<VertexLabel> labels;
  std::vector<std::pair<VertexLabel, VertexLabel>> edges;
  for (int i = 1; i <= r; ++i) labels.push_back(make_cycle(i, 'a'));
  for (int j = 1; j <= r + 2; ++j) labels.push_back(make_cycle(j, 'b'));
  for (int i = 1; i < r; ++i) edges.emplace_back(make_cycle(i, 'a'), make_cycle(i + 1, 'a'));
  for (int j = 1; j < r + 2; ++j) edges.emplace_back(make_cycle(j, 'b'), make_cycle(j + 1, 'b'));
  for (int i = 1; i <= r; ++i) edges.emplace_back(make_cycle(i, 'a'), make_cycle(i + 1, 'b'));
  return detail::graph_from_labels({"el", {{"r", r}}}, labels, edges);
}

/// G □ H. Factors must not themselves be products.
inline Graph cartesian_product(const Graph& g, const Graph& h) {
  if (g.empty() || h.empty()) throw parameter_error("cartesian_product: factors must be nonempty");
  auto atom = [](const VertexLabel& l) -> AtomLabel {
    return std::visit(
        [](const auto& v) -> AtomLabel {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, PairLabel>) {
            throw parameter_error("cartesian_product: nested products are unsupported");
          } else {
            return v;
          }
        },
        l);
  };
  const int gn = static_cast<int>(g.size());
  const int hn = static_cast<int>(h.size());
  std::vector<VertexLabel> labels;
  labels.reserve(gn * hn);
  for (int u = 0; u < gn; ++u) {
    for (int v = 0; v < hn; ++v) labels.push_back(PairLabel{atom(g.label(u)), atom(h.label(v))});
  }
  std::vector<std::pair<VertexLabel, VertexLabel>> edges;
  for (int u = 0; u < gn; ++u) {
    for (int v = 0; v < hn; ++v) {
      for (int w : h.neighbors(v)) {
        if (v < w) edges.emplace_back(labels[u * hn + v], labels[u * hn + w]);
      }
      for (int x : g.neighbors(u)) {
        if (u < x) edges.emplace_back(labels[u * hn + v], labels[x * hn + v]);
      }
    }
  }
  FamilyParams fam{"prod", {}};
  for (const auto& [k, val] : g.family().params) fam.params.emplace_back(g.family().family + "." + k, val);
  for (const auto& [k, val] : h.family().params) fam.params.emplace_back(h.family().family + "." + k, val);
  return detail::graph_from_labels(fam, labels, edges);
}

// ---------------------------------------------------------------------------
// Structure of SG_{n,2}
// ---------------------------------------------------------------------------

inline int p_param(int n) {
  if (n < 2) throw parameter_error("p(n) needs n >= 2");
  return n % 2 != 0 ? n : n - 1;
}

inline int o_param(int n) {
  if (n < 2) throw parameter_error("o(n) needs n >= 2");
  return (n + 1) % 2 == 0 ? (n + 1) / 2 : (n + 2) / 2;
}

enum class VertexClass { alternating_end, bipartite_end, middle };

inline char class_letter(VertexClass c) {
  switch (c) {
    case VertexClass::alternating_end: return 'A';
    case VertexClass::bipartite_end: return 'B';
    case VertexClass::middle: return 'M';
  }
  return '?';
}

struct VertexClassification {
  int n = 0;
  Graph graph;                      // SG_{n,2}
  std::vector<VertexClass> classes;  // indexed like graph vertices

  std::vector<int> members(VertexClass c) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < classes.size(); ++i) {
      if (classes[i] == c) out.push_back(static_cast<int>(i));
    }
    return out;
  }
  std::size_t count(VertexClass c) const {
    return static_cast<std::size_t>(std::count(classes.begin(), classes.end(), c));
  }
};

/// The base alternating pattern {1,3,...,p(n), p(n)+3, p(n)+5, ..., 2n}.
inline std::vector<int> alternating_base_pattern(int n) {
  const int p = p_param(n);
  std::vector<int> s;
  for (int i = 1; i <= p; i += 2) s.push_back(i);
  for (int i = p + 3; i <= 2 * n; i += 2) s.push_back(i);
  return s;
}

/// Splits the vertices of SG_{n,2} into alternating-end, bipartite-end and middle.
inline VertexClassification classify_sg_n2(int n) {
  if (n < 2) throw parameter_error("classify_sg_n2: n must be at least 2");
  const int m = 2 * n + 2;
  VertexClassification out{n, stable_kneser(n, 2), {}};

  std::set<std::uint64_t> orbit;
  const auto base = alternating_base_pattern(n);
  for (int shift = 0; shift < m; ++shift) {
    std::vector<int> rotated;
    for (int x : base) rotated.push_back(detail::mod1(x + shift, m));
    orbit.insert(detail::subset_mask(rotated));
  }
  std::uint64_t odds = 0;
  std::uint64_t evens = 0;
  for (int i = 1; i <= m; ++i) (i % 2 ? odds : evens) |= std::uint64_t{1} << (i - 1);

  for (const auto& label : out.graph.labels()) {
    const auto mask = detail::subset_mask(std::get<SubsetLabel>(label).elements);
    if (orbit.count(mask)) {
      out.classes.push_back(VertexClass::alternating_end);
    } else if (((mask & ~odds) == 0 && mask != odds) || ((mask & ~evens) == 0 && mask != evens)) {
      out.classes.push_back(VertexClass::bipartite_end);
    } else {
      out.classes.push_back(VertexClass::middle);
    }
  }
  return out;
}

}  // namespace indmorse
