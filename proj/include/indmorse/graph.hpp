#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "indmorse/errors.hpp"

namespace indmorse {

// ---------------------------------------------------------------------------
// Vertex labels
// ---------------------------------------------------------------------------

struct IntLabel {
  int value = 0;
  auto operator<=>(const IntLabel&) const = default;
};

/// A symbol with an index, e.g. `c7` for the cycle vertex c_7 or `a2` in EL_r.
struct CycleLabel {
  char symbol = 'c';
  int index = 0;
  auto operator<=>(const CycleLabel&) const = default;
};

/// A subset of [m], elements strictly increasing.
struct SubsetLabel {
  std::vector<int> elements;
  auto operator<=>(const SubsetLabel&) const = default;
};

using AtomLabel = std::variant<IntLabel, CycleLabel, SubsetLabel>;

/// Vertex of a cartesian product.
struct PairLabel {
  AtomLabel first;
  AtomLabel second;
  auto operator<=>(const PairLabel&) const = default;
};

using VertexLabel = std::variant<IntLabel, CycleLabel, SubsetLabel, PairLabel>;

namespace detail {

inline std::string atom_to_string(const AtomLabel& a) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, IntLabel>) {
          return std::to_string(v.value);
        } else if constexpr (std::is_same_v<T, CycleLabel>) {
          return std::string(1, v.symbol) + std::to_string(v.index);
        } else {
          std::string s = "{";
          for (std::size_t i = 0; i < v.elements.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(v.elements[i]);
          }
          return s + "}";
        }
      },
      a);
}

}  // namespace detail

inline std::string to_string(const VertexLabel& label) {
  if (const auto* p = std::get_if<PairLabel>(&label)) {
    return "(" + detail::atom_to_string(p->first) + "," + detail::atom_to_string(p->second) + ")";
  }
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, PairLabel>) {
          return {};
        } else {
          return detail::atom_to_string(AtomLabel{v});
        }
      },
      label);
}

inline VertexLabel make_int(int v) { return IntLabel{v}; }
inline VertexLabel make_cycle(int i, char symbol = 'c') { return CycleLabel{symbol, i}; }
inline VertexLabel make_subset(std::vector<int> elements) { return SubsetLabel{std::move(elements)}; }

// ---------------------------------------------------------------------------
// Family parameters
// ---------------------------------------------------------------------------

/// Which generator produced a graph, and with which integer parameters.
struct FamilyParams {
  std::string family;
  std::vector<std::pair<std::string, int>> params;

  /// `n=2,k=1`, or `-` when there are no parameters.
  std::string params_string() const {
    if (params.empty()) return "-";
    std::string s;
    for (const auto& [key, value] : params) {
      if (!s.empty()) s += ',';
      s += key + "=" + std::to_string(value);
    }
    return s;
  }

  std::optional<int> get(const std::string& key) const {
    for (const auto& [k, v] : params) {
      if (k == key) return v;
    }
    return std::nullopt;
  }

  std::string id() const {
    if (params.empty()) return family;
    return family + "(" + params_string() + ")";
  }

  bool operator==(const FamilyParams&) const = default;
};

// ---------------------------------------------------------------------------
// Graph
// ---------------------------------------------------------------------------

/// Immutable simple graph with labeled vertices.
///
/// Vertices are addressed by index `0..size()-1`. Adjacency is stored as sorted
/// neighbor lists; graphs with at most 64 vertices additionally carry neighbor
/// bitmasks, which the complex and matching-tree code relies on.
class Graph {
 public:
  static constexpr std::size_t kMaskLimit = 64;

  Graph() = default;

  Graph(FamilyParams family, std::vector<VertexLabel> labels,
        const std::vector<std::pair<int, int>>& edges)
      : family_(std::move(family)), labels_(std::move(labels)), adjacency_(labels_.size()) {
    const int n = static_cast<int>(labels_.size());
    {
      std::vector<VertexLabel> sorted = labels_;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw contract_error("graph: vertex labels must be pairwise distinct");
      }
    }
    for (auto [u, v] : edges) {
      if (u < 0 || v < 0 || u >= n || v >= n) {
        throw contract_error("graph: edge endpoint out of range");
      }
      if (u == v) throw contract_error("graph: self-loop at vertex " + to_string(labels_[u]));
      adjacency_[u].push_back(v);
      adjacency_[v].push_back(u);
    }
    for (auto& nb : adjacency_) {
      std::sort(nb.begin(), nb.end());
      nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
      edge_count_ += nb.size();
    }
    edge_count_ /= 2;
    if (labels_.size() <= kMaskLimit) {
      masks_.assign(labels_.size(), 0);
      for (int u = 0; u < n; ++u) {
        for (int v : adjacency_[u]) masks_[u] |= std::uint64_t{1} << v;
      }
    }
  }

  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }
  bool empty() const noexcept { return labels_.empty(); }

  const FamilyParams& family() const noexcept { return family_; }
  const VertexLabel& label(int v) const { return labels_.at(v); }
  const std::vector<VertexLabel>& labels() const noexcept { return labels_; }

  std::span<const int> neighbors(int v) const { return adjacency_.at(v); }
  std::size_t degree(int v) const { return adjacency_.at(v).size(); }

  bool adjacent(int u, int v) const {
    const auto& nb = adjacency_.at(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  bool has_masks() const noexcept { return !masks_.empty() || labels_.empty(); }

  /// Neighbor set as a bitmask; only for graphs with at most 64 vertices.
  std::uint64_t neighbor_mask(int v) const {
    if (masks_.empty()) throw size_error("graph: bitmask view needs at most 64 vertices", kMaskLimit);
    return masks_[v];
  }

  std::uint64_t all_mask() const {
    if (!has_masks()) throw size_error("graph: bitmask view needs at most 64 vertices", kMaskLimit);
    return size() == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << size()) - 1);
  }

  /// Edges as (i, j) with i < j in lexicographic order.
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(edge_count_);
    for (int u = 0; u < static_cast<int>(size()); ++u) {
      for (int v : adjacency_[u]) {
        if (u < v) out.emplace_back(u, v);
      }
    }
    return out;
  }

  std::optional<int> index_of(const VertexLabel& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i] == label) return static_cast<int>(i);
    }
    return std::nullopt;
  }

  int require_index(const VertexLabel& label) const {
    auto idx = index_of(label);
    if (!idx) throw parameter_error("graph: unknown vertex " + to_string(label));
    return *idx;
  }

 private:
  FamilyParams family_;
  std::vector<VertexLabel> labels_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<std::uint64_t> masks_;
  std::size_t edge_count_ = 0;
};

}  // namespace indmorse
