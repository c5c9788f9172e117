#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_set>
#include <utility>
#include <vector>

#include "indmorse/errors.hpp"
#include "indmorse/face.hpp"
#include "indmorse/graph.hpp"

namespace indmorse {

inline constexpr std::size_t kDefaultFaceBudget = 2'000'000;

using FaceId = std::uint32_t;

/// Counts f_{-1}, f_0, f_1, ...; `counts[d + 1]` is the number of d-faces.
struct FVector {
  std::vector<std::size_t> counts;

  std::size_t at_dim(int d) const {
    const auto i = static_cast<std::size_t>(d + 1);
    return d >= -1 && i < counts.size() ? counts[i] : 0;
  }
  int top_dim() const { return static_cast<int>(counts.size()) - 2; }
  std::size_t total() const {
    std::size_t t = 0;
    for (auto c : counts) t += c;
    return t;
  }
  bool operator==(const FVector&) const = default;
};

/// Finite simplicial complex with every face stored, the empty face included.
///
/// Faces are kept sorted by size and then lexicographically, so a face id is
/// its rank in that order and lookups are binary searches.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  /// `faces` must be downward closed; it is sorted and deduplicated here.
  SimplicialComplex(std::vector<VertexLabel> vertices, std::vector<Face> faces)
      : vertices_(std::move(vertices)), faces_(std::move(faces)) {
    if (vertices_.size() > kMaxFaceVertices) {
      throw size_error("complex: at most 64 vertices supported", kMaxFaceVertices);
    }
    std::sort(faces_.begin(), faces_.end(), FaceLess{});
    faces_.erase(std::unique(faces_.begin(), faces_.end()), faces_.end());
    const Face universe = vertices_.size() == 64 ? ~Face{0} : (bit(static_cast<int>(vertices_.size())) - 1);
    int top = -1;
    for (Face f : faces_) {
      if (f & ~universe) throw contract_error("complex: face " + face_to_string(f) + " uses an unknown vertex");
      top = std::max(top, face_size(f));
    }
    offsets_.assign(static_cast<std::size_t>(top + 2), 0);
    for (Face f : faces_) ++offsets_[face_size(f) + 1];
    for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
  }

  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  const std::vector<VertexLabel>& vertices() const noexcept { return vertices_; }

  std::size_t face_count() const noexcept { return faces_.size(); }
  bool is_void() const noexcept { return faces_.empty(); }
  Face face(FaceId id) const { return faces_[id]; }
  const std::vector<Face>& faces() const noexcept { return faces_; }

  /// Largest face size present, or -1 for the void complex.
  int max_size() const noexcept { return static_cast<int>(offsets_.size()) - 2; }
  int dimension() const noexcept { return max_size() - 1; }

  FaceId size_begin(int size) const {
    if (size < 0) return 0;
    if (size > max_size()) return static_cast<FaceId>(faces_.size());
    return static_cast<FaceId>(offsets_[size]);
  }
  FaceId size_end(int size) const { return size_begin(size + 1); }

  std::span<const Face> faces_of_size(int size) const {
    return {faces_.data() + size_begin(size), faces_.data() + size_end(size)};
  }
  std::span<const Face> faces_of_dim(int d) const { return faces_of_size(d + 1); }

  std::optional<FaceId> find(Face f) const {
    const int s = face_size(f);
    if (s > max_size()) return std::nullopt;
    const auto first = faces_.begin() + size_begin(s);
    const auto last = faces_.begin() + size_end(s);
    const auto it = std::lower_bound(first, last, f, [](Face a, Face b) { return lex_key(a) < lex_key(b); });
    if (it == last || *it != f) return std::nullopt;
    return static_cast<FaceId>(it - faces_.begin());
  }

  bool contains_face(Face f) const { return find(f).has_value(); }

  FaceId id_of(Face f) const {
    auto id = find(f);
    if (!id) throw contract_error("complex: " + face_to_string(f) + " is not a face");
    return *id;
  }

  FVector f_vector() const {
    FVector fv;
    for (int s = 0; s <= max_size(); ++s) fv.counts.push_back(size_end(s) - size_begin(s));
    return fv;
  }

  /// Faces with no proper superset in the complex, in face order.
  std::vector<Face> maximal_faces() const {
    std::vector<char> covered(faces_.size(), 0);
    for (FaceId id = 0; id < faces_.size(); ++id) {
      const Face f = faces_[id];
      for (Face m = f; m; m &= m - 1) {
        if (auto facet = find(f & ~(m & -m))) covered[*facet] = 1;
      }
    }
    std::vector<Face> out;
    for (FaceId id = 0; id < faces_.size(); ++id) {
      if (!covered[id]) out.push_back(faces_[id]);
    }
    return out;
  }

  /// True iff every facet of every face is present.
  bool is_downward_closed() const {
    for (Face f : faces_) {
      for (Face m = f; m; m &= m - 1) {
        if (!find(f & ~(m & -m))) return false;
      }
    }
    return true;
  }

  /// Visits every cover pair (face, coface), grouped by coface in face order and
  /// then by facet in face order.
  template <class Visit>
  void for_each_cover(Visit&& visit) const {
    std::vector<FaceId> facets;
    for (FaceId id = 0; id < faces_.size(); ++id) {
      const Face f = faces_[id];
      facets.clear();
      for (Face m = f; m; m &= m - 1) facets.push_back(id_of(f & ~(m & -m)));
      std::sort(facets.begin(), facets.end());
      for (FaceId lower : facets) visit(lower, id);
    }
  }

 private:
  std::vector<VertexLabel> vertices_;
  std::vector<Face> faces_;
  std::vector<std::size_t> offsets_;
};

/// χ = Σ_{d ≥ 0} (-1)^d f_d, the unreduced Euler characteristic.
inline long long euler_characteristic(const SimplicialComplex& k) {
  long long chi = 0;
  const auto fv = k.f_vector();
  for (int d = 0; d <= fv.top_dim(); ++d) chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(fv.at_dim(d));
  return chi;
}

inline FVector f_vector(const SimplicialComplex& k) { return k.f_vector(); }

inline std::vector<std::pair<FaceId, FaceId>> cover_pairs(const SimplicialComplex& k) {
  std::vector<std::pair<FaceId, FaceId>> out;
  k.for_each_cover([&](FaceId a, FaceId b) { out.emplace_back(a, b); });
  return out;
}

namespace detail {

inline void require_mask_graph(const Graph& g) {
  if (!g.has_masks()) throw size_error("complex: graph has more than 64 vertices", kMaxFaceVertices);
}

}  // namespace detail

/// Independent sets of `g` (∅ included), by ordered backtracking.
inline SimplicialComplex independence_complex(const Graph& g, std::size_t face_budget = kDefaultFaceBudget) {
  detail::require_mask_graph(g);
  const int n = static_cast<int>(g.size());
  std::vector<Face> faces;
  auto add = [&](Face f) {
    if (faces.size() >= face_budget) {
      throw size_error("independence complex of " + g.family().id() + " exceeds the face budget", face_budget);
    }
    faces.push_back(f);
  };
  // Each independent set is extended only by vertices above its largest element.
  std::vector<std::pair<Face, Face>> stack{{0, g.all_mask()}};
  while (!stack.empty()) {
    auto [face, allowed] = stack.back();
    stack.pop_back();
    add(face);
    for (Face m = allowed; m; m &= m - 1) {
      const int v = std::countr_zero(m);
      const Face above = v + 1 >= n ? 0 : (allowed & ~(bit(v + 1) - 1));
      stack.emplace_back(face | bit(v), above & ~g.neighbor_mask(v));
    }
  }
  return SimplicialComplex(g.labels(), std::move(faces));
}

/// Downward closure of `generators` over a vertex universe.
inline SimplicialComplex complex_from_generators(std::vector<VertexLabel> vertices, const std::vector<Face>& generators,
                                                 std::size_t face_budget = kDefaultFaceBudget) {
  std::unordered_set<Face> seen;
  std::vector<Face> faces;
  auto add = [&](Face f) {
    if (!seen.insert(f).second) return false;
    if (faces.size() >= face_budget) throw size_error("complex: downward closure exceeds the face budget", face_budget);
    faces.push_back(f);
    return true;
  };
  if (!generators.empty()) add(0);
  for (Face gen : generators) {
    if (face_size(gen) > 40) throw size_error("complex: generator too large to close downward", face_budget);
    // Walk all subsets of gen; stop descending below subsets already present.
    std::vector<Face> stack{gen};
    while (!stack.empty()) {
      const Face f = stack.back();
      stack.pop_back();
      if (!add(f)) continue;
      for (Face m = f; m; m &= m - 1) stack.push_back(f & ~(m & -m));
    }
  }
  return SimplicialComplex(std::move(vertices), std::move(faces));
}

/// Complex generated by the open neighborhoods N(v).
inline SimplicialComplex neighborhood_complex(const Graph& g, std::size_t face_budget = kDefaultFaceBudget) {
  detail::require_mask_graph(g);
  std::vector<Face> gens;
  for (int v = 0; v < static_cast<int>(g.size()); ++v) gens.push_back(g.neighbor_mask(v));
  return complex_from_generators(g.labels(), gens, face_budget);
}

}  // namespace indmorse
