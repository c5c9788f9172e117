#pragma once

#include <array>
#include <vector>

#include "indmorse/errors.hpp"
#include "indmorse/face.hpp"
#include "indmorse/families.hpp"
#include "indmorse/graph.hpp"

namespace indmorse {

/// Vertex lookup for SG_{2,k}: stable pairs {a,b} of [k+4].
class Sg2Vertices {
 public:
  explicit Sg2Vertices(int k) : k_(k), m_(k + 4), graph_(stable_kneser(2, k)), index_((m_ + 1) * (m_ + 1), -1) {
    for (int v = 0; v < static_cast<int>(graph_.size()); ++v) {
      const auto& e = std::get<SubsetLabel>(graph_.label(v)).elements;
      index_[e[0] * (m_ + 1) + e[1]] = v;
      index_[e[1] * (m_ + 1) + e[0]] = v;
    }
  }

  int k() const noexcept { return k_; }
  int m() const noexcept { return m_; }
  const Graph& graph() const noexcept { return graph_; }

  /// Index of the pair {a,b} with a,b taken mod k+4; -1 if the pair is not stable.
  int find(int a, int b) const {
    a = detail::mod1(a, m_);
    b = detail::mod1(b, m_);
    return index_[a * (m_ + 1) + b];
  }

  int at(int a, int b) const {
    const int v = find(a, b);
    if (v < 0) {
      throw contract_error("SG_{2," + std::to_string(k_) + "}: {" + std::to_string(a) + "," + std::to_string(b) +
                           "} is not a stable pair");
    }
    return v;
  }

  Face pair_face(int a, int b) const { return bit(at(a, b)); }

  /// The two elements of vertex v.
  std::array<int, 2> elements(int v) const {
    const auto& e = std::get<SubsetLabel>(graph_.label(v)).elements;
    return {e[0], e[1]};
  }

 private:
  int k_;
  int m_;
  Graph graph_;
  std::vector<int> index_;
};

struct Sg2Wheel {
  int center;
  Face face;
};

struct Sg2Triangle {
  std::array<int, 3> elements;
  Face face;
};

struct Sg2MaximalFaces {
  std::vector<Sg2Wheel> wheels;
  std::vector<Sg2Triangle> triangles;

  std::vector<Face> all() const {
    std::vector<Face> out;
    for (const auto& w : wheels) out.push_back(w.face);
    for (const auto& t : triangles) out.push_back(t.face);
    return out;
  }
};

/// Triangle T_{i,j,h} = {{i,j},{i,h},{j,h}}, or 0 if some pair is not stable.
inline Face sg2_triangle(const Sg2Vertices& sg, int i, int j, int h) {
  const int a = sg.find(i, j);
  const int b = sg.find(i, h);
  const int c = sg.find(j, h);
  if (a < 0 || b < 0 || c < 0) return 0;
  return bit(a) | bit(b) | bit(c);
}

/// Wheels W_i (all stable pairs through i) and stable triangles, as faces of Ind(SG_{2,k}).
inline Sg2MaximalFaces wheels_and_triangles(const Sg2Vertices& sg) {
  if (sg.k() < 2) throw parameter_error("wheels_and_triangles: k must be at least 2");
  Sg2MaximalFaces out;
  const int m = sg.m();
  for (int i = 1; i <= m; ++i) {
    Face w = 0;
    for (int j = 1; j <= m; ++j) {
      if (j != i && sg.find(i, j) >= 0) w |= bit(sg.find(i, j));
    }
    out.wheels.push_back({i, w});
  }
  for (int i = 1; i <= m; ++i) {
    for (int j = i + 1; j <= m; ++j) {
      for (int h = j + 1; h <= m; ++h) {
        if (Face t = sg2_triangle(sg, i, j, h)) out.triangles.push_back({{i, j, h}, t});
      }
    }
  }
  return out;
}

inline Sg2MaximalFaces wheels_and_triangles(int k) { return wheels_and_triangles(Sg2Vertices(k)); }

}  // namespace indmorse
