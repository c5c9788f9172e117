#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "indmorse/complex.hpp"
#include "indmorse/errors.hpp"
#include "indmorse/morse/matching.hpp"
#include "indmorse/morse/patchwork.hpp"
#include "indmorse/sg2_faces.hpp"

namespace indmorse {

/// A face of Ind(SG_{2,k}) read as a family of pairs: empty, one pair, a
/// star (pairs through a common center), or a triangle.
struct Sg2Shape {
  enum class Kind { empty, pair, star, triangle };
  Kind kind = Kind::empty;
  int center = 0;             // star
  std::vector<int> leaves;    // star, ascending
  std::array<int, 3> elements{};  // pair (first two) or triangle, ascending
};

inline Sg2Shape sg2_shape(const Sg2Vertices& sg, Face f) {
  Sg2Shape s;
  const int n = face_size(f);
  if (n == 0) return s;
  std::vector<std::array<int, 2>> pairs;
  for (Face m = f; m; m &= m - 1) pairs.push_back(sg.elements(std::countr_zero(m)));
  if (n == 1) {
    s.kind = Sg2Shape::Kind::pair;
    s.elements = {std::min(pairs[0][0], pairs[0][1]), std::max(pairs[0][0], pairs[0][1]), 0};
    return s;
  }
  for (int c : pairs[0]) {
    if (std::all_of(pairs.begin(), pairs.end(), [&](const auto& p) { return p[0] == c || p[1] == c; })) {
      s.kind = Sg2Shape::Kind::star;
      s.center = c;
      for (const auto& p : pairs) s.leaves.push_back(p[0] == c ? p[1] : p[0]);
      std::sort(s.leaves.begin(), s.leaves.end());
      return s;
    }
  }
  std::vector<int> el;
  for (const auto& p : pairs) el.insert(el.end(), p.begin(), p.end());
  std::sort(el.begin(), el.end());
  el.erase(std::unique(el.begin(), el.end()), el.end());
  if (n != 3 || el.size() != 3) throw contract_error("sg2_shape: face is neither a star nor a triangle");
  s.kind = Sg2Shape::Kind::triangle;
  s.elements = {el[0], el[1], el[2]};
  return s;
}

/// `{{2,4},{2,5}}`.
inline std::string sg2_face_string(const Sg2Vertices& sg, Face f) {
  std::string s = "{";
  for (Face m = f; m; m &= m - 1) {
    const auto e = sg.elements(std::countr_zero(m));
    if (s.size() > 1) s += ',';
    s += "{" + std::to_string(e[0]) + "," + std::to_string(e[1]) + "}";
  }
  return s + "}";
}

/// Every clause of a case table that a face satisfies; the first one decides.
struct ClauseFinding {
  Face face = 0;
  std::vector<std::pair<int, std::string>> matches;  // (grade, clause)

  bool conflicting() const {
    return std::any_of(matches.begin(), matches.end(), [&](const auto& m) { return m.first != matches.front().first; });
  }
};

namespace detail {

class ClauseSink {
 public:
  explicit ClauseSink(Face f) { finding.face = f; }
  void add(bool hit, int grade, std::string clause) {
    if (hit) finding.matches.emplace_back(grade, std::move(clause));
  }
  ClauseFinding finding;
};

inline bool is_star(const Sg2Shape& s, int center) { return s.kind == Sg2Shape::Kind::star && s.center == center; }
inline bool is_star(const Sg2Shape& s, int center, std::vector<int> leaves) {
  std::sort(leaves.begin(), leaves.end());
  return is_star(s, center) && s.leaves == leaves;
}
inline bool is_pair(const Sg2Shape& s, int a, int b) {
  return s.kind == Sg2Shape::Kind::pair && s.elements[0] == std::min(a, b) && s.elements[1] == std::max(a, b);
}
inline bool is_triangle(const Sg2Shape& s, std::array<int, 3> t) {
  std::sort(t.begin(), t.end());
  return s.kind == Sg2Shape::Kind::triangle && s.elements == t;
}
inline bool within_wheel(const Sg2Shape& s, int i) {
  if (s.kind == Sg2Shape::Kind::pair) return s.elements[0] == i || s.elements[1] == i;
  return is_star(s, i);
}

}  // namespace detail

/// The grading of the face poset of Ind(SG_{2,k}) onto 3 < 4 < ... < k+4.
/// Grade g is returned as g; all clauses are evaluated for the audit.
inline ClauseFinding sg2k_phi_clauses(const Sg2Vertices& sg, Face f) {
  using K = Sg2Shape::Kind;
  using namespace detail;
  const int k = sg.k();
  const int top = k + 4;
  const Sg2Shape s = sg2_shape(sg, f);
  ClauseSink out(f);
  out.add(s.kind == K::empty, 3, "empty face");
  out.add(s.kind != K::empty && within_wheel(s, 1), 3, "inside W_1");
  out.add(s.kind != K::empty && within_wheel(s, 3), 3, "inside W_3");
  for (int j = 4; j < top; ++j) {
    out.add(is_star(s, j, {1, 3}), 3, "{{1,j},{3,j}}");
    out.add(is_triangle(s, {1, 3, j}), 3, "T_{1,3,j}");
  }
  for (int l = 4; l < top; ++l) {
    const bool star_l = is_star(s, l);
    const bool two = s.leaves.size() == 2;
    out.add(is_pair(s, 2, l), l, "{2,l}");
    out.add(is_star(s, l, {1, 2}), l, "{{1,l},{2,l}}");
    out.add(s.kind == K::pair && s.elements[0] == l, l, "{l,j}, l<j");
    out.add(star_l && two && s.leaves[0] > l, l, "{{l,i},{l,j}}, l<i<j");
    out.add(star_l && two && s.leaves[0] < l && s.leaves[1] > l, l, "{{i,l},{l,j}}, i<l<j");
    out.add(star_l && two && s.leaves[0] >= 2 && s.leaves[1] < l, l, "{{i,l},{j,l}}, 2<=i<j<l");
    out.add(star_l && s.leaves.size() >= 3, l, "star at l, r>=3");
    for (int j = l + 1; j <= k + 3; ++j) {
      out.add(is_star(s, j, {1, l}), l, "{{1,j},{l,j}}, l<j<=k+3");
      out.add(is_triangle(s, {1, l, j}), l, "T_{1,l,j}, l<j<=k+3");
    }
  }
  out.add(is_pair(s, 2, top), top, "{2,k+4}");
  out.add(is_star(s, 2), top, "star at 2, r>=2");
  out.add(is_star(s, top), top, "star at k+4, r>=2");
  out.add(s.kind == K::triangle && s.elements[0] != 1, top, "triangle avoiding 1");
  return out.finding;
}

inline int sg2k_phi(const Sg2Vertices& sg, Face f) {
  const auto c = sg2k_phi_clauses(sg, f);
  if (c.matches.empty()) throw contract_error("sg2k_phi: face " + sg2_face_string(sg, f) + " matches no clause");
  return c.matches.front().first;
}

/// The chain b < r_6 < ... < r_{k+3} < m_1 < m_2 < t_2 < s_4 < ... < s_{k+2} < m_3 < m_4 < t_{k+4};
/// for k = 3 without m_1 and m_2.
inline std::vector<std::string> sg2k_psi_chain(int k) {
  std::vector<std::string> c{"b"};
  for (int i = 6; i <= k + 3; ++i) c.push_back("r_" + std::to_string(i));
  if (k >= 4) {
    c.push_back("m_1");
    c.push_back("m_2");
  }
  c.push_back("t_2");
  for (int j = 4; j <= k + 2; ++j) c.push_back("s_" + std::to_string(j));
  c.push_back("m_3");
  c.push_back("m_4");
  c.push_back("t_" + std::to_string(k + 4));
  return c;
}

/// Grading of the top φ-grade. Grades index `sg2k_psi_chain(k)`.
inline ClauseFinding sg2k_psi_clauses(const Sg2Vertices& sg, Face f) {
  using K = Sg2Shape::Kind;
  using namespace detail;
  const int k = sg.k();
  const int top = k + 4;
  const auto chain = sg2k_psi_chain(k);
  auto grade = [&](const std::string& name) {
    return static_cast<int>(std::find(chain.begin(), chain.end(), name) - chain.begin());
  };
  const Sg2Shape s = sg2_shape(sg, f);
  ClauseSink out(f);
  const int b = grade("b");
  out.add(is_pair(s, 2, top), b, "{2,k+4}");
  out.add(is_star(s, 2, {4, top}), b, "{{2,4},{2,k+4}}");
  for (int i = 6; i <= k + 3; ++i) {
    const int g = grade("r_" + std::to_string(i));
    out.add(is_star(s, 2, {4, i}), g, "{{2,4},{2,i}}");
    out.add(is_triangle(s, {2, 4, i}), g, "T_{2,4,i}");
  }
  const bool split_m = k >= 4;
  if (split_m) {
    out.add(is_star(s, 2, {5, 7}), grade("m_1"), "{{2,5},{2,7}}");
    out.add(is_triangle(s, {2, 5, 7}), grade("m_1"), "T_{2,5,7}");
    out.add(is_star(s, 2, {4, 5}), grade("m_2"), "{{2,4},{2,5}}");
    out.add(is_star(s, 2, {4, 5, 7}), grade("m_2"), "{{2,4},{2,5},{2,7}}");
  }
  const int t2 = grade("t_2");
  const bool star2 = is_star(s, 2);
  out.add(star2 && s.leaves.size() == 2 && s.leaves[0] >= 5 && !is_star(s, 2, {5, 7}), t2,
          "{{2,i},{2,j}}, 5<=i<j, except {{2,5},{2,7}}");
  out.add(star2 && s.leaves.size() >= 3 && !is_star(s, 2, {4, 5, 7}), t2,
          "star at 2, r>=3, except {{2,4},{2,5},{2,7}}");
  if (!split_m) {
    out.add(is_star(s, 2, {5, 7}) || is_star(s, 2, {4, 5}) || is_star(s, 2, {4, 5, 7}), t2, "moved in for k=3");
  }
  for (int j = 4; j <= k + 2; ++j) {
    const int g = grade("s_" + std::to_string(j));
    out.add(is_star(s, top, {2, j}), g, "{{2,k+4},{j,k+4}}");
    out.add(is_triangle(s, {2, j, top}), g, "T_{2,j,k+4}");
  }
  out.add(is_star(s, top, {3, 5}), grade("m_3"), "{{3,k+4},{5,k+4}}");
  out.add(is_triangle(s, {3, 5, top}), grade("m_3"), "T_{3,5,k+4}");
  out.add(is_star(s, top, {2, 3}), grade("m_4"), "{{2,k+4},{3,k+4}}");
  out.add(is_star(s, top, {2, 3, 5}), grade("m_4"), "{{2,k+4},{3,k+4},{5,k+4}}");
  const int tt = grade("t_" + std::to_string(top));
  const bool star_top = is_star(s, top);
  out.add(star_top && s.leaves.size() == 2 && s.leaves[0] >= 3 && !is_star(s, top, {3, 5}), tt,
          "{{i,k+4},{j,k+4}}, 3<=i<j, except {{3,k+4},{5,k+4}}");
  out.add(star_top && s.leaves.size() >= 3 && !is_star(s, top, {2, 3, 5}), tt,
          "star at k+4, r>=3, except {{2,k+4},{3,k+4},{5,k+4}}");
  // "Not yet listed" triangles: the catch-all applies only when nothing above did.
  if (out.finding.matches.empty() && s.kind == K::triangle) out.add(true, tt, "remaining triangle");
  return out.finding;
}

/// Index into `sg2k_psi_chain(k)`; the face must lie in the top φ-grade.
inline int sg2k_psi(const Sg2Vertices& sg, Face f) {
  if (sg2k_phi(sg, f) != sg.k() + 4) throw contract_error("sg2k_psi: " + sg2_face_string(sg, f) + " is not in the top grade");
  const auto c = sg2k_psi_clauses(sg, f);
  if (c.matches.empty()) throw contract_error("sg2k_psi: face " + sg2_face_string(sg, f) + " matches no clause");
  if (c.conflicting()) throw contract_error("sg2k_psi: face " + sg2_face_string(sg, f) + " matches two grades");
  return c.matches.front().first;
}

struct Sg2kMatching {
  int k = 0;
  std::shared_ptr<const Sg2Vertices> sg;
  std::shared_ptr<const SimplicialComplex> complex;
  std::vector<std::string> phi_chain;
  std::vector<int> phi;  // per face: grade value 3..k+4
  std::vector<std::string> psi_chain;
  std::vector<int> psi;  // per face: index into psi_chain, -1 outside the top φ-grade
  std::vector<ClauseFinding> unclassified;  // no clause matched
  std::vector<ClauseFinding> overlaps;      // several clauses matched
  std::optional<OrderViolation> phi_order;
  std::optional<OrderViolation> psi_order;
  GradeMap combined;  // φ refined by ψ on the top grade
  PatchworkReport patchwork;
  std::vector<std::string> grade_problems;  // per-grade matching deviations
  std::vector<Face> critical;
  std::vector<Face> expected_critical;

  bool partition_ok() const { return unclassified.empty() && !std::any_of(overlaps.begin(), overlaps.end(), [](const auto& o) { return o.conflicting(); }); }
  bool order_ok() const { return !phi_order && !psi_order; }
  bool ok() const {
    return partition_ok() && order_ok() && patchwork.ok() && grade_problems.empty() && critical == expected_critical;
  }
  const PartialMatching& matching() const { return *patchwork.matching; }
};

/// {T_{i,j,h} : i<j<h, none equal to 1} minus the cells paired off in ψ's
/// singleton grades; for k = 3 the single cell {{2,4},{2,5}}.
inline std::vector<Face> sg2k_expected_critical(const Sg2Vertices& sg) {
  const int k = sg.k();
  std::vector<Face> out;
  if (k == 3) {
    out.push_back(sg.pair_face(2, 4) | sg.pair_face(2, 5));
    return out;
  }
  const int m = k + 4;
  std::vector<Face> s;
  for (int j = 6; j <= k + 3; ++j) s.push_back(sg2_triangle(sg, 2, 4, j));
  for (int j = 4; j <= k + 2; ++j) s.push_back(sg2_triangle(sg, 2, j, m));
  s.push_back(sg2_triangle(sg, 3, 5, m));
  s.push_back(sg2_triangle(sg, 2, 5, 7));
  for (int i = 2; i <= m; ++i) {
    for (int j = i + 1; j <= m; ++j) {
      for (int h = j + 1; h <= m; ++h) {
        const Face t = sg2_triangle(sg, i, j, h);
        if (t && std::find(s.begin(), s.end(), t) == s.end()) out.push_back(t);
      }
    }
  }
  std::sort(out.begin(), out.end(), FaceLess{});
  return out;
}

/// The explicit acyclic matching on Ind(SG_{2,k}), k >= 3, with its audit:
/// M_l toggles {1,l} on φ-grade l < k+4; on the top grade, ψ's two-face
/// grades are paired directly, t_2 toggles {2,4} and t_{k+4} toggles {2,k+4}.
inline Sg2kMatching sg2k_matching(int k, std::size_t face_budget = kDefaultFaceBudget) {
  if (k < 3) throw parameter_error("sg2k_matching: k must be at least 3");
  Sg2kMatching r;
  r.k = k;
  r.sg = std::make_shared<const Sg2Vertices>(k);
  const Sg2Vertices& sg = *r.sg;
  r.complex = std::make_shared<const SimplicialComplex>(independence_complex(sg.graph(), face_budget));
  const SimplicialComplex& cx = *r.complex;
  const std::size_t nf = cx.face_count();
  const int top = k + 4;

  for (int g = 3; g <= top; ++g) r.phi_chain.push_back(std::to_string(g));
  r.psi_chain = sg2k_psi_chain(k);
  r.phi.assign(nf, 0);
  r.psi.assign(nf, -1);
  for (FaceId id = 0; id < nf; ++id) {
    const Face f = cx.face(id);
    auto c = sg2k_phi_clauses(sg, f);
    if (c.matches.empty()) {
      r.unclassified.push_back(std::move(c));
      continue;
    }
    r.phi[id] = c.matches.front().first;
    if (c.matches.size() > 1) r.overlaps.push_back(c);
    if (r.phi[id] != top) continue;
    auto p = sg2k_psi_clauses(sg, f);
    if (p.matches.empty()) {
      r.unclassified.push_back(std::move(p));
      continue;
    }
    r.psi[id] = p.matches.front().first;
    if (p.matches.size() > 1) r.overlaps.push_back(std::move(p));
  }
  if (!r.unclassified.empty()) return r;

  cx.for_each_cover([&](FaceId a, FaceId b) {
    if (!r.phi_order && r.phi[a] > r.phi[b]) r.phi_order = OrderViolation{cx.face(a), cx.face(b), r.phi[a], r.phi[b]};
    if (!r.psi_order && r.psi[a] >= 0 && r.psi[b] >= 0 && r.psi[a] > r.psi[b]) {
      r.psi_order = OrderViolation{cx.face(a), cx.face(b), r.psi[a], r.psi[b]};
    }
  });

  // Combined chain: 3 < ... < k+3 < (top grade refined by ψ).
  for (int g = 3; g < top; ++g) r.combined.chain.push_back(std::to_string(g));
  for (const auto& c : r.psi_chain) r.combined.chain.push_back(std::to_string(top) + "/" + c);
  r.combined.grade.resize(nf);
  for (FaceId id = 0; id < nf; ++id) {
    r.combined.grade[id] = r.phi[id] < top ? r.phi[id] - 3 : (top - 3) + r.psi[id];
  }

  std::vector<std::vector<std::pair<FaceId, FaceId>>> per_grade(r.combined.chain.size());
  std::vector<std::vector<FaceId>> members(r.combined.chain.size());
  for (FaceId id = 0; id < nf; ++id) members[r.combined.grade[id]].push_back(id);
  auto toggle_grade = [&](int q, Face x, bool must_cover) {
    for (FaceId id : members[q]) {
      const Face f = cx.face(id);
      if (f & x) continue;
      const auto up = cx.find(f | x);
      if (up && r.combined.grade[*up] == q) {
        per_grade[q].emplace_back(id, *up);
      } else if (must_cover) {
        r.grade_problems.push_back("grade " + r.combined.chain[q] + ": " + sg2_face_string(sg, f) + " has no partner");
      }
    }
  };
  for (int l = 3; l < top; ++l) toggle_grade(l - 3, sg.pair_face(1, l), true);
  for (std::size_t c = 0; c < r.psi_chain.size(); ++c) {
    const int q = (top - 3) + static_cast<int>(c);
    const std::string& name = r.psi_chain[c];
    if (name == "t_2") {
      toggle_grade(q, sg.pair_face(2, 4), false);
    } else if (name == "t_" + std::to_string(top)) {
      toggle_grade(q, sg.pair_face(2, top), false);
    } else {
      const auto& ms = members[q];
      if (ms.size() == 2 && is_subset(cx.face(ms[0]), cx.face(ms[1])) &&
          face_size(cx.face(ms[1])) == face_size(cx.face(ms[0])) + 1) {
        per_grade[q].emplace_back(ms[0], ms[1]);
      } else {
        r.grade_problems.push_back("grade " + r.combined.chain[q] + " holds " + std::to_string(ms.size()) +
                                   " faces, not a cover pair");
      }
    }
  }
  r.patchwork = patchwork_compose(cx, r.combined, per_grade);
  if (r.patchwork.matching) {
    r.critical = r.patchwork.matching->critical_faces();
    std::sort(r.critical.begin(), r.critical.end(), FaceLess{});
  }
  r.expected_critical = sg2k_expected_critical(sg);
  return r;
}

}  // namespace indmorse
