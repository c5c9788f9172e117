#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "indmorse/complex.hpp"
#include "indmorse/morse/matching.hpp"

namespace indmorse {

/// Assignment of every face to a grade of a finite chain.
struct GradeMap {
  std::vector<std::string> chain;  // grade labels, smallest first
  std::vector<int> grade;          // per face id, index into `chain`

  std::vector<char> fiber(int q) const {
    std::vector<char> in(grade.size(), 0);
    for (std::size_t i = 0; i < grade.size(); ++i) in[i] = grade[i] == q;
    return in;
  }
};

/// A cover σ ⊂ τ with grade(σ) > grade(τ).
struct OrderViolation {
  Face lower = 0;
  Face upper = 0;
  int lower_grade = 0;
  int upper_grade = 0;
};

/// First order violation among cover pairs (covers generate the face order).
inline std::optional<OrderViolation> check_order_preserving(const SimplicialComplex& k, const GradeMap& phi) {
  if (phi.grade.size() != k.face_count()) throw contract_error("grade map: size differs from the face count");
  std::optional<OrderViolation> bad;
  k.for_each_cover([&](FaceId a, FaceId b) {
    if (!bad && phi.grade[a] > phi.grade[b]) bad = OrderViolation{k.face(a), k.face(b), phi.grade[a], phi.grade[b]};
  });
  return bad;
}

struct PatchworkReport {
  std::optional<OrderViolation> order_violation;
  /// A pair of M_q with a face outside grade q: (grade, lower, upper).
  std::optional<std::tuple<int, Face, Face>> containment_violation;
  /// Grades whose matching has a cycle inside the fiber.
  std::vector<std::pair<int, AcyclicityResult>> grade_cycles;
  AcyclicityResult global;
  std::optional<PartialMatching> matching;

  bool ok() const {
    return !order_violation && !containment_violation && grade_cycles.empty() && global.acyclic && matching;
  }

  std::string describe(const GradeMap& phi) const {
    if (order_violation) {
      const auto& v = *order_violation;
      return "order violation: " + face_to_string(v.lower) + " (grade " + phi.chain[v.lower_grade] + ") below " +
             face_to_string(v.upper) + " (grade " + phi.chain[v.upper_grade] + ")";
    }
    if (containment_violation) {
      const auto& [q, a, b] = *containment_violation;
      return "pair " + face_to_string(a) + " < " + face_to_string(b) + " of grade " + phi.chain[q] +
             " leaves its fiber";
    }
    if (!grade_cycles.empty()) {
      return "grade " + phi.chain[grade_cycles.front().first] + " matching " + grade_cycles.front().second.describe();
    }
    if (!global.acyclic) return "union " + global.describe();
    return "ok";
  }
};

/// Unions per-grade matchings after checking the grading is order-preserving
/// and each M_q lies in, and is acyclic on, its fiber. Acyclicity of the union
/// is checked again on the full poset.
inline PatchworkReport patchwork_compose(const SimplicialComplex& k, const GradeMap& phi,
                                         const std::vector<std::vector<std::pair<FaceId, FaceId>>>& per_grade) {
  PatchworkReport r;
  r.order_violation = check_order_preserving(k, phi);
  if (r.order_violation) return r;
  PartialMatching all(k);
  for (std::size_t q = 0; q < per_grade.size(); ++q) {
    for (auto [a, b] : per_grade[q]) {
      if (phi.grade[a] != static_cast<int>(q) || phi.grade[b] != static_cast<int>(q)) {
        r.containment_violation = std::make_tuple(static_cast<int>(q), k.face(a), k.face(b));
        return r;
      }
      all.add_pair(a, b);
    }
  }
  for (std::size_t q = 0; q < per_grade.size(); ++q) {
    if (per_grade[q].empty()) continue;
    const auto fiber = phi.fiber(static_cast<int>(q));
    auto res = all.verify_acyclic(&fiber);
    if (!res.acyclic) r.grade_cycles.emplace_back(static_cast<int>(q), std::move(res));
  }
  r.global = all.verify_acyclic();
  r.matching = std::move(all);
  return r;
}

}  // namespace indmorse
