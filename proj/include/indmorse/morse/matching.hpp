#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "indmorse/complex.hpp"
#include "indmorse/errors.hpp"
#include "indmorse/face.hpp"

namespace indmorse {

/// Outcome of an acyclicity check. A cycle is listed as b_1, d(b_1), b_2,
/// d(b_2), ..., where d(b_i) is matched with b_i and d(b_i) ⊂ b_{i+1} (cyclically).
struct AcyclicityResult {
  bool acyclic = true;
  std::vector<Face> cycle;

  std::string describe() const {
    if (acyclic) return "acyclic";
    std::string s = "cycle:";
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      s += ' ';
      s += face_to_string(cycle[i]);
      if (i + 1 < cycle.size()) s += i % 2 == 0 ? " >" : " <";
    }
    return s + " < " + face_to_string(cycle.front());
  }
};

/// A set of disjoint cover pairs on the face poset of a complex. The complex
/// must outlive the matching.
class PartialMatching {
 public:
  static constexpr std::int64_t kUnmatched = -1;

  explicit PartialMatching(const SimplicialComplex& k) : k_(&k), partner_(k.face_count(), kUnmatched) {}

  static PartialMatching from_pairs(const SimplicialComplex& k, const std::vector<std::pair<FaceId, FaceId>>& pairs) {
    PartialMatching m(k);
    for (auto [a, b] : pairs) m.add_pair(a, b);
    return m;
  }

  static PartialMatching from_face_pairs(const SimplicialComplex& k, const std::vector<std::pair<Face, Face>>& pairs) {
    PartialMatching m(k);
    for (auto [a, b] : pairs) m.add_pair(k.id_of(a), k.id_of(b));
    return m;
  }

  /// Adds (lower, upper); rejects non-covers and faces already matched.
  void add_pair(FaceId lower, FaceId upper) {
    if (lower >= partner_.size() || upper >= partner_.size()) throw contract_error("matching: face id out of range");
    const Face a = k_->face(lower);
    const Face b = k_->face(upper);
    if (!is_subset(a, b) || face_size(b) != face_size(a) + 1) {
      throw contract_error("matching: " + face_to_string(a) + " is not covered by " + face_to_string(b));
    }
    for (FaceId f : {lower, upper}) {
      if (partner_[f] != kUnmatched) {
        throw contract_error("matching: face " + face_to_string(k_->face(f)) + " occurs in two pairs");
      }
    }
    partner_[lower] = upper;
    partner_[upper] = lower;
    ++pairs_;
    verified_.reset();
  }

  const SimplicialComplex& complex() const noexcept { return *k_; }
  std::size_t pair_count() const noexcept { return pairs_; }

  bool is_matched(FaceId f) const { return partner_.at(f) != kUnmatched; }

  std::optional<FaceId> partner(FaceId f) const {
    const auto p = partner_.at(f);
    if (p == kUnmatched) return std::nullopt;
    return static_cast<FaceId>(p);
  }

  /// Partner id when `f` is matched with a larger face.
  std::optional<FaceId> up(FaceId f) const {
    const auto p = partner_.at(f);
    if (p == kUnmatched || static_cast<FaceId>(p) < f) return std::nullopt;
    return static_cast<FaceId>(p);
  }

  /// Pairs (lower, upper) ordered by the lower face.
  std::vector<std::pair<FaceId, FaceId>> pairs() const {
    std::vector<std::pair<FaceId, FaceId>> out;
    out.reserve(pairs_);
    for (FaceId f = 0; f < partner_.size(); ++f) {
      if (auto u = up(f)) out.emplace_back(f, *u);
    }
    return out;
  }

  std::vector<FaceId> critical() const {
    std::vector<FaceId> out;
    for (FaceId f = 0; f < partner_.size(); ++f) {
      if (partner_[f] == kUnmatched) out.push_back(f);
    }
    return out;
  }

  std::vector<Face> critical_faces() const {
    std::vector<Face> out;
    for (FaceId f : critical()) out.push_back(k_->face(f));
    return out;
  }

  /// Checks acyclicity (optionally on the subposet flagged in `within`) and,
  /// for the full poset, caches the verdict for `morse_summary`.
  AcyclicityResult verify_acyclic(const std::vector<char>* within = nullptr) const;

  const std::optional<AcyclicityResult>& verification() const noexcept { return verified_; }

 private:
  const SimplicialComplex* k_;
  std::vector<std::int64_t> partner_;
  std::size_t pairs_ = 0;
  mutable std::optional<AcyclicityResult> verified_;
};

inline AcyclicityResult PartialMatching::verify_acyclic(const std::vector<char>* within) const {
  const SimplicialComplex& k = *k_;
  const std::size_t n = k.face_count();
  auto inside = [&](FaceId f) { return within == nullptr || (*within)[f]; };
  // Vertices of the digraph are faces matched upward (inside the subposet);
  // σ → σ' whenever σ' ≠ σ is a facet of the partner of σ.
  auto active = [&](FaceId f) {
    if (!inside(f)) return false;
    auto u = up(f);
    return u && inside(*u);
  };
  std::vector<char> color(n, 0);  // 0 new, 1 on stack, 2 done
  struct Frame {
    FaceId face;
    Face upper;
    Face remaining;  // vertices of `upper` still to try
  };
  AcyclicityResult result;
  std::vector<Frame> stack;
  for (FaceId s = 0; s < n && result.acyclic; ++s) {
    if (color[s] || !active(s)) continue;
    color[s] = 1;
    stack.push_back({s, k.face(*up(s)), k.face(*up(s))});
    while (!stack.empty() && result.acyclic) {
      Frame& top = stack.back();
      if (!top.remaining) {
        color[top.face] = 2;
        stack.pop_back();
        continue;
      }
      const Face low = top.remaining & -top.remaining;
      top.remaining &= top.remaining - 1;
      const Face facet = top.upper & ~low;
      auto id = k.find(facet);
      if (!id || *id == top.face || !active(*id)) continue;
      if (color[*id] == 1) {
        // Cycle σ_j → ... → σ_top → σ_j along the stack.
        std::vector<FaceId> chain;
        for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
          chain.push_back(it->face);
          if (it->face == *id) break;
        }
        // Listed from the top of the stack, each face lies in the partner of the next.
        result.acyclic = false;
        for (FaceId f : chain) {
          result.cycle.push_back(k.face(*up(f)));
          result.cycle.push_back(k.face(f));
        }
        break;
      }
      if (color[*id] == 0) {
        color[*id] = 1;
        const Face u = k.face(*up(*id));
        stack.push_back({*id, u, u});
      }
    }
  }
  if (within == nullptr) verified_ = result;
  return result;
}

inline AcyclicityResult verify_acyclic(const PartialMatching& m) { return m.verify_acyclic(); }

/// Critical-cell counts per dimension.
struct MorseSummary {
  std::vector<std::size_t> critical_by_dim;  // index d + 1, d ≥ -1
  bool empty_face_matched = false;
  std::size_t pair_count = 0;
  std::size_t face_count = 0;

  std::size_t count(int d) const {
    const auto i = static_cast<std::size_t>(d + 1);
    return d >= -1 && i < critical_by_dim.size() ? critical_by_dim[i] : 0;
  }

  std::size_t total_critical() const {
    std::size_t t = 0;
    for (auto c : critical_by_dim) t += c;
    return t;
  }

  /// The dimension holding every critical cell, when there is exactly one.
  std::optional<int> single_dimension() const {
    std::optional<int> d;
    for (std::size_t i = 0; i < critical_by_dim.size(); ++i) {
      if (critical_by_dim[i] == 0) continue;
      if (d) return std::nullopt;
      d = static_cast<int>(i) - 1;
    }
    return d;
  }

  bool operator==(const MorseSummary&) const = default;
};

/// Summary of a matching whose full-poset acyclicity has been verified.
inline MorseSummary morse_summary(const PartialMatching& m) {
  const auto& v = m.verification();
  if (!v) throw contract_error("morse_summary: matching has not been verified acyclic");
  if (!v->acyclic) throw contract_error("morse_summary: matching is not acyclic (" + v->describe() + ")");
  const auto& k = m.complex();
  MorseSummary s;
  s.critical_by_dim.assign(static_cast<std::size_t>(std::max(k.max_size(), 0) + 1), 0);
  for (FaceId f : m.critical()) ++s.critical_by_dim[face_size(k.face(f))];
  while (!s.critical_by_dim.empty() && s.critical_by_dim.back() == 0) s.critical_by_dim.pop_back();
  s.empty_face_matched = !k.is_void() && m.is_matched(0);
  s.pair_count = m.pair_count();
  s.face_count = k.face_count();
  return s;
}

}  // namespace indmorse
