#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "indmorse/complex.hpp"
#include "indmorse/homology/elimination.hpp"
#include "indmorse/homology/integer_matrix.hpp"

namespace indmorse {

inline constexpr std::size_t kDefaultSnfFaceThreshold = 200'000;

/// ∂_d : C_d → C_{d-1} in the face order of `k`; ∂_0 maps every vertex to ∅.
inline IntegerMatrix boundary_matrix(const SimplicialComplex& k, int d,
                                     std::size_t entry_budget = kDefaultEntryBudget) {
  const auto cols = k.faces_of_dim(d);
  const auto rows = k.faces_of_dim(d - 1);
  IntegerMatrix m(rows.size(), cols.size(), entry_budget);
  if (d < 0) return m;
  const FaceId row_base = k.size_begin(d);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const Face f = cols[j];
    IntegerMatrix::Column col;
    int position = 0;
    for (Face rest = f; rest; rest &= rest - 1, ++position) {
      const Face facet = f & ~(rest & -rest);
      col.emplace_back(k.id_of(facet) - row_base, position % 2 == 0 ? 1 : -1);
    }
    m.set_column(j, std::move(col));
  }
  return m;
}

/// All boundary maps ∂_0 .. ∂_top of the reduced chain complex.
struct ChainComplex {
  std::vector<IntegerMatrix> boundaries;  // boundaries[d] = ∂_d

  /// ∂_{d-1} ∘ ∂_d = 0 for every d.
  bool is_chain_complex() const {
    for (std::size_t d = 1; d < boundaries.size(); ++d) {
      if (!boundaries[d - 1].product_is_zero(boundaries[d])) return false;
    }
    return true;
  }
};

inline ChainComplex boundary_matrices(const SimplicialComplex& k, std::size_t entry_budget = kDefaultEntryBudget) {
  ChainComplex c;
  for (int d = 0; d <= k.dimension(); ++d) c.boundaries.push_back(boundary_matrix(k, d, entry_budget));
  return c;
}

struct HomologyGroup {
  int dim = 0;
  std::size_t betti = 0;
  std::vector<mpz_class> torsion;
};

/// Reduced integral homology in dimensions -1 .. dim(K).
struct HomologyResult {
  std::vector<HomologyGroup> groups;
  bool torsion_computed = false;

  std::size_t betti(int d) const {
    for (const auto& g : groups) {
      if (g.dim == d) return g.betti;
    }
    return 0;
  }

  std::vector<mpz_class> torsion(int d) const {
    for (const auto& g : groups) {
      if (g.dim == d) return g.torsion;
    }
    return {};
  }

  bool torsion_free() const {
    for (const auto& g : groups) {
      if (!g.torsion.empty()) return false;
    }
    return true;
  }

  /// 1 + Σ_{d ≥ -1} (-1)^d β̃_d, which equals the unreduced Euler characteristic
  /// of any complex containing the empty face.
  long long euler_from_betti() const {
    long long chi = 1;
    for (const auto& g : groups) chi += (g.dim % 2 == 0 ? 1 : -1) * static_cast<long long>(g.betti);
    return chi;
  }

  /// Betti numbers indexed by d + 1.
  std::vector<std::size_t> betti_vector() const {
    std::vector<std::size_t> out;
    for (const auto& g : groups) out.push_back(g.betti);
    return out;
  }
};

struct HomologyOptions {
  /// Full Smith normal form (torsion) only up to this many faces.
  std::size_t snf_face_threshold = kDefaultSnfFaceThreshold;
  std::size_t entry_budget = kDefaultEntryBudget;
};

/// Reduced homology. Betti numbers come from ranks computed top-down, where
/// rows pivoted in ∂_{d+1} are dropped from the columns of ∂_d: they span a
/// complement of im ∂_{d+1} ⊆ ker ∂_d, so the rank (and, for unit pivots, the
/// lattice im ∂_d) is unchanged.
inline HomologyResult homology(const SimplicialComplex& k, const HomologyOptions& opt = {}) {
  HomologyResult out;
  const int top = k.dimension();
  const bool smith = k.face_count() <= opt.snf_face_threshold;
  out.torsion_computed = smith;
  const auto mode = smith ? EliminationMode::smith : EliminationMode::rational_rank;

  std::vector<std::size_t> rank(static_cast<std::size_t>(top + 2), 0);  // rank[d] = rank ∂_d
  std::vector<std::vector<mpz_class>> torsion(static_cast<std::size_t>(top + 2));
  std::vector<char> cleared;
  for (int d = top; d >= 0; --d) {
    const auto m = boundary_matrix(k, d, opt.entry_budget);
    const auto r = eliminate(m, mode, cleared.empty() ? nullptr : &cleared);
    rank[d] = r.rank;
    for (const auto& f : r.factors) {
      if (f > 1) torsion[d].push_back(f);
    }
    cleared.assign(m.rows(), 0);
    for (auto row : smith ? r.unit_pivot_rows : r.pivot_rows) cleared[row] = 1;
  }
  for (int d = -1; d <= top; ++d) {
    HomologyGroup g;
    g.dim = d;
    const std::size_t next = d + 1 <= top ? rank[d + 1] : 0;
    const std::size_t here = d >= 0 ? rank[d] : 0;
    g.betti = k.faces_of_dim(d).size() - here - next;
    // Torsion of H_d is the non-unit part of coker ∂_{d+1}.
    if (d + 1 <= top) g.torsion = torsion[d + 1];
    out.groups.push_back(std::move(g));
  }
  return out;
}

/// `homology <id> dim=<d> betti=<b> torsion=[...]`, one row per dimension.
inline std::string homology_rows(const std::string& id, const HomologyResult& h) {
  std::string s;
  for (const auto& g : h.groups) {
    s += "homology " + id + " dim=" + std::to_string(g.dim) + " betti=" + std::to_string(g.betti) + " torsion=[";
    for (std::size_t i = 0; i < g.torsion.size(); ++i) {
      if (i) s += ',';
      s += g.torsion[i].get_str();
    }
    s += "]";
    if (!h.torsion_computed) s += " torsion_checked=no";
    s += '\n';
  }
  return s;
}

}  // namespace indmorse
