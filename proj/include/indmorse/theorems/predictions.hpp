#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "indmorse/errors.hpp"

namespace indmorse {

enum class Family { cycle, path, el, sg2, e };

inline std::string family_name(Family f) {
  switch (f) {
    case Family::cycle: return "cycle";
    case Family::path: return "path";
    case Family::el: return "el";
    case Family::sg2: return "sg2";
    case Family::e: return "e";
  }
  return {};
}

/// Name of the integer parameter of a family.
inline std::string family_parameter(Family f) {
  switch (f) {
    case Family::el: return "r";
    case Family::sg2: return "k";
    default: return "n";
  }
}

inline std::optional<Family> parse_family(const std::string& s) {
  for (Family f : {Family::cycle, Family::path, Family::el, Family::sg2, Family::e}) {
    if (family_name(f) == s) return f;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Homotopy types
// ---------------------------------------------------------------------------

struct SphereCount {
  int dim = 0;
  std::size_t count = 0;
  bool operator==(const SphereCount&) const = default;
};

/// A wedge of spheres; no spheres means contractible.
struct Prediction {
  std::vector<SphereCount> spheres;

  static Prediction contractible_space() { return {}; }
  static Prediction wedge(int dim, std::size_t count) { return Prediction{{SphereCount{dim, count}}}; }

  bool contractible() const noexcept { return spheres.empty(); }

  /// Reduced Betti number in dimension d.
  std::size_t betti(int d) const {
    std::size_t b = 0;
    for (const auto& s : spheres) {
      if (s.dim == d) b += s.count;
    }
    return b;
  }

  /// `contractible`, `S^2`, `3xS^3`.
  std::string describe() const {
    if (spheres.empty()) return "contractible";
    std::string out;
    for (const auto& s : spheres) {
      if (!out.empty()) out += " v ";
      if (s.count != 1) out += std::to_string(s.count) + "x";
      out += "S^" + std::to_string(s.dim);
    }
    return out;
  }

  bool operator==(const Prediction&) const = default;
};

inline Prediction predict_ind_cycle(int n) {
  if (n < 3) throw parameter_error("predict_ind_cycle: n must be at least 3");
  const int r = (n + 1) / 3;
  return Prediction::wedge(r - 1, n % 3 == 0 ? 2 : 1);
}

/// (k-3)(k-1)(k+4)/6 - 1.
inline long long sg2_sphere_formula(long long k) { return (k - 3) * (k - 1) * (k + 4) / 6 - 1; }

/// C(k+1,3) - (2k-1).
inline long long sg2_critical_formula(long long k) { return (k + 1) * k * (k - 1) / 6 - (2 * k - 1); }

/// Both sides of the count identity, compared without division.
inline bool sg2_formula_identity(long long k) {
  return (k - 3) * (k - 1) * (k + 4) - 6 == (k + 1) * k * (k - 1) - 6 * (2 * k - 1);
}

inline Prediction predict_ind_sg2(int k) {
  if (k < 2) throw parameter_error("predict_ind_sg2: k must be at least 2");
  if (k == 2) return Prediction::wedge(1, 2);
  if (k == 3) return Prediction::wedge(1, 1);
  return Prediction::wedge(2, static_cast<std::size_t>(sg2_sphere_formula(k)));
}

/// The case of n in the E_{2n+2} statement: n = 4k+1, 4k+3 (odd) or 6k, 6k+2, 6k+4 (even).
struct ECase {
  int modulus = 0;  // 4 or 6
  int residue = 0;
  int k = 0;

  std::string describe() const {
    return "n=" + std::to_string(modulus) + "k" + (residue ? "+" + std::to_string(residue) : "") +
           ", k=" + std::to_string(k);
  }
};

/// All five conditions, for checking that exactly one applies.
inline std::vector<ECase> e_cases(int n) {
  std::vector<ECase> out;
  if (n % 2 == 1) {
    for (int res : {1, 3}) {
      if (n % 4 == res) out.push_back({4, res, n / 4});
    }
  } else {
    for (int res : {0, 2, 4}) {
      if (n % 6 == res) out.push_back({6, res, n / 6});
    }
  }
  return out;
}

inline ECase e_case(int n) {
  if (n < 3) throw parameter_error("e_case: n must be at least 3");
  const auto c = e_cases(n);
  if (c.size() != 1) throw contract_error("e_case: n=" + std::to_string(n) + " does not fall in exactly one case");
  return c.front();
}

inline Prediction predict_ind_e(int n) {
  const ECase c = e_case(n);
  const int k = c.k;
  if (c.modulus == 4) return c.residue == 1 ? Prediction::wedge(2 * k + 1, 3) : Prediction::wedge(2 * k + 2, 1);
  switch (c.residue) {
    case 0: return Prediction::wedge(2 * k, 1);
    case 2: return Prediction::wedge(2 * k + 1, 2);
    default: return Prediction::wedge(2 * k + 2, 1);
  }
}

/// Critical cells of the edge-ladder tree: one of size 2k+1 for r = 4k, 4k+1.
inline Prediction predict_ind_el(int r) {
  if (r < 0) throw parameter_error("predict_ind_el: r must be nonnegative");
  if (r % 4 >= 2) return Prediction::contractible_space();
  return Prediction::wedge(2 * (r / 4), 1);
}

/// One cell of size k for n = 3k, of size k+1 for n = 3k+2, none for n = 3k+1.
inline Prediction predict_ind_path(int n) {
  if (n < 1) throw parameter_error("predict_ind_path: n must be at least 1");
  if (n % 3 == 1) return Prediction::contractible_space();
  return Prediction::wedge(n % 3 == 0 ? n / 3 - 1 : n / 3, 1);
}

/// The homotopy type stated for a family member, or nothing for instances
/// outside the stated range (E_{2n+2} with n = 2).
inline std::optional<Prediction> predict(Family f, int p) {
  switch (f) {
    case Family::cycle: return predict_ind_cycle(p);
    case Family::path: return predict_ind_path(p);
    case Family::el: return predict_ind_el(p);
    case Family::sg2: return predict_ind_sg2(p);
    case Family::e:
      if (p == 2) return std::nullopt;
      return predict_ind_e(p);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Critical cells of the explicit constructions
// ---------------------------------------------------------------------------

struct CellCount {
  int size = 0;  // cardinality; dimension is size - 1
  std::size_t count = 0;
  bool operator==(const CellCount&) const = default;
};

struct MorsePrediction {
  std::vector<CellCount> cells;

  std::size_t count_in_dim(int d) const {
    std::size_t c = 0;
    for (const auto& x : cells) {
      if (x.size - 1 == d) c += x.count;
    }
    return c;
  }

  std::size_t total() const {
    std::size_t c = 0;
    for (const auto& x : cells) c += x.count;
    return c;
  }

  /// `none`, `1 of size 3`.
  std::string describe() const {
    if (cells.empty()) return "none";
    std::string out;
    for (const auto& x : cells) {
      if (!out.empty()) out += ", ";
      out += std::to_string(x.count) + " of size " + std::to_string(x.size);
    }
    return out;
  }

  bool operator==(const MorsePrediction&) const = default;
};

namespace detail {
inline MorsePrediction cells(int size, std::size_t count) {
  if (count == 0) return {};
  return MorsePrediction{{CellCount{size, count}}};
}
}  // namespace detail

/// Critical cells of the matching trees and gradings the constructions use:
/// edge ladders, paths and cycles by their lemmas, SG_{2,k} by the explicit
/// grading (k >= 3), E_{2n+2} by the scripted tree.
inline MorsePrediction predict_morse_counts(Family f, int p) {
  switch (f) {
    case Family::el:
      if (p < 0) throw parameter_error("predict_morse_counts: r must be nonnegative");
      return p % 4 >= 2 ? MorsePrediction{} : detail::cells(2 * (p / 4) + 1, 1);
    case Family::path:
      if (p < 1) throw parameter_error("predict_morse_counts: n must be at least 1");
      if (p % 3 == 1) return {};
      return detail::cells(p % 3 == 0 ? p / 3 : p / 3 + 1, 1);
    case Family::cycle:
      if (p < 3) throw parameter_error("predict_morse_counts: n must be at least 3");
      return detail::cells((p + 1) / 3, p % 3 == 0 ? 2 : 1);
    case Family::sg2:
      if (p < 3) throw parameter_error("predict_morse_counts: the SG_{2,k} grading needs k >= 3");
      if (p == 3) return detail::cells(2, 1);
      return detail::cells(3, static_cast<std::size_t>(sg2_critical_formula(p)));
    case Family::e: {
      const ECase c = e_case(p);
      const int k = c.k;
      if (c.modulus == 4) return c.residue == 1 ? detail::cells(2 * k + 2, 3) : detail::cells(2 * k + 3, 1);
      switch (c.residue) {
        case 0: return detail::cells(2 * k + 1, 1);
        case 2: return detail::cells(2 * k + 2, 2);
        default: return detail::cells(2 * k + 3, 1);
      }
    }
  }
  throw parameter_error("predict_morse_counts: unsupported family");
}

}  // namespace indmorse
