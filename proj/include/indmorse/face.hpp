#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "indmorse/errors.hpp"

namespace indmorse {

/// A face is a set of vertex indices below 64, stored as a bitmask.
using Face = std::uint64_t;

inline constexpr std::size_t kMaxFaceVertices = 64;

constexpr Face bit(int v) { return Face{1} << v; }
constexpr int face_size(Face f) { return std::popcount(f); }
constexpr int face_dim(Face f) { return std::popcount(f) - 1; }
constexpr bool contains(Face f, int v) { return (f >> v) & 1U; }
constexpr bool is_subset(Face a, Face b) { return (a & ~b) == 0; }

constexpr Face bit_reverse(Face x) {
  x = ((x >> 1) & 0x5555555555555555ULL) | ((x & 0x5555555555555555ULL) << 1);
  x = ((x >> 2) & 0x3333333333333333ULL) | ((x & 0x3333333333333333ULL) << 2);
  x = ((x >> 4) & 0x0F0F0F0F0F0F0F0FULL) | ((x & 0x0F0F0F0F0F0F0F0FULL) << 4);
  x = ((x >> 8) & 0x00FF00FF00FF00FFULL) | ((x & 0x00FF00FF00FF00FFULL) << 8);
  x = ((x >> 16) & 0x0000FFFF0000FFFFULL) | ((x & 0x0000FFFF0000FFFFULL) << 16);
  return (x >> 32) | (x << 32);
}

/// Sort key realizing lexicographic order of the sorted index lists among
/// faces of equal size: a precedes b iff the smallest element of a^b lies in a.
constexpr Face lex_key(Face f) { return ~bit_reverse(f); }

/// Total order on faces: by size, then lexicographically.
struct FaceLess {
  constexpr bool operator()(Face a, Face b) const {
    const int sa = face_size(a);
    const int sb = face_size(b);
    if (sa != sb) return sa < sb;
    return lex_key(a) < lex_key(b);
  }
};

inline std::vector<int> face_indices(Face f) {
  std::vector<int> out;
  out.reserve(face_size(f));
  for (Face m = f; m; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

inline Face face_from_indices(const std::vector<int>& indices) {
  Face f = 0;
  for (int v : indices) {
    if (v < 0 || v >= static_cast<int>(kMaxFaceVertices)) {
      throw contract_error("face: vertex index " + std::to_string(v) + " outside 0..63");
    }
    f |= bit(v);
  }
  return f;
}

/// `{0,2,5}` with 0-based indices.
inline std::string face_to_string(Face f) {
  std::string s = "{";
  bool first = true;
  for (Face m = f; m; m &= m - 1) {
    if (!first) s += ',';
    first = false;
    s += std::to_string(std::countr_zero(m));
  }
  return s + "}";
}

}  // namespace indmorse
