#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <queue>
#include <utility>
#include <vector>

#include "indmorse/errors.hpp"
#include "indmorse/homology/integer_matrix.hpp"

namespace indmorse {

namespace detail {

struct Overflow {};

inline long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline long long checked_sub(long long a, long long b) {
  long long r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline mpz_class checked_mul(const mpz_class& a, const mpz_class& b) { return a * b; }
inline mpz_class checked_sub(const mpz_class& a, const mpz_class& b) { return a - b; }

inline bool is_unit(long long a) { return a == 1 || a == -1; }
inline bool is_unit(const mpz_class& a) { return a == 1 || a == -1; }

inline long long gcd_abs(long long a, long long b) {
  if (a == INT64_MIN || b == INT64_MIN) throw Overflow{};
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b) {
    const long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}
inline mpz_class gcd_abs(const mpz_class& a, const mpz_class& b) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline mpz_class to_mpz(long long v) { return mpz_class(std::to_string(v)); }
inline mpz_class to_mpz(const mpz_class& v) { return v; }

template <class T>
T from_int64(std::int64_t v) {
  if constexpr (std::is_same_v<T, mpz_class>) {
    return to_mpz(static_cast<long long>(v));
  } else {
    return static_cast<T>(v);
  }
}

/// Sparse elimination on the lines (matrix columns) of an integer matrix.
///
/// Unit pivots are taken first, chosen by a Markowitz-style rule: the position
/// (matrix row) met by the fewest lines, then the shortest line with a unit
/// there. Unit pivots are unimodular, so they preserve invariant factors.
template <class T>
class SparseEliminator {
 public:
  struct Line {
    std::vector<std::uint32_t> pos;
    std::vector<T> val;
  };

  SparseEliminator(const IntegerMatrix& m, const std::vector<char>* skip_lines) : rows_(m.rows()) {
    lines_.resize(m.cols());
    pos_count_.assign(rows_, 0);
    pos_lines_.resize(rows_);
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (skip_lines && (*skip_lines)[j]) continue;
      auto& line = lines_[j];
      for (const auto& [r, v] : m.column(j)) {
        line.pos.push_back(r);
        line.val.push_back(from_int64<T>(v));
        ++pos_count_[r];
        pos_lines_[r].push_back(static_cast<std::uint32_t>(j));
      }
    }
    alive_.assign(m.cols(), 1);
  }

  /// Runs unit pivots to exhaustion. Returns the pivot positions.
  std::vector<std::uint32_t> unit_phase() { return run(false); }

  /// Continues with fraction-free non-unit pivots; valid for the rank only.
  std::vector<std::uint32_t> rational_phase() { return run(true); }

  std::size_t rank() const noexcept { return rank_; }

  /// Remaining nonzero lines, for a dense finish.
  std::vector<const Line*> remainder() const {
    std::vector<const Line*> out;
    for (std::size_t j = 0; j < lines_.size(); ++j) {
      if (alive_[j] && !lines_[j].pos.empty()) out.push_back(&lines_[j]);
    }
    return out;
  }

 private:
  using HeapItem = std::pair<std::uint32_t, std::uint32_t>;  // (count, position)

  static int find(const Line& l, std::uint32_t p) {
    auto it = std::lower_bound(l.pos.begin(), l.pos.end(), p);
    return it != l.pos.end() && *it == p ? static_cast<int>(it - l.pos.begin()) : -1;
  }

  void push(std::uint32_t p) {
    if (pos_count_[p] > 0) heap_.emplace(pos_count_[p], p);
  }

  std::vector<std::uint32_t> run(bool allow_nonunit) {
    std::vector<std::uint32_t> pivots;
    while (true) {
      heap_ = {};
      for (std::uint32_t p = 0; p < rows_; ++p) push(p);
      bool progressed = false;
      while (!heap_.empty()) {
        const auto [count, p] = heap_.top();
        heap_.pop();
        if (count != pos_count_[p] || count == 0) continue;
        const auto lines = live_lines(p);
        int best = -1;
        for (std::uint32_t j : lines) {
          const int k = find(lines_[j], p);
          const auto& v = lines_[j].val[k];
          const bool ok = allow_nonunit || is_unit(v);
          if (!ok) continue;
          if (best < 0 || lines_[j].pos.size() < lines_[best].pos.size()) best = static_cast<int>(j);
        }
        if (best < 0) continue;
        eliminate(static_cast<std::uint32_t>(best), p, lines, allow_nonunit);
        pivots.push_back(p);
        progressed = true;
      }
      if (!progressed) break;
      // Values can turn into units without a count change; sweep again.
      if (!allow_nonunit && !has_unit_entry()) break;
      if (allow_nonunit && remainder().empty()) break;
    }
    return pivots;
  }

  bool has_unit_entry() const {
    for (std::size_t j = 0; j < lines_.size(); ++j) {
      if (!alive_[j]) continue;
      for (const auto& v : lines_[j].val) {
        if (is_unit(v)) return true;
      }
    }
    return false;
  }

  std::vector<std::uint32_t> live_lines(std::uint32_t p) {
    auto& ls = pos_lines_[p];
    std::sort(ls.begin(), ls.end());
    ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
    std::erase_if(ls, [&](std::uint32_t j) { return !alive_[j] || find(lines_[j], p) < 0; });
    return ls;
  }

  void eliminate(std::uint32_t piv, std::uint32_t p, const std::vector<std::uint32_t>& lines, bool fraction_free) {
    const Line& pivot = lines_[piv];
    const T pv = pivot.val[find(pivot, p)];
    for (std::uint32_t j : lines) {
      if (j == piv) continue;
      Line& target = lines_[j];
      const T a = target.val[find(target, p)];
      // target <- s*target - t*pivot with the p entry cancelling.
      T s;
      T t;
      if (fraction_free) {
        const T g = gcd_abs(pv, a);
        s = pv / g;
        t = a / g;
      } else {
        s = T(1);
        t = checked_mul(a, pv);  // pv = ±1, so pv^-1 = pv
      }
      combine(j, s, t, pivot);
      if (fraction_free) normalize(target);
    }
    for (std::uint32_t q : pivot.pos) {
      --pos_count_[q];
      push(q);
    }
    alive_[piv] = 0;
    lines_[piv] = Line{};
    ++rank_;
  }

  void combine(std::uint32_t j, const T& s, const T& t, const Line& pivot) {
    Line& target = lines_[j];
    Line out;
    out.pos.reserve(target.pos.size() + pivot.pos.size());
    out.val.reserve(target.pos.size() + pivot.pos.size());
    std::size_t i = 0;
    std::size_t k = 0;
    const bool scale = !(s == 1);
    while (i < target.pos.size() || k < pivot.pos.size()) {
      if (k == pivot.pos.size() || (i < target.pos.size() && target.pos[i] < pivot.pos[k])) {
        out.pos.push_back(target.pos[i]);
        out.val.push_back(scale ? checked_mul(s, target.val[i]) : target.val[i]);
        ++i;
      } else if (i == target.pos.size() || pivot.pos[k] < target.pos[i]) {
        const std::uint32_t q = pivot.pos[k];
        out.pos.push_back(q);
        out.val.push_back(checked_sub(T(0), checked_mul(t, pivot.val[k])));
        ++pos_count_[q];
        pos_lines_[q].push_back(j);
        push(q);
        ++k;
      } else {
        const std::uint32_t q = target.pos[i];
        const T lhs = scale ? checked_mul(s, target.val[i]) : target.val[i];
        T v = checked_sub(lhs, checked_mul(t, pivot.val[k]));
        if (v == 0) {
          --pos_count_[q];
          push(q);
        } else {
          out.pos.push_back(q);
          out.val.push_back(std::move(v));
        }
        ++i;
        ++k;
      }
    }
    target = std::move(out);
  }

  static void normalize(Line& l) {
    if (l.val.empty()) return;
    T g = T(0);
    for (const auto& v : l.val) {
      g = gcd_abs(g, v);
      if (g == 1) return;
    }
    for (auto& v : l.val) v /= g;
  }

  std::size_t rows_;
  std::vector<Line> lines_;
  std::vector<char> alive_;
  std::vector<std::uint32_t> pos_count_;
  std::vector<std::vector<std::uint32_t>> pos_lines_;
  std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>> heap_;
  std::size_t rank_ = 0;
};

/// Invariant factors of a dense matrix, |d_1| | |d_2| | ...
inline std::vector<mpz_class> dense_smith_factors(std::vector<std::vector<mpz_class>> a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<mpz_class> factors;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    while (true) {
      // Smallest nonzero magnitude in the trailing block becomes the pivot.
      std::size_t pr = rows;
      std::size_t pc = cols;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          if (a[i][j] != 0 && (pr == rows || abs(a[i][j]) < abs(a[pr][pc]))) {
            pr = i;
            pc = j;
          }
        }
      }
      if (pr == rows) return factors;
      std::swap(a[t], a[pr]);
      for (auto& row : a) std::swap(row[t], row[pc]);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        const mpz_class q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        const mpz_class q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // Enforce divisibility of the trailing block by the pivot.
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (a[i][j] % a[t][t] != 0) {
            bad = i;
            break;
          }
        }
      }
      if (bad == rows) break;
      for (std::size_t j = t; j < cols; ++j) a[t][j] += a[bad][j];
    }
    factors.push_back(abs(a[t][t]));
  }
  return factors;
}

template <class T>
std::vector<std::vector<mpz_class>> remainder_to_dense(const std::vector<const typename SparseEliminator<T>::Line*>& rem,
                                                       std::size_t dense_limit) {
  std::vector<std::uint32_t> positions;
  for (const auto* l : rem) positions.insert(positions.end(), l->pos.begin(), l->pos.end());
  std::sort(positions.begin(), positions.end());
  positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
  if (rem.size() * positions.size() > dense_limit) {
    throw size_error("smith normal form: dense remainder too large", dense_limit);
  }
  std::vector<std::vector<mpz_class>> dense(rem.size(), std::vector<mpz_class>(positions.size(), 0));
  for (std::size_t i = 0; i < rem.size(); ++i) {
    for (std::size_t k = 0; k < rem[i]->pos.size(); ++k) {
      const auto c = std::lower_bound(positions.begin(), positions.end(), rem[i]->pos[k]) - positions.begin();
      dense[i][c] = to_mpz(rem[i]->val[k]);
    }
  }
  return dense;
}

}  // namespace detail

inline constexpr std::size_t kDenseRemainderLimit = 4'000'000;

struct EliminationResult {
  std::size_t rank = 0;
  /// Invariant factors when computed over the integers (empty in rational mode).
  std::vector<mpz_class> factors;
  /// Matrix rows used as unit pivots; these may be cleared from the next boundary.
  std::vector<std::uint32_t> unit_pivot_rows;
  /// All pivot rows, including non-unit ones (rational mode).
  std::vector<std::uint32_t> pivot_rows;
  bool used_big_integers = false;
};

enum class EliminationMode { rational_rank, smith };

namespace detail {

template <class T>
EliminationResult eliminate(const IntegerMatrix& m, EliminationMode mode, const std::vector<char>* skip_columns) {
  SparseEliminator<T> e(m, skip_columns);
  EliminationResult out;
  out.unit_pivot_rows = e.unit_phase();
  out.pivot_rows = out.unit_pivot_rows;
  const std::size_t units = e.rank();
  if (mode == EliminationMode::rational_rank) {
    const auto more = e.rational_phase();
    out.pivot_rows.insert(out.pivot_rows.end(), more.begin(), more.end());
    out.rank = e.rank();
    return out;
  }
  out.factors.assign(units, mpz_class(1));
  const auto rest = dense_smith_factors(remainder_to_dense<T>(e.remainder(), kDenseRemainderLimit));
  out.factors.insert(out.factors.end(), rest.begin(), rest.end());
  out.rank = out.factors.size();
  return out;
}

}  // namespace detail

/// Rank or Smith normal form of `m`; machine integers first, GMP on overflow.
/// Columns flagged in `skip_columns` are ignored.
inline EliminationResult eliminate(const IntegerMatrix& m, EliminationMode mode,
                                   const std::vector<char>* skip_columns = nullptr) {
  try {
    return detail::eliminate<long long>(m, mode, skip_columns);
  } catch (const detail::Overflow&) {
    auto r = detail::eliminate<mpz_class>(m, mode, skip_columns);
    r.used_big_integers = true;
    return r;
  }
}

/// Nonzero invariant factors d_1 | d_2 | ... | d_r.
inline std::vector<mpz_class> smith_normal_form(const IntegerMatrix& m) {
  return eliminate(m, EliminationMode::smith).factors;
}

inline std::size_t rational_rank(const IntegerMatrix& m) { return eliminate(m, EliminationMode::rational_rank).rank; }

}  // namespace indmorse
