#pragma once

#include <cstdint>
#include <gmpxx.h>
#include <algorithm>
#include <utility>
#include <vector>

#include "indmorse/errors.hpp"

namespace indmorse {

inline constexpr std::size_t kDefaultEntryBudget = 50'000'000;

/// Column-major sparse integer matrix. Stored entries are machine integers;
/// elimination promotes to arbitrary precision when needed.
class IntegerMatrix {
 public:
  using Entry = std::pair<std::uint32_t, std::int64_t>;
  using Column = std::vector<Entry>;

  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols, std::size_t entry_budget = kDefaultEntryBudget)
      : rows_(rows), columns_(cols), budget_(entry_budget) {}

  static IntegerMatrix from_dense(const std::vector<std::vector<long long>>& dense) {
    const std::size_t r = dense.size();
    const std::size_t c = r ? dense[0].size() : 0;
    IntegerMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (dense[i].size() != c) throw contract_error("matrix: ragged dense input");
      for (std::size_t j = 0; j < c; ++j) {
        if (dense[i][j] != 0) m.columns_[j].emplace_back(static_cast<std::uint32_t>(i), dense[i][j]);
      }
    }
    for (auto& col : m.columns_) m.entries_ += col.size();
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return columns_.size(); }
  std::size_t entry_count() const noexcept { return entries_; }

  /// Replaces column j; entries are sorted, zeros dropped, duplicates summed.
  void set_column(std::size_t j, Column col) {
    std::sort(col.begin(), col.end());
    Column clean;
    for (const auto& [r, v] : col) {
      if (r >= rows_) throw contract_error("matrix: row index out of range");
      if (!clean.empty() && clean.back().first == r) {
        clean.back().second += v;
      } else {
        clean.emplace_back(r, v);
      }
    }
    std::erase_if(clean, [](const Entry& e) { return e.second == 0; });
    entries_ = entries_ - columns_.at(j).size() + clean.size();
    if (entries_ > budget_) throw size_error("matrix: entry budget exceeded", budget_);
    columns_[j] = std::move(clean);
  }

  const Column& column(std::size_t j) const { return columns_.at(j); }

  std::int64_t at(std::size_t i, std::size_t j) const {
    const auto& col = columns_.at(j);
    auto it = std::lower_bound(col.begin(), col.end(), Entry{static_cast<std::uint32_t>(i), INT64_MIN});
    return it != col.end() && it->first == i ? it->second : 0;
  }

  std::vector<std::vector<long long>> to_dense() const {
    std::vector<std::vector<long long>> d(rows_, std::vector<long long>(cols(), 0));
    for (std::size_t j = 0; j < cols(); ++j) {
      for (const auto& [r, v] : columns_[j]) d[r][j] = v;
    }
    return d;
  }

  /// Reorders rows and columns: new row i is old row row_perm[i], likewise columns.
  IntegerMatrix permuted(const std::vector<std::uint32_t>& row_perm, const std::vector<std::uint32_t>& col_perm) const {
    std::vector<std::uint32_t> inv(rows_);
    for (std::uint32_t i = 0; i < row_perm.size(); ++i) inv[row_perm[i]] = i;
    IntegerMatrix m(rows_, cols(), budget_);
    for (std::size_t j = 0; j < cols(); ++j) {
      Column c;
      for (const auto& [r, v] : columns_[col_perm[j]]) c.emplace_back(inv[r], v);
      m.set_column(j, std::move(c));
    }
    return m;
  }

  /// True iff this * rhs is the zero matrix, computed with arbitrary precision.
  bool product_is_zero(const IntegerMatrix& rhs) const {
    if (cols() != rhs.rows()) throw contract_error("matrix: dimension mismatch in product");
    std::vector<mpz_class> acc(rows_);
    std::vector<std::uint32_t> touched;
    for (std::size_t j = 0; j < rhs.cols(); ++j) {
      touched.clear();
      for (const auto& [k, b] : rhs.column(j)) {
        for (const auto& [i, a] : columns_[k]) {
          if (acc[i] == 0) touched.push_back(i);
          acc[i] += mpz_class(static_cast<long>(a)) * static_cast<long>(b);
        }
      }
      for (auto i : touched) {
        if (acc[i] != 0) return false;
      }
      for (auto i : touched) acc[i] = 0;
    }
    return true;
  }

 private:
  std::size_t rows_ = 0;
  std::vector<Column> columns_;
  std::size_t entries_ = 0;
  std::size_t budget_ = kDefaultEntryBudget;
};

}  // namespace indmorse
