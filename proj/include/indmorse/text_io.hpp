#pragma once

#include <cctype>
#include <cstdint>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "indmorse/errors.hpp"
#include "indmorse/graph.hpp"

namespace indmorse::textio {

/// Line-oriented tokenizer that remembers positions for error messages.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  /// Advances to the next non-blank line not starting with '#'. Returns false at EOF.
  bool next() {
    while (std::getline(in_, line_)) {
      ++line_no_;
      if (!line_.empty() && line_.back() == '\r') line_.pop_back();
      pos_ = 0;
      skip_space();
      if (pos_ < line_.size() && line_[pos_] != '#') return true;
    }
    return false;
  }

  bool at_end_of_line() {
    skip_space();
    return pos_ >= line_.size();
  }

  std::string token() {
    skip_space();
    if (pos_ >= line_.size()) fail("unexpected end of line");
    const std::size_t start = pos_;
    int depth = 0;
    while (pos_ < line_.size()) {
      const char c = line_[pos_];
      if (c == '{' || c == '(') ++depth;
      if (c == '}' || c == ')') --depth;
      if (depth == 0 && std::isspace(static_cast<unsigned char>(c))) break;
      ++pos_;
    }
    return line_.substr(start, pos_ - start);
  }

  void expect(std::string_view word) {
    const std::size_t col = mark();
    const auto t = token();
    if (t != word) throw parse_error("expected '" + std::string(word) + "', found '" + t + "'", line_no_, col);
  }

  long long integer() {
    const std::size_t col = mark();
    const auto t = token();
    try {
      std::size_t used = 0;
      const long long v = std::stoll(t, &used);
      if (used != t.size()) throw std::invalid_argument(t);
      return v;
    } catch (const std::exception&) {
      throw parse_error("expected an integer, found '" + t + "'", line_no_, col);
    }
  }

  /// The rest of the line, trimmed on the left.
  std::string rest() {
    skip_space();
    std::string r = line_.substr(pos_);
    pos_ = line_.size();
    return r;
  }

  void expect_end() {
    if (!at_end_of_line()) fail("trailing characters");
  }

  [[noreturn]] void fail(const std::string& what) const { throw parse_error(what, line_no_, column()); }
  [[noreturn]] void fail_at(const std::string& what, std::size_t col) const { throw parse_error(what, line_no_, col); }

  std::size_t line_number() const noexcept { return line_no_; }
  std::size_t column() const noexcept { return pos_ + 1; }

  /// Column of the next token.
  std::size_t mark() {
    skip_space();
    return column();
  }
  void skip_space() {
    while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_]))) ++pos_;
  }

 private:
  std::istream& in_;
  std::string line_;
  std::size_t line_no_ = 0;
  std::size_t pos_ = 0;
};

/// Parses `{1,3,5}` (also `{}`) into sorted integers; returns false if malformed.
inline bool parse_int_set(std::string_view s, std::vector<int>& out) {
  out.clear();
  if (s.size() < 2 || s.front() != '{' || s.back() != '}') return false;
  s = s.substr(1, s.size() - 2);
  if (s.empty()) return true;
  std::size_t i = 0;
  while (i <= s.size()) {
    std::size_t j = s.find(',', i);
    if (j == std::string_view::npos) j = s.size();
    const auto part = s.substr(i, j - i);
    if (part.empty()) return false;
    int v = 0;
    for (char c : part) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
      v = v * 10 + (c - '0');
    }
    out.push_back(v);
    i = j + 1;
    if (j == s.size()) break;
  }
  for (std::size_t k = 1; k < out.size(); ++k) {
    if (out[k] <= out[k - 1]) return false;
  }
  return true;
}

inline std::string int_set_string(const std::vector<int>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s + "}";
}

namespace detail {

inline bool parse_atom(std::string_view s, AtomLabel& out) {
  if (s.empty()) return false;
  if (s.front() == '{') {
    std::vector<int> v;
    if (!parse_int_set(s, v)) return false;
    out = SubsetLabel{v};
    return true;
  }
  std::size_t start = 0;
  char symbol = 0;
  if (std::isalpha(static_cast<unsigned char>(s.front()))) {
    symbol = s.front();
    start = 1;
  }
  if (start >= s.size()) return false;
  long long v = 0;
  for (std::size_t i = start; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    v = v * 10 + (s[i] - '0');
    if (v > 1'000'000'000) return false;
  }
  if (symbol) {
    out = CycleLabel{symbol, static_cast<int>(v)};
  } else {
    out = IntLabel{static_cast<int>(v)};
  }
  return true;
}

}  // namespace detail

/// Inverse of `to_string(VertexLabel)`.
inline bool parse_label(std::string_view s, VertexLabel& out) {
  if (!s.empty() && s.front() == '(') {
    if (s.back() != ')') return false;
    const auto inner = s.substr(1, s.size() - 2);
    int depth = 0;
    for (std::size_t i = 0; i < inner.size(); ++i) {
      const char c = inner[i];
      if (c == '{') ++depth;
      if (c == '}') --depth;
      if (c == ',' && depth == 0) {
        PairLabel p;
        if (!detail::parse_atom(inner.substr(0, i), p.first)) return false;
        if (!detail::parse_atom(inner.substr(i + 1), p.second)) return false;
        out = p;
        return true;
      }
    }
    return false;
  }
  AtomLabel a;
  if (!detail::parse_atom(s, a)) return false;
  out = std::visit([](const auto& v) -> VertexLabel { return v; }, a);
  return true;
}

/// Parses `n=2,k=1` or `-`.
inline bool parse_params(std::string_view s, std::vector<std::pair<std::string, int>>& out) {
  out.clear();
  if (s == "-") return true;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t j = s.find(',', i);
    if (j == std::string_view::npos) j = s.size();
    const auto part = s.substr(i, j - i);
    const auto eq = part.find('=');
    if (eq == std::string_view::npos || eq == 0) return false;
    try {
      std::size_t used = 0;
      const std::string num(part.substr(eq + 1));
      const int v = std::stoi(num, &used);
      if (used != num.size()) return false;
      out.emplace_back(std::string(part.substr(0, eq)), v);
    } catch (const std::exception&) {
      return false;
    }
    i = j + 1;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Graph format
// ---------------------------------------------------------------------------

inline void write_graph(std::ostream& out, const Graph& g) {
  out << "graph " << g.family().family << ' ' << g.family().params_string() << ' ' << g.size() << ' '
      << g.edge_count() << '\n';
  for (std::size_t i = 0; i < g.size(); ++i) out << "v " << i << ' ' << to_string(g.label(static_cast<int>(i))) << '\n';
  for (auto [u, v] : g.edges()) out << "e " << u << ' ' << v << '\n';
}

inline std::string graph_to_string(const Graph& g) {
  std::ostringstream os;
  write_graph(os, g);
  return os.str();
}

inline Graph read_graph(std::istream& in) {
  LineReader r(in);
  if (!r.next()) throw parse_error("empty input, expected a graph header", 1, 1);
  r.expect("graph");
  FamilyParams fam;
  fam.family = r.token();
  {
    const auto col = r.mark();
    const auto p = r.token();
    if (!parse_params(p, fam.params)) r.fail_at("malformed parameter list '" + p + "'", col);
  }
  const auto nv = r.integer();
  const auto ne = r.integer();
  r.expect_end();
  if (nv < 0 || ne < 0) r.fail("negative counts in header");
  std::vector<VertexLabel> labels;
  std::vector<std::pair<int, int>> edges;
  for (long long i = 0; i < nv; ++i) {
    if (!r.next()) throw parse_error("missing vertex lines", r.line_number() + 1, 1);
    r.expect("v");
    const auto idx = r.integer();
    if (idx != i) r.fail("vertex indices must be consecutive from 0");
    const auto col = r.mark();
    const auto t = r.token();
    VertexLabel l;
    if (!parse_label(t, l)) r.fail_at("malformed vertex label '" + t + "'", col);
    r.expect_end();
    labels.push_back(std::move(l));
  }
  for (long long i = 0; i < ne; ++i) {
    if (!r.next()) throw parse_error("missing edge lines", r.line_number() + 1, 1);
    r.expect("e");
    const auto u = r.integer();
    const auto col = r.mark();
    const auto v = r.integer();
    r.expect_end();
    if (u < 0 || v >= nv || u >= v) r.fail_at("edge must satisfy 0 <= i < j < |V|", col);
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  if (r.next()) r.fail("unexpected content after the last edge");
  try {
    Graph g(std::move(fam), std::move(labels), edges);
    if (g.edge_count() != static_cast<std::size_t>(ne)) throw parse_error("duplicate edges", r.line_number(), 1);
    return g;
  } catch (const contract_error& e) {
    throw parse_error(e.what(), r.line_number(), 1);
  }
}

inline Graph graph_from_string(const std::string& s) {
  std::istringstream in(s);
  return read_graph(in);
}

}  // namespace indmorse::textio
