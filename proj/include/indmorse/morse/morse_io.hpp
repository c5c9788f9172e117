#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "indmorse/complex.hpp"
#include "indmorse/errors.hpp"
#include "indmorse/morse/matching.hpp"
#include "indmorse/morse/matching_tree.hpp"
#include "indmorse/text_io.hpp"

namespace indmorse {

namespace detail {

inline std::string face_labels(const std::vector<VertexLabel>& labels, Face f) {
  std::string s = "{";
  for (Face m = f; m; m &= m - 1) {
    if (s.size() > 1) s += ',';
    s += to_string(labels[std::countr_zero(m)]);
  }
  return s + "}";
}

/// Splits `{x,y,...}` at top-level commas; false if the braces are unbalanced.
inline bool split_label_set(std::string_view s, std::vector<std::string_view>& out) {
  if (s.size() < 2 || s.front() != '{' || s.back() != '}') return false;
  s = s.substr(1, s.size() - 2);
  out.clear();
  if (s.empty()) return true;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '{' || c == '(') ++depth;
    if (c == '}' || c == ')') --depth;
    if (depth < 0) return false;
    if (c == ',' && depth == 0) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  out.push_back(s.substr(start));
  return depth == 0;
}

inline int read_vertex(textio::LineReader& r, const std::vector<VertexLabel>& labels, std::string_view tok,
                       std::size_t col) {
  VertexLabel l;
  if (!textio::parse_label(tok, l)) r.fail_at("malformed vertex label '" + std::string(tok) + "'", col);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == l) return static_cast<int>(i);
  }
  r.fail_at("unknown vertex '" + std::string(tok) + "'", col);
}

inline Face read_face(textio::LineReader& r, const std::vector<VertexLabel>& labels) {
  const std::size_t col = r.mark();
  const std::string tok = r.token();
  std::vector<std::string_view> parts;
  if (!split_label_set(tok, parts)) r.fail_at("malformed face '" + tok + "'", col);
  Face f = 0;
  for (auto p : parts) {
    const int v = read_vertex(r, labels, p, col);
    if (f & bit(v)) r.fail_at("repeated vertex in '" + tok + "'", col);
    f |= bit(v);
  }
  return f;
}

}  // namespace detail

/// One step per line: `at <path> split <v>`, `at <path> match <v> via <p>`,
/// `at <path> free <p>`, vertices by label. A note follows as `# ...`.
inline void write_script(std::ostream& out, const Graph& g, const TreeProgram& program) {
  for (const auto& line : program) {
    out << "at " << line.path << ' ' << step_to_string(g, line.step);
    if (!line.note.empty()) out << " # " << line.note;
    out << '\n';
  }
}

inline std::string script_to_string(const Graph& g, const TreeProgram& program) {
  std::ostringstream s;
  write_script(s, g, program);
  return s.str();
}

inline TreeProgram read_script(std::istream& in, const Graph& g) {
  textio::LineReader r(in);
  TreeProgram program;
  const auto vertex = [&] {
    const std::size_t col = r.mark();
    return detail::read_vertex(r, g.labels(), r.token(), col);
  };
  while (r.next()) {
    r.expect("at");
    ScriptLine line;
    line.path = r.token();
    if (line.path != "." && line.path.find_first_not_of("LR") != std::string::npos) r.fail("malformed node path");
    const std::size_t col = r.mark();
    const std::string kind = r.token();
    if (kind == "split") {
      line.step = TreeStep::split(vertex());
    } else if (kind == "free") {
      line.step = TreeStep::free_vertex(vertex());
    } else if (kind == "match") {
      const int v = vertex();
      r.expect("via");
      line.step = TreeStep::match(v, vertex());
    } else {
      r.fail_at("unknown step '" + kind + "'", col);
    }
    if (!r.at_end_of_line()) {
      r.expect("#");
      line.note = r.rest();
    }
    program.push_back(std::move(line));
  }
  return program;
}

inline TreeProgram script_from_string(const std::string& text, const Graph& g) {
  std::istringstream s(text);
  return read_script(s, g);
}

/// `pair <lower> <upper>` lines by lower face, then `critical` and one
/// unmatched face per line, in face order.
inline void write_matching(std::ostream& out, const PartialMatching& m) {
  const auto& k = m.complex();
  for (FaceId id = 0; id < k.face_count(); ++id) {
    const auto up = m.up(id);
    if (!up) continue;
    out << "pair " << detail::face_labels(k.vertices(), k.face(id)) << ' '
        << detail::face_labels(k.vertices(), k.face(*up)) << '\n';
  }
  out << "critical\n";
  for (FaceId id : m.critical()) out << detail::face_labels(k.vertices(), k.face(id)) << '\n';
}

inline std::string matching_to_string(const PartialMatching& m) {
  std::ostringstream s;
  write_matching(s, m);
  return s.str();
}

/// Reads a matching on `k`; the critical block must list exactly the unmatched faces.
inline PartialMatching read_matching(std::istream& in, const SimplicialComplex& k) {
  textio::LineReader r(in);
  PartialMatching m(k);
  const auto id = [&](Face f, std::size_t col) {
    const auto i = k.find(f);
    if (!i) r.fail_at("not a face of the complex", col);
    return *i;
  };
  bool critical = false;
  std::vector<FaceId> listed;
  while (r.next()) {
    if (!critical) {
      const std::size_t col = r.mark();
      const std::string word = r.token();
      if (word == "critical") {
        r.expect_end();
        critical = true;
        continue;
      }
      if (word != "pair") r.fail_at("expected 'pair' or 'critical', found '" + word + "'", col);
      const std::size_t ca = r.mark();
      const FaceId a = id(detail::read_face(r, k.vertices()), ca);
      const std::size_t cb = r.mark();
      const FaceId b = id(detail::read_face(r, k.vertices()), cb);
      r.expect_end();
      try {
        m.add_pair(a, b);
      } catch (const contract_error& e) {
        r.fail_at(e.what(), ca);
      }
    } else {
      const std::size_t col = r.mark();
      listed.push_back(id(detail::read_face(r, k.vertices()), col));
      r.expect_end();
    }
  }
  if (!critical) throw parse_error("matching: missing 'critical' block", r.line_number(), 1);
  if (listed != m.critical()) throw parse_error("matching: critical block differs from the unmatched faces", r.line_number(), 1);
  return m;
}

inline PartialMatching matching_from_string(const std::string& text, const SimplicialComplex& k) {
  std::istringstream s(text);
  return read_matching(s, k);
}

}  // namespace indmorse
