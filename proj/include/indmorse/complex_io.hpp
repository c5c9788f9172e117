#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "indmorse/complex.hpp"
#include "indmorse/text_io.hpp"

namespace indmorse::textio {

/// `complex <|V|> <#maximal faces>` followed by one `f {i,j,...}` line per maximal face.
inline void write_complex(std::ostream& out, const SimplicialComplex& k) {
  const auto maximal = k.maximal_faces();
  out << "complex " << k.vertex_count() << ' ' << maximal.size() << '\n';
  for (Face f : maximal) out << "f " << face_to_string(f) << '\n';
}

inline std::string complex_to_string(const SimplicialComplex& k) {
  std::ostringstream os;
  write_complex(os, k);
  return os.str();
}

/// Reads the maximal-face form and closes it downward. Vertices are labeled 0..|V|-1.
inline SimplicialComplex read_complex(std::istream& in, std::size_t face_budget = kDefaultFaceBudget) {
  LineReader r(in);
  if (!r.next()) throw parse_error("empty input, expected a complex header", 1, 1);
  r.expect("complex");
  const auto nv = r.integer();
  const auto nf = r.integer();
  r.expect_end();
  if (nv < 0 || nf < 0) r.fail("negative counts in header");
  if (nv > static_cast<long long>(kMaxFaceVertices)) r.fail("complexes are limited to 64 vertices");
  std::vector<Face> gens;
  for (long long i = 0; i < nf; ++i) {
    if (!r.next()) throw parse_error("missing face lines", r.line_number() + 1, 1);
    r.expect("f");
    const auto col = r.mark();
    const auto t = r.token();
    std::vector<int> idx;
    if (!parse_int_set(t, idx)) r.fail_at("malformed face '" + t + "'", col);
    for (int v : idx) {
      if (v >= nv) r.fail_at("face uses vertex " + std::to_string(v) + " outside 0.." + std::to_string(nv - 1), col);
    }
    r.expect_end();
    gens.push_back(face_from_indices(idx));
  }
  if (r.next()) r.fail("unexpected content after the last face");
  std::vector<VertexLabel> labels;
  for (long long i = 0; i < nv; ++i) labels.push_back(make_int(static_cast<int>(i)));
  return complex_from_generators(std::move(labels), gens, face_budget);
}

inline SimplicialComplex complex_from_string(const std::string& s, std::size_t face_budget = kDefaultFaceBudget) {
  std::istringstream in(s);
  return read_complex(in, face_budget);
}

}  // namespace indmorse::textio
