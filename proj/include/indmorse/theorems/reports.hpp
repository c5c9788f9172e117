#pragma once

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "indmorse/theorems/verify.hpp"

namespace indmorse {

namespace detail {

inline std::string betti_row(const HomologyResult& h) {
  std::string s;
  for (const auto& g : h.groups) {
    if (!s.empty()) s += ',';
    s += std::to_string(g.dim) + ":" + std::to_string(g.betti);
  }
  return s;
}

inline std::string torsion_row(const HomologyResult& h) {
  if (!h.torsion_computed) return "unchecked";
  std::string s;
  for (const auto& g : h.groups) {
    for (const auto& t : g.torsion) {
      if (!s.empty()) s += ',';
      s += std::to_string(g.dim) + ":" + t.get_str();
    }
  }
  return s.empty() ? "none" : s;
}

inline std::string critical_row(const MorseSummary& s) {
  std::string out;
  for (int d = -1; d + 1 < static_cast<int>(s.critical_by_dim.size()); ++d) {
    if (!out.empty()) out += ',';
    out += std::to_string(d) + ":" + std::to_string(s.count(d));
  }
  return out.empty() ? "none" : out;
}

}  // namespace detail

/// Machine-readable `key=value` lines for one instance.
inline std::string report_block(const VerificationReport& r) {
  std::ostringstream o;
  o << "instance=" << r.instance << '\n';
  o << "family=" << family_name(r.family) << '\n';
  o << family_parameter(r.family) << '=' << r.param << '\n';
  o << "vertices=" << r.vertices << '\n';
  o << "edges=" << r.edges << '\n';
  if (r.f_vector) {
    o << "faces=" << r.f_vector->total() << '\n';
    o << "f_vector=";
    for (std::size_t i = 0; i < r.f_vector->counts.size(); ++i) o << (i ? "," : "") << r.f_vector->counts[i];
    o << '\n';
  }
  o << "prediction=" << (r.prediction ? r.prediction->describe() : "none") << '\n';
  if (r.expected_cells) o << "expected_cells=" << r.expected_cells->describe() << '\n';
  if (!r.construction.empty()) o << "construction=" << r.construction << '\n';
  if (r.morse) {
    o << "critical=" << detail::critical_row(*r.morse) << '\n';
    o << "empty_face_matched=" << (r.morse->empty_face_matched ? "yes" : "no") << '\n';
  }
  if (r.homology) {
    o << "betti=" << detail::betti_row(*r.homology) << '\n';
    o << "torsion=" << detail::torsion_row(*r.homology) << '\n';
  }
  for (const auto& c : r.checks) o << "check." << c.name << '=' << verdict_name(c.verdict) << " (" << c.detail << ")\n";
  if (r.budget_exhausted) o << "budget_exhausted=" << *r.budget_exhausted << '\n';
  o << "verdict=" << verdict_name(r.verdict()) << '\n';
  return o.str();
}

inline std::string report_blocks(const std::vector<VerificationReport>& rs) {
  std::string s;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (i) s += '\n';
    s += report_block(rs[i]);
  }
  return s;
}

/// Human-readable table, one row per instance.
inline std::string summary_table(const std::vector<VerificationReport>& rs) {
  struct Row {
    std::string instance, prediction, morse, homology, verdict;
  };
  std::vector<Row> rows{{"instance", "prediction", "critical cells", "reduced betti", "verdict"}};
  for (const auto& r : rs) {
    Row row{r.instance, r.prediction ? r.prediction->describe() : "none", "-", "-", verdict_name(r.verdict())};
    if (r.morse) row.morse = detail::cells_string(*r.morse);
    if (r.homology) row.homology = detail::betti_string(*r.homology);
    if (r.budget_exhausted) row.verdict += " (budget)";
    rows.push_back(std::move(row));
  }
  std::size_t w[5] = {0, 0, 0, 0, 0};
  for (const auto& row : rows) {
    w[0] = std::max(w[0], row.instance.size());
    w[1] = std::max(w[1], row.prediction.size());
    w[2] = std::max(w[2], row.morse.size());
    w[3] = std::max(w[3], row.homology.size());
  }
  std::ostringstream o;
  for (const auto& row : rows) {
    o << std::left << std::setw(static_cast<int>(w[0])) << row.instance << "  " << std::setw(static_cast<int>(w[1]))
      << row.prediction << "  " << std::setw(static_cast<int>(w[2])) << row.morse << "  "
      << std::setw(static_cast<int>(w[3])) << row.homology << "  " << row.verdict << '\n';
  }
  return o.str();
}

inline nlohmann::ordered_json report_json(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["instance"] = r.instance;
  j["family"] = family_name(r.family);
  j[family_parameter(r.family)] = r.param;
  j["vertices"] = r.vertices;
  j["edges"] = r.edges;
  if (r.f_vector) j["f_vector"] = r.f_vector->counts;
  if (r.prediction) {
    auto& p = j["prediction"];
    p = nlohmann::ordered_json::array();
    for (const auto& s : r.prediction->spheres) p.push_back({{"dim", s.dim}, {"count", s.count}});
  } else {
    j["prediction"] = nullptr;
  }
  if (r.expected_cells) {
    auto& e = j["expected_cells"];
    e = nlohmann::ordered_json::array();
    for (const auto& c : r.expected_cells->cells) e.push_back({{"size", c.size}, {"count", c.count}});
  }
  if (!r.construction.empty()) j["construction"] = r.construction;
  if (r.morse) {
    j["morse"] = {{"critical_by_dim", r.morse->critical_by_dim},
                  {"empty_face_matched", r.morse->empty_face_matched},
                  {"pairs", r.morse->pair_count}};
  }
  if (r.homology) {
    auto& h = j["homology"];
    h = nlohmann::ordered_json::array();
    for (const auto& g : r.homology->groups) {
      std::vector<std::string> t;
      for (const auto& x : g.torsion) t.push_back(x.get_str());
      h.push_back({{"dim", g.dim}, {"betti", g.betti}, {"torsion", t}});
    }
    j["torsion_checked"] = r.homology->torsion_computed;
  }
  auto& checks = j["checks"];
  checks = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"verdict", verdict_name(c.verdict)}, {"detail", c.detail}});
  if (r.budget_exhausted) j["budget_exhausted"] = *r.budget_exhausted;
  j["verdict"] = verdict_name(r.verdict());
  return j;
}

inline std::string reports_json(const std::vector<VerificationReport>& rs) {
  nlohmann::ordered_json a = nlohmann::ordered_json::array();
  for (const auto& r : rs) a.push_back(report_json(r));
  return a.dump(2) + "\n";
}

}  // namespace indmorse
