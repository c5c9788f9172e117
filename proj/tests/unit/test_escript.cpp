#include <gtest/gtest.h>

#include <map>
#include <set>

#include "indmorse/homology/homology.hpp"
#include "indmorse/morse/e_script.hpp"
#include "indmorse/morse/morse_io.hpp"

using namespace indmorse;

namespace {

// Critical cells of the finished tree as (count, sizes).
std::pair<std::size_t, std::set<int>> cells(const MatchingTree& t) {
  std::set<int> sizes;
  const auto cf = t.critical_faces();
  for (Face f : cf) sizes.insert(face_size(f));
  return {cf.size(), sizes};
}

}  // namespace

TEST(EScript, CriticalCells) {
  const std::map<int, std::pair<std::size_t, int>> want{
      {3, {1, 3}}, {4, {1, 3}}, {5, {3, 4}}, {6, {1, 3}}, {7, {1, 5}}, {8, {2, 4}}, {9, {3, 6}}, {10, {1, 5}},
  };
  for (const auto& [n, w] : want) {
    const auto s = e_graph_script(n);
    const auto audit = audit_script(s.graph, s.program);
    ASSERT_TRUE(audit.ok()) << n;
    const auto [count, sizes] = cells(audit.tree);
    EXPECT_EQ(count, w.first) << n;
    EXPECT_EQ(sizes, (std::set<int>{w.second})) << n;
  }
}

TEST(EScript, Terminals) {
  for (int n = 3; n <= 10; ++n) {
    const auto s = e_graph_script(n);
    for (const auto& t : s.terminals) {
      if (t.kind == ETerminal::Kind::paths || t.expected_el >= 0) {
        EXPECT_TRUE(t.shape_matches) << n << " " << t.name;
      }
    }
  }
  for (int n : {7, 9}) {
    const auto s = e_graph_script(n);
    std::set<int> seen;
    for (const auto& t : s.terminals) {
      if (t.kind != ETerminal::Kind::ladder || t.expected_el < 0) continue;
      seen.insert(t.expected_el);
      const int r = t.expected_el;
      // Edge ladder counts: none when r % 4 >= 2, else one cell of size 2(r/4)+1.
      if (r % 4 >= 2) {
        EXPECT_EQ(t.cells, 0U) << n << " " << r;
      } else {
        EXPECT_EQ(t.relative_sizes, (std::vector<int>{2 * (r / 4) + 1})) << n << " " << r;
      }
    }
    EXPECT_TRUE(seen.count(n - 4) && seen.count(n - 5) && seen.count(n - 6)) << n;
  }
}

TEST(EScript, InducedMatchingAgreesWithHomology) {
  for (int n = 3; n <= 6; ++n) {
    const auto s = e_graph_script(n);
    const auto t = run_script(s.graph, s.program);
    auto om = tree_matching(t);
    ASSERT_TRUE(om.matching.verify_acyclic().acyclic) << n;
    EXPECT_TRUE(check_tree_consistency(t, om.matching).ok()) << n;
    const auto sum = morse_summary(om.matching);
    const auto d = sum.single_dimension();
    ASSERT_TRUE(d) << n;
    const auto h = homology(*om.complex);
    EXPECT_EQ(h.betti(*d), sum.count(*d)) << n;
  }
}

TEST(EScript, TenVertexGraph) {
  const auto s = e_graph_script(4);
  auto om = tree_matching(run_script(s.graph, s.program));
  om.matching.verify_acyclic();
  const auto sum = morse_summary(om.matching);
  EXPECT_EQ(sum.count(2), 1U);
  EXPECT_EQ(sum.total_critical(), 1U);
  EXPECT_TRUE(sum.empty_face_matched);
}

TEST(EScript, Rejects) { EXPECT_THROW(e_graph_script(2), parameter_error); }

TEST(MorseIo, ScriptRoundTrip) {
  for (int n : {3, 4, 7}) {
    const auto s = e_graph_script(n);
    const auto text = script_to_string(s.graph, s.program);
    const auto back = script_from_string(text, s.graph);
    ASSERT_EQ(back.size(), s.program.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
      EXPECT_EQ(back[i].path, s.program[i].path);
      EXPECT_EQ(back[i].step, s.program[i].step);
      EXPECT_EQ(back[i].note, s.program[i].note);
    }
    EXPECT_EQ(script_to_string(s.graph, back), text);
  }
  const auto g = e_graph(3);
  EXPECT_EQ(script_from_string("at . split c1\nat L match 1 via c2 # note\n", g).size(), 2U);
  EXPECT_THROW(script_from_string("at . split c99\n", g), parse_error);
  EXPECT_THROW(script_from_string("at X split c1\n", g), parse_error);
  EXPECT_THROW(script_from_string("at . hop c1\n", g), parse_error);
  EXPECT_THROW(script_from_string("at . match 1 c1\n", g), parse_error);
}

TEST(MorseIo, MatchingRoundTrip) {
  const auto s = e_graph_script(4);
  auto om = tree_matching(run_script(s.graph, s.program));
  const auto text = matching_to_string(om.matching);
  EXPECT_NE(text.find("critical\n{"), std::string::npos);
  const auto back = matching_from_string(text, *om.complex);
  EXPECT_EQ(back.pairs(), om.matching.pairs());
  EXPECT_EQ(matching_to_string(back), text);

  const auto k = independence_complex(path_graph(2));
  EXPECT_EQ(matching_to_string(PartialMatching(k)), "critical\n{}\n{1}\n{2}\n");
  EXPECT_NO_THROW(matching_from_string("pair {} {1}\ncritical\n{2}\n", k));
  EXPECT_THROW(matching_from_string("pair {} {1}\ncritical\n", k), parse_error);
  EXPECT_THROW(matching_from_string("pair {} {1,2}\ncritical\n{1}\n{2}\n", k), parse_error);
  EXPECT_THROW(matching_from_string("pair {} {1}\n", k), parse_error);
  EXPECT_THROW(matching_from_string("pair {} {3}\ncritical\n", k), parse_error);
}
