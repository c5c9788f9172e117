#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "indmorse/families.hpp"
#include "indmorse/graph_algorithms.hpp"
#include "indmorse/text_io.hpp"

using namespace indmorse;

namespace {

// Stable n-subsets of [m] counted by brute force over all bitmasks.
int brute_stable_count(int n, int m) {
  int count = 0;
  for (std::uint32_t s = 0; s < (1U << m); ++s) {
    if (std::popcount(s) != n) continue;
    bool ok = true;
    for (int i = 0; i < m && ok; ++i) {
      const int j = (i + 1) % m;
      if (m > 1 && ((s >> i) & 1) && ((s >> j) & 1)) ok = false;
    }
    if (ok) ++count;
  }
  return count;
}

Graph relabeled_cycle(int n, int shift) {
  std::vector<VertexLabel> labels;
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) labels.push_back(make_int(100 + i));
  for (int i = 0; i < n; ++i) edges.emplace_back((i * shift) % n, ((i + 1) * shift) % n);
  return Graph({"x", {}}, labels, edges);
}

}  // namespace

TEST(Labels, RoundTripStrings) {
  for (const auto& s : {"12", "c7", "a3", "{1,3,5}", "{}", "(1,c4)", "({1,3},b2)"}) {
    VertexLabel l;
    ASSERT_TRUE(textio::parse_label(s, l)) << s;
    EXPECT_EQ(to_string(l), s);
  }
  VertexLabel l;
  EXPECT_FALSE(textio::parse_label("{3,1}", l));
  EXPECT_FALSE(textio::parse_label("c", l));
  EXPECT_FALSE(textio::parse_label("(1,2", l));
}

TEST(Graph, RejectsLoopsAndDuplicateLabels) {
  EXPECT_THROW(Graph({"x", {}}, {make_int(1), make_int(1)}, {}), contract_error);
  EXPECT_THROW(Graph({"x", {}}, {make_int(1)}, {{0, 0}}), contract_error);
  EXPECT_THROW(Graph({"x", {}}, {make_int(1)}, {{0, 1}}), contract_error);
}

TEST(IsStable, Examples) {
  EXPECT_TRUE(is_stable({{1, 3}}, 6));
  EXPECT_FALSE(is_stable({{1, 6}}, 6));
  EXPECT_TRUE(is_stable({{2, 4, 6}}, 7));
  EXPECT_TRUE(is_stable({{2, 4, 6}}, 6));
  EXPECT_FALSE(is_stable({{2, 3}}, 6));
  EXPECT_THROW(is_stable({{0, 3}}, 6), parameter_error);
  EXPECT_THROW(is_stable({{3, 7}}, 6), parameter_error);
}

TEST(StableKneser, SmallCases) {
  const auto c5 = stable_kneser(2, 1);
  EXPECT_EQ(c5.size(), 5U);
  EXPECT_EQ(c5.edge_count(), 5U);
  EXPECT_TRUE(is_regular(c5, 2));
  EXPECT_TRUE(is_isomorphic_small(c5, cycle_graph(5)));

  const auto k4 = stable_kneser(1, 2);
  EXPECT_EQ(k4.size(), 4U);
  EXPECT_EQ(k4.edge_count(), 6U);

  EXPECT_EQ(stable_kneser(2, 2).size(), 9U);
  EXPECT_EQ(stable_kneser(4, 2).size(), 25U);
  EXPECT_EQ(stable_kneser(5, 2).size(), 36U);
  EXPECT_THROW(stable_kneser(0, 2), parameter_error);
  EXPECT_THROW(stable_kneser(2, -1), parameter_error);
}

TEST(StableKneser, LexicographicVertexOrder) {
  const auto g = stable_kneser(2, 2);
  for (std::size_t i = 1; i < g.size(); ++i) EXPECT_LT(g.label(i - 1), g.label(i));
  EXPECT_EQ(to_string(g.label(0)), "{1,3}");
}

TEST(Kneser, SmallCases) {
  const auto k3 = kneser(1, 1);
  EXPECT_EQ(k3.size(), 3U);
  EXPECT_EQ(k3.edge_count(), 3U);

  const auto petersen = kneser(2, 1);
  EXPECT_EQ(petersen.size(), 10U);
  EXPECT_EQ(petersen.edge_count(), 15U);
  EXPECT_TRUE(is_regular(petersen, 3));

  const auto pm = kneser(2, 0);
  EXPECT_EQ(pm.size(), 6U);
  EXPECT_EQ(pm.edge_count(), 3U);
  EXPECT_TRUE(is_regular(pm, 1));
}

TEST(StableKneser, CountsAndInducedSubgraphOfKneser) {
  for (int n = 1; n <= 8; ++n) {
    for (int k = 0; 2 * n + k <= 16; ++k) {
      const auto sg = stable_kneser(n, k);
      ASSERT_EQ(static_cast<int>(sg.size()), brute_stable_count(n, 2 * n + k)) << n << "," << k;
      if (sg.size() > 200) continue;
      const auto kg = kneser(n, k);
      std::vector<int> image;
      for (const auto& l : sg.labels()) image.push_back(kg.require_index(l));
      for (int u = 0; u < static_cast<int>(sg.size()); ++u) {
        const auto& a = std::get<SubsetLabel>(sg.label(u)).elements;
        for (int v = u + 1; v < static_cast<int>(sg.size()); ++v) {
          const auto& b = std::get<SubsetLabel>(sg.label(v)).elements;
          std::vector<int> common;
          std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
          ASSERT_EQ(sg.adjacent(u, v), common.empty());
          ASSERT_EQ(sg.adjacent(u, v), kg.adjacent(image[u], image[v]));
        }
      }
    }
  }
}

TEST(StableKneser, SmallKIdentities) {
  for (int n = 1; n <= 7; ++n) {
    EXPECT_TRUE(is_isomorphic_small(stable_kneser(n, 0), complete_graph(2))) << n;
    EXPECT_TRUE(is_isomorphic_small(stable_kneser(n, 1), cycle_graph(2 * n + 1))) << n;
  }
}

TEST(BasicGraphs, Examples) {
  const auto p1 = path_graph(1);
  EXPECT_EQ(p1.size(), 1U);
  EXPECT_EQ(p1.edge_count(), 0U);
  EXPECT_EQ(cycle_graph(5).edge_count(), 5U);
  const auto k44 = complete_bipartite_graph(4, 4);
  EXPECT_EQ(k44.size(), 8U);
  EXPECT_EQ(k44.edge_count(), 16U);
  EXPECT_THROW(cycle_graph(2), parameter_error);
  EXPECT_THROW(path_graph(0), parameter_error);
  EXPECT_THROW(complete_bipartite_graph(0, 3), parameter_error);
}

TEST(DcCycle, Examples) {
  const auto dc8 = dc_cycle(3);
  EXPECT_EQ(dc8.size(), 8U);
  EXPECT_EQ(dc8.edge_count(), 12U);
  const auto dc6 = dc_cycle(2);
  EXPECT_EQ(dc6.size(), 6U);
  EXPECT_EQ(dc6.edge_count(), 9U);
  EXPECT_TRUE(is_bipartite(dc6));
  EXPECT_TRUE(is_isomorphic_small(dc6, complete_bipartite_graph(3, 3)));
  for (int n = 2; n <= 10; ++n) EXPECT_TRUE(is_regular(dc_cycle(n), 3)) << n;
  EXPECT_THROW(dc_cycle(1), parameter_error);
}

TEST(COdd, Examples) {
  const auto c5 = c_odd(4);
  EXPECT_EQ(c5.size(), 5U);
  EXPECT_TRUE(is_isomorphic_small(c5, cycle_graph(5)));
  EXPECT_EQ(to_string(c5.label(4)), "c9");
  EXPECT_TRUE(is_isomorphic_small(c_odd(2), complete_graph(3)));
  const auto c7 = c_odd(6);
  EXPECT_EQ(c7.size(), 7U);
  EXPECT_TRUE(is_regular(c7, 2));
  EXPECT_THROW(c_odd(5), parameter_error);
}

TEST(EGraph, Counts) {
  const auto e3 = e_graph(3);
  EXPECT_EQ(e3.size(), 16U);
  EXPECT_EQ(e3.edge_count(), 36U);
  const auto e4 = e_graph(4);
  EXPECT_EQ(e4.size(), 15U);
  EXPECT_EQ(e4.edge_count(), 40U);
  for (int n = 3; n <= 9; n += 2) {
    const auto e = e_graph(n);
    for (int i = 1; i <= 2 * n + 2; ++i) EXPECT_EQ(e.degree(e.require_index(make_int(i))), static_cast<std::size_t>(n + 2));
  }
  EXPECT_THROW(e_graph(1), parameter_error);
}

TEST(EGraph, EvenSpokes) {
  const auto e = e_graph(4);
  const int c1 = e.require_index(make_cycle(1));
  EXPECT_TRUE(e.adjacent(c1, e.require_index(make_int(1))));
  EXPECT_TRUE(e.adjacent(c1, e.require_index(make_int(6))));
  EXPECT_TRUE(e.adjacent(c1, e.require_index(make_cycle(3))));
  EXPECT_TRUE(e.adjacent(c1, e.require_index(make_cycle(9))));
  EXPECT_EQ(e.degree(c1), 4U);
}

TEST(ElGraph, SmallCases) {
  const auto el0 = el_graph(0);
  EXPECT_EQ(el0.size(), 2U);
  EXPECT_EQ(el0.edge_count(), 1U);
  EXPECT_TRUE(is_isomorphic_small(el0, complete_graph(2)));
  EXPECT_TRUE(is_isomorphic_small(el_graph(1), complete_bipartite_graph(1, 3)));
  const auto el2 = el_graph(2);
  EXPECT_EQ(el2.size(), 6U);
  EXPECT_EQ(el2.edge_count(), 6U);
  for (int r = 0; r <= 12; ++r) EXPECT_EQ(el_graph(r).size(), static_cast<std::size_t>(2 * r + 2));
  EXPECT_THROW(el_graph(-1), parameter_error);
}

TEST(CartesianProduct, Examples) {
  const auto c3 = cartesian_product(cycle_graph(3), path_graph(1));
  EXPECT_TRUE(is_isomorphic_small(c3, cycle_graph(3)));
  EXPECT_TRUE(is_isomorphic_small(cartesian_product(path_graph(2), path_graph(2)), cycle_graph(4)));
  const auto c10 = cartesian_product(cycle_graph(10), path_graph(1));
  EXPECT_EQ(c10.size(), 10U);
  EXPECT_EQ(c10.edge_count(), 10U);
  EXPECT_EQ(cartesian_product(cycle_graph(4), path_graph(3)).edge_count(), 4U * 3 + 4 * 2);
  EXPECT_THROW(cartesian_product(c10, path_graph(2)), parameter_error);
}

TEST(Params, PAndO) {
  EXPECT_EQ(p_param(5), 5);
  EXPECT_EQ(p_param(4), 3);
  EXPECT_EQ(o_param(5), 3);
  EXPECT_EQ(o_param(4), 3);
  EXPECT_EQ(o_param(7), 4);
}

TEST(Classification, Counts) {
  for (int n = 2; n <= 7; ++n) {
    const auto c = classify_sg_n2(n);
    const std::size_t a = n % 2 == 0 ? n + 1 : 2 * n + 2;
    EXPECT_EQ(c.count(VertexClass::alternating_end), a) << n;
    EXPECT_EQ(c.count(VertexClass::bipartite_end), static_cast<std::size_t>(2 * n + 2)) << n;
    EXPECT_EQ(c.count(VertexClass::middle), static_cast<std::size_t>((2 * n + 2) * (o_param(n) - 2))) << n;
    EXPECT_EQ(c.classes.size(), c.graph.size());
  }
  const auto c4 = classify_sg_n2(4);
  EXPECT_EQ(c4.graph.size(), 25U);
  EXPECT_EQ(c4.classes[c4.graph.require_index(make_subset({1, 3, 5, 7}))], VertexClass::bipartite_end);
  const auto c5 = classify_sg_n2(5);
  EXPECT_EQ(c5.count(VertexClass::alternating_end), 12U);
  EXPECT_EQ(c5.count(VertexClass::middle), 12U);
}

TEST(Classification, InducedStructure) {
  for (int n = 4; n <= 7; ++n) {
    const auto c = classify_sg_n2(n);
    const auto middle = induced_subgraph(c.graph, c.members(VertexClass::middle));
    EXPECT_TRUE(is_isomorphic_small(middle, cartesian_product(cycle_graph(2 * n + 2), path_graph(o_param(n) - 2))))
        << n;
    const auto alt = induced_subgraph(c.graph, c.members(VertexClass::alternating_end));
    EXPECT_TRUE(is_isomorphic_small(alt, n % 2 == 0 ? cycle_graph(n + 1) : dc_cycle(n))) << n;
  }
}

TEST(Chromatic, Examples) {
  EXPECT_EQ(chromatic_number_exact(cycle_graph(5)), 3);
  EXPECT_EQ(chromatic_number_exact(stable_kneser(2, 2)), 4);
  EXPECT_EQ(chromatic_number_exact(stable_kneser(3, 1)), 3);
  EXPECT_EQ(chromatic_number_exact(kneser(2, 1)), 3);
  EXPECT_EQ(chromatic_number_exact(complete_graph(6)), 6);
  EXPECT_EQ(chromatic_number_exact(path_graph(1)), 1);
  EXPECT_THROW(chromatic_number_exact(cycle_graph(41)), size_error);
}

TEST(InducedSubgraph, Examples) {
  const auto c5 = cycle_graph(5);
  EXPECT_TRUE(induced_subgraph(c5, {}).empty());
  const auto p3 = induced_subgraph(c5, {0, 1, 2});
  EXPECT_TRUE(is_isomorphic_small(p3, path_graph(3)));
  EXPECT_EQ(p3.label(2), c5.label(2));
  EXPECT_THROW(induced_subgraph(c5, {7}), parameter_error);
}

TEST(Isomorphism, Examples) {
  EXPECT_TRUE(is_isomorphic_small(cycle_graph(5), relabeled_cycle(5, 2)));
  EXPECT_FALSE(is_isomorphic_small(path_graph(4), complete_bipartite_graph(1, 3)));
  EXPECT_FALSE(is_isomorphic_small(cycle_graph(6), cartesian_product(complete_graph(3), complete_graph(2))));
  EXPECT_TRUE(is_isomorphic_small(kneser(2, 1), kneser(2, 1)));
  EXPECT_THROW(is_isomorphic_small(cycle_graph(65), cycle_graph(65)), size_error);
}

TEST(GraphText, RoundTrip) {
  for (const auto& g : {stable_kneser(2, 3), e_graph(3), e_graph(4), el_graph(3),
                        cartesian_product(cycle_graph(4), path_graph(2)), path_graph(1)}) {
    const auto text = textio::graph_to_string(g);
    const auto back = textio::graph_from_string(text);
    EXPECT_EQ(textio::graph_to_string(back), text);
    EXPECT_EQ(back.family(), g.family());
    EXPECT_EQ(back.labels(), g.labels());
  }
  EXPECT_EQ(textio::graph_to_string(path_graph(2)), "graph p n=2 2 1\nv 0 1\nv 1 2\ne 0 1\n");
}

TEST(GraphText, ParseErrors) {
  auto line_of = [](const std::string& s) {
    try {
      textio::graph_from_string(s);
    } catch (const parse_error& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  EXPECT_EQ(line_of(""), 1U);
  EXPECT_EQ(line_of("grph p - 1 0\n"), 1U);
  EXPECT_EQ(line_of("graph p - 2 1\nv 0 1\nv 1 {2,1}\ne 0 1\n"), 3U);
  EXPECT_EQ(line_of("graph p - 2 1\nv 0 1\nv 1 2\ne 1 0\n"), 4U);
  EXPECT_EQ(line_of("graph p - 2 1\nv 0 1\nv 0 2\ne 0 1\n"), 3U);
  EXPECT_EQ(line_of("graph p - 1 0\nv 0 1\nextra\n"), 3U);
  EXPECT_EQ(line_of("graph p - 2 0\nv 0 1\nv 1 1\n"), 3U);
  try {
    textio::graph_from_string("graph p - 1 0\nv 0 $\n");
    FAIL();
  } catch (const parse_error& e) {
    EXPECT_EQ(e.column(), 5U);
  }
}
