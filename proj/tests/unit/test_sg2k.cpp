#include <gtest/gtest.h>

#include "indmorse/homology/homology.hpp"
#include "indmorse/morse/sg2k.hpp"

using namespace indmorse;

namespace {

Face star(const Sg2Vertices& sg, int c, std::vector<int> leaves) {
  Face f = 0;
  for (int l : leaves) f |= sg.pair_face(c, l);
  return f;
}

int psi_index(int k, const std::string& name) {
  const auto c = sg2k_psi_chain(k);
  return static_cast<int>(std::find(c.begin(), c.end(), name) - c.begin());
}

}  // namespace

TEST(Sg2Shape, Kinds) {
  const Sg2Vertices sg(5);
  EXPECT_EQ(sg2_shape(sg, 0).kind, Sg2Shape::Kind::empty);
  const auto p = sg2_shape(sg, sg.pair_face(7, 3));
  EXPECT_EQ(p.kind, Sg2Shape::Kind::pair);
  EXPECT_EQ(p.elements[0], 3);
  EXPECT_EQ(p.elements[1], 7);
  const auto s = sg2_shape(sg, star(sg, 4, {9, 1, 6}));
  EXPECT_EQ(s.kind, Sg2Shape::Kind::star);
  EXPECT_EQ(s.center, 4);
  EXPECT_EQ(s.leaves, (std::vector<int>{1, 6, 9}));
  const auto t = sg2_shape(sg, sg2_triangle(sg, 6, 2, 4));
  EXPECT_EQ(t.kind, Sg2Shape::Kind::triangle);
  EXPECT_EQ(t.elements, (std::array<int, 3>{2, 4, 6}));
  EXPECT_EQ(sg2_face_string(sg, sg.pair_face(2, 4) | sg.pair_face(2, 5)), "{{2,4},{2,5}}");
}

TEST(Sg2Phi, Examples) {
  const Sg2Vertices six(6);
  EXPECT_EQ(sg2k_phi(six, 0), 3);
  EXPECT_EQ(sg2k_phi(six, star(six, 2, {6, 8})), 10);
  const Sg2Vertices five(5);
  EXPECT_EQ(sg2k_phi(five, star(five, 5, {1, 8})), 5);
  EXPECT_EQ(sg2k_phi(five, five.pair_face(1, 6)), 3);
  EXPECT_EQ(sg2k_phi(five, five.pair_face(2, 6)), 6);
  EXPECT_EQ(sg2k_phi(five, five.pair_face(4, 8)), 4);
  // A two-star at l through 1 goes to the grade of its other leaf.
  EXPECT_EQ(sg2k_phi(five, star(five, 7, {1, 2})), 7);
  EXPECT_EQ(sg2k_phi(five, star(five, 7, {1, 3})), 3);
  EXPECT_EQ(sg2k_phi(five, star(five, 7, {1, 4})), 4);
  EXPECT_EQ(sg2k_phi(five, sg2_triangle(five, 1, 4, 6)), 4);
  EXPECT_EQ(sg2k_phi(five, sg2_triangle(five, 2, 4, 6)), 9);
}

TEST(Sg2Psi, Examples) {
  for (int k : {4, 6}) {
    const Sg2Vertices sg(k);
    const int top = k + 4;
    EXPECT_EQ(sg2k_psi(sg, sg.pair_face(2, top)), psi_index(k, "b"));
    EXPECT_EQ(sg2k_psi(sg, star(sg, 2, {5, 7})), psi_index(k, "m_1"));
    EXPECT_EQ(sg2k_psi(sg, star(sg, top, {3, 5})), psi_index(k, "m_3"));
    EXPECT_EQ(sg2k_psi(sg, sg2_triangle(sg, 2, 4, 6)), psi_index(k, "r_6"));
    EXPECT_EQ(sg2k_psi(sg, star(sg, top, {3, 6})), psi_index(k, "t_" + std::to_string(top)));
    EXPECT_THROW(sg2k_psi(sg, 0), contract_error);
  }
  const Sg2Vertices three(3);
  EXPECT_EQ(sg2k_psi_chain(3), (std::vector<std::string>{"b", "r_6", "t_2", "s_4", "s_5", "m_3", "m_4", "t_7"}));
  EXPECT_EQ(sg2k_psi(three, star(three, 2, {4, 5})), psi_index(3, "t_2"));
  EXPECT_EQ(sg2k_psi(three, star(three, 2, {4, 5, 7})), psi_index(3, "t_2"));
  EXPECT_EQ(sg2k_psi(three, sg2_triangle(three, 2, 5, 7)), psi_index(3, "s_5"));
}

TEST(Sg2Matching, FullAudit) {
  for (int k = 3; k <= 8; ++k) {
    const auto r = sg2k_matching(k);
    EXPECT_TRUE(r.unclassified.empty()) << k;
    EXPECT_TRUE(r.partition_ok()) << k;
    EXPECT_TRUE(r.order_ok()) << k;
    EXPECT_TRUE(r.patchwork.ok()) << k << ": " << r.patchwork.describe(r.combined);
    EXPECT_TRUE(r.grade_problems.empty()) << k;
    ASSERT_TRUE(r.ok()) << k;
    // Every overlap agrees on the grade: {1,3} lies in both W_1 and W_3.
    for (const auto& o : r.overlaps) EXPECT_FALSE(o.conflicting());
    EXPECT_EQ(check_order_preserving(*r.complex, r.combined), std::nullopt);
    const auto s = morse_summary(r.matching());
    EXPECT_TRUE(s.empty_face_matched);
    if (k == 3) {
      EXPECT_EQ(s.count(1), 1U);
      EXPECT_EQ(s.total_critical(), 1U);
    } else {
      const std::size_t expect = static_cast<std::size_t>((k + 1) * k * (k - 1) / 6 - (2 * k - 1));
      EXPECT_EQ(s.count(2), expect) << k;
      EXPECT_EQ(s.total_critical(), expect) << k;
    }
  }
}

TEST(Sg2Matching, AgreesWithHomology) {
  for (int k = 3; k <= 5; ++k) {
    const auto r = sg2k_matching(k);
    const auto s = morse_summary(r.matching());
    const auto h = homology(*r.complex);
    const int d = *s.single_dimension();
    EXPECT_EQ(h.betti(d), s.count(d)) << k;
    EXPECT_TRUE(h.torsion_free());
  }
}

TEST(Sg2Matching, Rejects) { EXPECT_THROW(sg2k_matching(2), parameter_error); }
