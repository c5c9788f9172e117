#include <gtest/gtest.h>

#include <random>

#include "indmorse/complex.hpp"
#include "indmorse/families.hpp"
#include "indmorse/homology/homology.hpp"

using namespace indmorse;

namespace {

std::vector<std::size_t> betti(const SimplicialComplex& k) { return homology(k).betti_vector(); }

SimplicialComplex from_faces(int n, const std::vector<std::vector<int>>& gens) {
  std::vector<VertexLabel> labels;
  for (int i = 0; i < n; ++i) labels.push_back(make_int(i));
  std::vector<Face> g;
  for (const auto& f : gens) g.push_back(face_from_indices(f));
  return complex_from_generators(labels, g);
}

// Rank over GF(p) by dense Gaussian elimination; equals the rational rank for
// all but finitely many primes, so a large prime is a good independent check.
std::size_t rank_mod_p(const IntegerMatrix& m, long long p = 1'000'000'007) {
  auto a = m.to_dense();
  for (auto& row : a) {
    for (auto& v : row) v = ((v % p) + p) % p;
  }
  std::size_t rank = 0;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  auto power = [&](long long b, long long e) {
    long long r = 1;
    b %= p;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  };
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    const long long inv = power(a[rank][c], p - 2);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank || a[i][c] == 0) continue;
      const long long f = a[i][c] * inv % p;
      for (std::size_t j = c; j < cols; ++j) a[i][j] = ((a[i][j] - f * a[rank][j]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

std::vector<std::string> as_strings(const std::vector<mpz_class>& v) {
  std::vector<std::string> out;
  for (const auto& x : v) out.push_back(x.get_str());
  return out;
}

}  // namespace

TEST(Boundary, SimplexEdge) {
  const auto k = from_faces(2, {{0, 1}});
  const auto d1 = boundary_matrix(k, 1);
  EXPECT_EQ(d1.to_dense(), (std::vector<std::vector<long long>>{{-1}, {1}}));
  const auto d0 = boundary_matrix(k, 0);
  EXPECT_EQ(d0.to_dense(), (std::vector<std::vector<long long>>{{1, 1}}));
}

TEST(Boundary, SquaresToZero) {
  for (const auto& g : {stable_kneser(2, 2), e_graph(3), cycle_graph(9), el_graph(6)}) {
    const auto c = boundary_matrices(independence_complex(g));
    EXPECT_TRUE(c.is_chain_complex()) << g.family().id();
  }
}

TEST(Boundary, CycleSixShape) {
  const auto k = independence_complex(cycle_graph(6));
  EXPECT_EQ(k.f_vector().counts, (std::vector<std::size_t>{1, 6, 9, 2}));
  const auto d1 = boundary_matrix(k, 1);
  EXPECT_EQ(d1.cols(), 9U);
  EXPECT_EQ(d1.rows(), 6U);
}

TEST(Smith, Examples) {
  EXPECT_EQ(as_strings(smith_normal_form(IntegerMatrix::from_dense({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}))),
            (std::vector<std::string>{"1", "1", "1"}));
  EXPECT_EQ(as_strings(smith_normal_form(IntegerMatrix::from_dense({{2, 4}, {6, 8}}))),
            (std::vector<std::string>{"2", "4"}));
  EXPECT_TRUE(smith_normal_form(IntegerMatrix::from_dense({{0, 0}, {0, 0}})).empty());
  EXPECT_EQ(as_strings(smith_normal_form(IntegerMatrix::from_dense({{2, 0}, {0, 3}}))),
            (std::vector<std::string>{"1", "6"}));
  EXPECT_EQ(as_strings(smith_normal_form(IntegerMatrix::from_dense({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}))),
            (std::vector<std::string>{"1", "3"}));
}

TEST(Smith, BigEntriesPromote) {
  const long long big = 3'000'000'000'000'000'000LL;
  const auto r = eliminate(IntegerMatrix::from_dense({{big, 7}, {7, big}}), EliminationMode::rational_rank);
  EXPECT_EQ(r.rank, 2U);
  EXPECT_TRUE(r.used_big_integers);
  EXPECT_EQ(smith_normal_form(IntegerMatrix::from_dense({{big, 3}, {3, big}})).size(), 2U);
}

TEST(Smith, InvariantUnderShuffles) {
  std::mt19937 rng(12345);
  const auto k = independence_complex(stable_kneser(2, 3));
  const auto cc = boundary_matrices(k);
  for (const auto& m : cc.boundaries) {
    const auto base = as_strings(smith_normal_form(m));
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<std::uint32_t> rp(m.rows());
      std::vector<std::uint32_t> cp(m.cols());
      std::iota(rp.begin(), rp.end(), 0);
      std::iota(cp.begin(), cp.end(), 0);
      std::shuffle(rp.begin(), rp.end(), rng);
      std::shuffle(cp.begin(), cp.end(), rng);
      EXPECT_EQ(as_strings(smith_normal_form(m.permuted(rp, cp))), base);
    }
  }
  std::uniform_int_distribution<int> entry(-3, 3);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<std::vector<long long>> d(5, std::vector<long long>(6));
    for (auto& row : d) {
      for (auto& v : row) v = entry(rng) * entry(rng);
    }
    const auto m = IntegerMatrix::from_dense(d);
    const auto f = smith_normal_form(m);
    for (std::size_t i = 1; i < f.size(); ++i) EXPECT_EQ(f[i] % f[i - 1], 0);
    EXPECT_EQ(f.size(), rational_rank(m));
    EXPECT_EQ(f.size(), rank_mod_p(m));
    std::vector<std::uint32_t> rp{4, 2, 0, 1, 3};
    std::vector<std::uint32_t> cp{5, 3, 1, 0, 2, 4};
    EXPECT_EQ(as_strings(smith_normal_form(m.permuted(rp, cp))), as_strings(f));
  }
}

TEST(Rank, RationalAgreesWithSmithAndModP) {
  for (const auto& g : {stable_kneser(2, 4), e_graph(4), cycle_graph(12), kneser(2, 1)}) {
    const auto k = independence_complex(g);
    for (const auto& m : boundary_matrices(k).boundaries) {
      const auto smith = smith_normal_form(m).size();
      EXPECT_EQ(rational_rank(m), smith);
      if (m.rows() * m.cols() < 400'000) {
        EXPECT_EQ(rank_mod_p(m), smith);
      }
    }
  }
}

TEST(Homology, Examples) {
  EXPECT_EQ(betti(independence_complex(cycle_graph(6))), (std::vector<std::size_t>{0, 0, 2, 0}));
  EXPECT_EQ(betti(independence_complex(stable_kneser(2, 3))), (std::vector<std::size_t>{0, 0, 1, 0, 0}));
  const auto e8 = homology(independence_complex(e_graph(3)));
  EXPECT_EQ(e8.betti(2), 1U);
  for (const auto& g : e8.groups) {
    if (g.dim != 2) {
      EXPECT_EQ(g.betti, 0U);
    }
  }
  EXPECT_TRUE(e8.torsion_free());

  const auto tetra = from_faces(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
  EXPECT_EQ(betti(tetra), (std::vector<std::size_t>{0, 0, 0, 1}));
}

TEST(Homology, Conventions) {
  EXPECT_EQ(betti(SimplicialComplex({}, {0})), (std::vector<std::size_t>{1}));
  EXPECT_TRUE(homology(SimplicialComplex({}, {})).groups.empty());
  EXPECT_EQ(betti(from_faces(3, {{0, 1, 2}})), (std::vector<std::size_t>{0, 0, 0, 0}));
  EXPECT_EQ(betti(independence_complex(complete_graph(3))), (std::vector<std::size_t>{0, 2}));
}

TEST(Homology, Torsion) {
  // Six-vertex triangulation of the real projective plane.
  const auto rp2 = from_faces(6, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                                  {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {1, 3, 5}, {2, 4, 5}});
  const auto h = homology(rp2);
  EXPECT_EQ(h.betti_vector(), (std::vector<std::size_t>{0, 0, 0, 0}));
  EXPECT_EQ(as_strings(h.torsion(1)), (std::vector<std::string>{"2"}));
  EXPECT_FALSE(h.torsion_free());
  const auto rows = homology_rows("rp2", h);
  EXPECT_NE(rows.find("homology rp2 dim=1 betti=0 torsion=[2]"), std::string::npos);
}

TEST(Homology, RationalPathMatchesSmith) {
  HomologyOptions rational;
  rational.snf_face_threshold = 0;
  for (const auto& g : {stable_kneser(2, 5), e_graph(4), el_graph(7), cycle_graph(13)}) {
    const auto k = independence_complex(g);
    const auto a = homology(k);
    const auto b = homology(k, rational);
    EXPECT_TRUE(a.torsion_computed);
    EXPECT_FALSE(b.torsion_computed);
    EXPECT_EQ(a.betti_vector(), b.betti_vector()) << g.family().id();
  }
}

TEST(Homology, EulerAgreement) {
  for (const auto& g : {stable_kneser(2, 4), e_graph(5), el_graph(8), kneser(2, 1), path_graph(7)}) {
    const auto k = independence_complex(g);
    EXPECT_EQ(homology(k).euler_from_betti(), euler_characteristic(k)) << g.family().id();
  }
}
