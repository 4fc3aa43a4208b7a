#include <gtest/gtest.h>

#include <random>
#include <set>

#include "qw/rootsys.hpp"

using namespace qw;

namespace {

// Independent oracle: enumerate lattice vectors with small coefficients and keep
// those of root length that the reflection formula maps into the set.
int count_by_weyl_orbits(const RootSystem& rs) {
  std::set<IntVec> orbit;
  for (int i = 0; i < rs.rank(); ++i) {
    std::vector<IntVec> frontier;
    IntVec e(rs.rank(), 0);
    e[i] = 1;
    frontier.push_back(e);
    orbit.insert(e);
    while (!frontier.empty()) {
      IntVec v = frontier.back();
      frontier.pop_back();
      for (int j = 0; j < rs.rank(); ++j) {
        Vec<Rational> img = rs.reflection(j) * to_rational(v);
        IntVec w(rs.rank());
        for (int k = 0; k < rs.rank(); ++k) w[k] = static_cast<int>(img[k].convert_to<long>());
        if (orbit.insert(w).second) frontier.push_back(w);
      }
    }
  }
  return static_cast<int>(orbit.size());
}

}  // namespace

TEST(RootSystem, RootCounts) {
  struct Case {
    const char* name;
    int roots;
  };
  for (Case c : {Case{"A1", 2}, Case{"A2", 6}, Case{"A3", 12}, Case{"A4", 20}, Case{"B2", 8}, Case{"B3", 18},
                 Case{"C3", 18}, Case{"G2", 12}, Case{"D4", 24}, Case{"A1xA1", 4}}) {
    RootSystem rs = RootSystem::from_name(c.name);
    EXPECT_EQ(rs.num_roots(), c.roots) << c.name;
    EXPECT_EQ(rs.num_positive() * 2, c.roots);
    EXPECT_EQ(count_by_weyl_orbits(rs), c.roots) << c.name;
  }
}

TEST(RootSystem, UnsupportedTypes) {
  for (const char* n : {"E6", "F4", "B1", "G3", "", "A", "Ax2"}) {
    try {
      RootSystem::from_name(n);
      FAIL() << n;
    } catch (const MathError& e) {
      EXPECT_EQ(e.code(), ErrorCode::UnsupportedType);
    }
  }
}

TEST(RootSystem, FormNormalization) {
  RootSystem a2 = RootSystem::from_name("A2");
  EXPECT_EQ(a2.inner_roots(0, 0), 2);
  EXPECT_EQ(a2.inner_roots(0, 1), -1);
  RootSystem g2 = RootSystem::from_name("G2");
  EXPECT_EQ(g2.inner_roots(0, 0), Rational(2, 3));
  EXPECT_EQ(g2.inner_roots(1, 1), 2);
  EXPECT_EQ(g2.cartan(1, 0), -3);  // <alpha_2, alpha_1^vee>
  RootSystem b2 = RootSystem::from_name("B2");
  EXPECT_EQ(b2.norm2(0), 2);
  EXPECT_EQ(b2.norm2(1), 1);
  RootSystem c3 = RootSystem::from_name("C3");
  EXPECT_EQ(c3.norm2(2), 2);
  EXPECT_EQ(c3.norm2(0), 1);
  // long roots have squared length 2 everywhere
  for (const char* n : {"A3", "B3", "C3", "D4", "G2"}) {
    RootSystem rs = RootSystem::from_name(n);
    Rational longest = 0;
    for (int k = 0; k < rs.num_roots(); ++k) longest = std::max(longest, rs.norm2(k));
    EXPECT_EQ(longest, 2) << n;
  }
}

TEST(RootSystem, OrderingAndNegatives) {
  RootSystem a2 = RootSystem::from_name("A2");
  EXPECT_EQ(a2.root(0), (IntVec{1, 0}));
  EXPECT_EQ(a2.root(1), (IntVec{0, 1}));
  EXPECT_EQ(a2.root(2), (IntVec{1, 1}));
  EXPECT_EQ(a2.root(a2.negative(2)), (IntVec{-1, -1}));
}

TEST(RootSystem, ReflectionsPreserveForm) {
  std::mt19937 rng(0);
  std::uniform_int_distribution<int> coeff(-5, 5);
  for (const char* n : {"A3", "B2", "G2", "C3", "D4"}) {
    RootSystem rs = RootSystem::from_name(n);
    for (int k = 0; k < 100; ++k) {
      Vec<Rational> x(rs.rank()), y(rs.rank());
      for (auto& c : x) c = coeff(rng);
      for (auto& c : y) c = coeff(rng);
      int a = k % rs.num_roots();
      Matrix<Rational> s = rs.reflection(a);
      EXPECT_EQ(rs.inner(s * x, s * y), rs.inner(x, y));
    }
  }
}

TEST(Weyl, AnalyzeExamples) {
  RootSystem a2 = RootSystem::from_name("A2");
  WeylAnalysis id = analyze(a2, WeylElement::identity(a2));
  EXPECT_EQ(id.length, 0);
  EXPECT_TRUE(id.inversion_set.empty());
  WeylAnalysis w = analyze(a2, WeylElement(a2, {0, 1}));
  EXPECT_EQ(w.length, 2);
  std::set<IntVec> inv;
  for (int k : w.inversion_set) inv.insert(a2.root(k));
  EXPECT_EQ(inv, (std::set<IntVec>{{0, 1}, {1, 1}}));
  EXPECT_EQ(w.order, 3);

  RootSystem b2 = RootSystem::from_name("B2");
  WeylAnalysis w0 = analyze(b2, WeylElement::longest(b2));
  EXPECT_EQ(w0.length, 4);
  EXPECT_EQ(static_cast<int>(w0.inversion_set.size()), b2.num_positive());
  EXPECT_EQ(WeylElement::longest(b2).matrix(), -Matrix<Rational>::identity(2));
}

TEST(Weyl, ReducedWordsGiveSameInversionSet) {
  RootSystem a3 = RootSystem::from_name("A3");
  // s1 s2 s1 s3 = s2 s1 s2 s3
  WeylElement u(a3, {0, 1, 0, 2});
  WeylElement v(a3, {1, 0, 1, 2});
  EXPECT_EQ(u, v);
  EXPECT_EQ(analyze(a3, u).inversion_set, analyze(a3, v).inversion_set);
  for (const WeylElement& w : weyl_group(a3)) {
    WeylAnalysis a = analyze(a3, w);
    EXPECT_EQ(static_cast<int>(a.reduced_word.size()), a.length);
    EXPECT_EQ(WeylElement(a3, a.reduced_word), w);
    EXPECT_EQ(analyze(a3, WeylElement(a3, a.reduced_word)).inversion_set, a.inversion_set);
  }
}

TEST(Weyl, LongestLengthEqualsNumberOfReflections) {
  for (const char* n : {"A1", "A2", "A3", "A4", "B2", "B3", "C3", "G2", "D4", "A1xA1"}) {
    RootSystem rs = RootSystem::from_name(n);
    EXPECT_EQ(analyze(rs, WeylElement::longest(rs)).length, rs.num_positive()) << n;
  }
}

TEST(Weyl, GroupOrdersAndClasses) {
  struct Case {
    const char* name;
    std::size_t order;
    std::size_t classes;
  };
  for (Case c : {Case{"A2", 6, 3}, Case{"B2", 8, 5}, Case{"G2", 12, 6}, Case{"A3", 24, 5}, Case{"B3", 48, 10},
                 Case{"D4", 192, 13}}) {
    RootSystem rs = RootSystem::from_name(c.name);
    EXPECT_EQ(weyl_group(rs).size(), c.order) << c.name;
    EXPECT_EQ(conjugacy_class_representatives(rs).size(), c.classes) << c.name;
  }
}

TEST(Weyl, CorootActionMatchesRootAction) {
  RootSystem g2 = RootSystem::from_name("G2");
  for (int k = 0; k < g2.num_roots(); ++k) {
    WeylElement w(g2, {0, 1, 0});
    int image = g2.apply(w.matrix(), k);
    EXPECT_EQ(w.coroot_matrix(g2) * g2.coroot(k), g2.coroot(image));
  }
}

TEST(Weyl, ParseWord) {
  EXPECT_EQ(parse_word("1,2"), (std::vector<int>{0, 1}));
  EXPECT_EQ(word_to_string({0, 2}), "1,3");
  EXPECT_TRUE(parse_word("").empty());
}
