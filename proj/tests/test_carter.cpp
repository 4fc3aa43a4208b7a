#include <gtest/gtest.h>

#include <set>

#include "qw/carter.hpp"

using namespace qw;

namespace {

CarterDecomposition roots_to_dec(const RootSystem& rs, std::vector<IntVec> g1, std::vector<IntVec> g2) {
  CarterDecomposition d;
  for (auto& r : g1) d.gamma1.push_back(rs.require_index(r));
  for (auto& r : g2) d.gamma2.push_back(rs.require_index(r));
  return d;
}

bool in_span(const std::vector<QVec>& basis, const QVec& v) {
  std::vector<QVec> cols = basis;
  std::size_t r0 = rank(Matrix<QuadraticNumber>::from_columns(cols, v.size()));
  cols.push_back(v);
  return rank(Matrix<QuadraticNumber>::from_columns(cols, v.size())) == r0;
}

QuadraticNumber form_q(const RootSystem& rs, const QVec& x, const QVec& y) {
  QuadraticNumber r(0);
  for (int i = 0; i < rs.rank(); ++i)
    for (int j = 0; j < rs.rank(); ++j) r += x[i] * QuadraticNumber(rs.form()(i, j)) * y[j];
  return r;
}

void check_class(const RootSystem& rs, const WeylElement& s) {
  SCOPED_TRACE(rs.name() + " s=" + word_to_string(s.word()));
  CarterDecomposition dec = carter_decompose(rs, s);
  std::string why;
  ASSERT_TRUE(is_valid_carter(rs, s, dec, &why)) << why;
  Matrix<Rational> s1 = reflection_product(rs, dec.gamma1);
  Matrix<Rational> s2 = reflection_product(rs, dec.gamma2);
  EXPECT_EQ(s1 * s2, s.matrix());

  SpectralDecomposition sp = invariant_subspaces(rs, s, dec);
  PositiveSystemS ps = associated_positive_system(rs, s, sp, 0);
  std::vector<QVec> all;
  for (const InvariantSubspace& sub : sp.subspaces) {
    for (const QVec& b : sub.basis) {
      for (const Matrix<Rational>& m : {s.matrix(), s1, s2})
        EXPECT_TRUE(in_span(sub.basis, Matrix<QuadraticNumber>::lift(m) * b));
      all.push_back(b);
    }
    if (sub.kind == InvariantSubspace::Kind::Line) EXPECT_EQ(sub.s1_sign, 1);  // no -1 lines of s1 remain
    for (int a = 0; a < rs.num_roots(); ++a) {
      bool orth = true;
      for (const QVec& b : sub.basis) orth = orth && is_zero(pair(rs, b, a));
      if (!orth) EXPECT_FALSE(is_zero(pair(rs, sub.h, a)));
    }
  }
  ASSERT_EQ(static_cast<int>(all.size()), rs.rank());
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j) EXPECT_TRUE(is_zero(form_q(rs, all[i], all[j])));

  for (const StratumInequality& q : ps.inequalities) EXPECT_EQ(q.certificate.sign, 1);
  std::set<int> pos(ps.positive.begin(), ps.positive.end());
  for (int a = 0; a < rs.num_positive(); ++a) EXPECT_NE(pos.count(a), pos.count(rs.negative(a)));
  int covered = 0;
  for (std::size_t k = 0; k < ps.strata.size(); ++k) {
    covered += static_cast<int>(ps.strata[k].size());
    for (int a : ps.strata[k]) EXPECT_EQ(ps.stratum_of[rs.apply(s.matrix(), a)], static_cast<int>(k));
  }
  EXPECT_EQ(covered, rs.num_roots());
  for (int a = 0; a < rs.num_roots(); ++a) {
    bool fixed = rs.apply(s.matrix(), a) == a;
    bool in0 = ps.stratum_subspace[ps.stratum_of[a]] == 0;
    EXPECT_EQ(fixed, in0);
    if (fixed_roots_condition(rs, s, dec) && rs.apply(s2, a) == a) EXPECT_TRUE(fixed);
  }

  // adapted frame
  ClassData cd = prepare_class(rs, s, dec, 0);
  EXPECT_EQ(WeylElement(rs, cd.s.word()), cd.s);
  EXPECT_EQ(cd.s1.matrix() * cd.s2.matrix(), cd.s.matrix());
  for (int a = 0; a < rs.num_roots(); ++a) {
    EXPECT_EQ(pos.count(a) == 1, rs.is_positive(cd.to_adapted[a]));
  }
  for (int g : cd.gamma1) EXPECT_TRUE(rs.is_positive(g));
  for (int g : cd.gamma2) EXPECT_TRUE(rs.is_positive(g));
  EXPECT_EQ(reflection_product(rs, cd.gamma1), cd.s1.matrix());
  EXPECT_EQ(reflection_product(rs, cd.gamma2), cd.s2.matrix());
}

}  // namespace

TEST(Carter, Identity) {
  RootSystem a2 = RootSystem::from_name("A2");
  WeylElement id = WeylElement::identity(a2);
  CarterDecomposition d = carter_decompose(a2, id);
  EXPECT_TRUE(d.gamma1.empty());
  EXPECT_TRUE(d.gamma2.empty());
  SpectralDecomposition sp = invariant_subspaces(a2, id, d);
  ASSERT_EQ(sp.subspaces.size(), 1u);
  EXPECT_EQ(sp.subspaces[0].basis.size(), 2u);
  PositiveSystemS ps = associated_positive_system(a2, id, sp);
  EXPECT_EQ(ps.positive.size(), 3u);
  ASSERT_EQ(ps.strata.size(), 1u);
  EXPECT_EQ(ps.strata[0].size(), 6u);
}

TEST(Carter, SingleReflectionInA2GoesToSecondInvolution) {
  RootSystem a2 = RootSystem::from_name("A2");
  WeylElement s(a2, {0});
  CarterDecomposition d = carter_decompose(a2, s);
  EXPECT_EQ(d, roots_to_dec(a2, {}, {{1, 0}}));
  // the other candidate is rejected by the s2-fixed-root condition
  std::string why;
  EXPECT_FALSE(is_valid_carter(a2, s, roots_to_dec(a2, {{1, 0}}, {}), &why));
  EXPECT_FALSE(why.empty());
}

TEST(Carter, CoxeterA2) {
  RootSystem a2 = RootSystem::from_name("A2");
  WeylElement s(a2, {0, 1});
  CarterDecomposition d = carter_decompose(a2, s);
  EXPECT_EQ(d, roots_to_dec(a2, {{1, 0}}, {{0, 1}}));
  // oracle: the Coxeter matrix satisfies x^2 + x + 1 = 0
  Matrix<Rational> S = s.matrix();
  EXPECT_TRUE((S * S + S + Matrix<Rational>::identity(2)).is_zero());
  SpectralDecomposition sp = invariant_subspaces(a2, s, d);
  ASSERT_EQ(sp.subspaces.size(), 2u);
  EXPECT_TRUE(sp.subspaces[0].basis.empty());
  EXPECT_EQ(sp.subspaces[1].kind, InvariantSubspace::Kind::Plane);
  EXPECT_EQ(sp.subspaces[1].angle, Rational(1, 3));
  PositiveSystemS ps = associated_positive_system(a2, s, sp);
  EXPECT_EQ(ps.positive.size(), 3u);
  ASSERT_EQ(ps.strata.size(), 1u);
  EXPECT_EQ(ps.strata[0].size(), 6u);
  EXPECT_EQ(ps.stratum_subspace[0], 1);
}

TEST(Carter, LongReflectionInB2) {
  RootSystem b2 = RootSystem::from_name("B2");
  WeylElement s(b2, {0});
  CarterDecomposition d = carter_decompose(b2, s);
  SpectralDecomposition sp = invariant_subspaces(b2, s, d);
  PositiveSystemS ps = associated_positive_system(b2, s, sp);
  // oracle: roots orthogonal to alpha_1 by direct enumeration
  std::set<int> expected;
  for (int a = 0; a < b2.num_roots(); ++a)
    if (b2.inner_roots(a, 0).is_zero()) expected.insert(a);
  EXPECT_EQ(expected, (std::set<int>{b2.require_index({1, 2}), b2.require_index({-1, -2})}));
  ASSERT_EQ(ps.stratum_subspace[0], 0);
  EXPECT_EQ(std::set<int>(ps.strata[0].begin(), ps.strata[0].end()), expected);
  EXPECT_EQ(ps.strata.size(), 2u);
}

TEST(Carter, A3ReflectionPair) {
  RootSystem a3 = RootSystem::from_name("A3");
  WeylElement s(a3, {0, 2});
  CarterDecomposition d = carter_decompose(a3, s);
  SpectralDecomposition sp = invariant_subspaces(a3, s, d);
  EXPECT_EQ(sp.subspaces[0].basis.size(), 1u);
  int lines = 0;
  for (const auto& sub : sp.subspaces) lines += sub.kind == InvariantSubspace::Kind::Line;
  EXPECT_EQ(lines, 2);
}

TEST(Carter, CoxeterA4NeedsRootFive) {
  RootSystem a4 = RootSystem::from_name("A4");
  WeylElement s(a4, {0, 1, 2, 3});
  CarterDecomposition d = carter_decompose(a4, s);
  SpectralDecomposition sp = invariant_subspaces(a4, s, d);
  EXPECT_EQ(sp.radicand, 5);
  std::set<Rational> angles;
  for (const auto& sub : sp.subspaces)
    if (sub.kind == InvariantSubspace::Kind::Plane) angles.insert(sub.angle);
  EXPECT_EQ(angles, (std::set<Rational>{Rational(1, 5), Rational(2, 5)}));
  check_class(a4, s);
}

TEST(Carter, FixedRootsConditionFailsForCoxeterB2AndG2) {
  for (const char* n : {"B2", "G2"}) {
    RootSystem rs = RootSystem::from_name(n);
    WeylElement s(rs, {0, 1});
    std::vector<CarterDecomposition> all = carter_candidates(rs, s);
    ASSERT_FALSE(all.empty());
    for (const CarterDecomposition& d : all) EXPECT_FALSE(fixed_roots_condition(rs, s, d)) << n;
  }
  RootSystem a2 = RootSystem::from_name("A2");
  WeylElement c(a2, {0, 1});
  EXPECT_TRUE(fixed_roots_condition(a2, c, carter_decompose(a2, c)));
}

TEST(Carter, AllClassesSmallRank) {
  for (const char* n : {"A1", "A2", "B2", "G2", "A3", "A1xA1"}) {
    RootSystem rs = RootSystem::from_name(n);
    for (const WeylElement& s : conjugacy_class_representatives(rs)) check_class(rs, s);
  }
}

TEST(Carter, AllClassesRankThreeAndFour) {
  for (const char* n : {"B3", "C3", "D4", "A4"}) {
    RootSystem rs = RootSystem::from_name(n);
    for (const WeylElement& s : conjugacy_class_representatives(rs)) check_class(rs, s);
  }
}

TEST(Carter, SeedsChangeHButNotValidity) {
  RootSystem g2 = RootSystem::from_name("G2");
  WeylElement s(g2, {0, 1});
  CarterDecomposition d = carter_decompose(g2, s);
  for (unsigned seed : {0u, 1u, 7u}) {
    SpectralDecomposition sp = invariant_subspaces(g2, s, d);
    PositiveSystemS ps = associated_positive_system(g2, s, sp, seed);
    EXPECT_EQ(ps.positive.size(), 6u);
  }
}
