#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "qw/errors.hpp"
#include "qw/ordering.hpp"

using namespace qw;

namespace {

int idx(const RootSystem& rs, IntVec v) { return rs.require_index(v); }

// brute force over permutations of the positive roots
int count_normal_permutations(const RootSystem& rs) {
  std::vector<int> perm(rs.num_positive());
  for (int i = 0; i < rs.num_positive(); ++i) perm[i] = i;
  int count = 0;
  do {
    bool ok = true;
    for (int x = 0; x < rs.num_positive() && ok; ++x)
      for (int y = x + 1; y < rs.num_positive() && ok; ++y) {
        IntVec v(rs.rank());
        for (int i = 0; i < rs.rank(); ++i) v[i] = rs.root(perm[x])[i] + rs.root(perm[y])[i];
        auto g = rs.index_of(v);
        if (!g) continue;
        int pg = static_cast<int>(std::find(perm.begin(), perm.end(), *g) - perm.begin());
        if (!(pg > x && pg < y)) ok = false;
      }
    count += ok;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

std::vector<int> positions(const RootSystem& rs, const std::vector<int>& seq) {
  std::vector<int> pos(rs.num_roots(), -1);
  for (std::size_t p = 0; p < seq.size(); ++p) pos[seq[p]] = static_cast<int>(p);
  return pos;
}

// independent recomputation of the shape from lengths and inversion sets
void check_shape(const ClassData& cd, const AssociatedOrdering& ao) {
  const RootSystem& rs = cd.rs;
  SCOPED_TRACE(rs.name() + " s=" + word_to_string(cd.s_input.word()));
  EXPECT_FALSE(validate_normal(rs, ao.base.sequence).has_value());
  EXPECT_EQ(ordering_from_reduced_word(rs, ao.base.reduced_word), ao.base);
  int D = rs.num_positive();
  WeylAnalysis as = analyze(rs, cd.s), a1 = analyze(rs, cd.s1), a2 = analyze(rs, cd.s2);
  int D0 = 0;
  for (int a = 0; a < D; ++a) D0 += rs.apply(cd.s.matrix(), a) == a;
  int lprime = static_cast<int>(cd.gamma1.size() + cd.gamma2.size());
  EXPECT_EQ(as.length, a1.length + a2.length);
  EXPECT_EQ(ao.m_plus.size(), D - ((as.length - lprime) / 2 + D0));
  std::vector<int> pos = positions(rs, ao.base.sequence);
  for (int a : a1.inversion_set) EXPECT_LT(pos[a], a1.length);
  for (int a : a2.inversion_set) {
    EXPECT_GE(pos[a], D - D0 - a2.length);
    EXPECT_LT(pos[a], D - D0);
  }
  for (int a : as.inversion_set) EXPECT_GE(pos[a], D - D0 - as.length);
  for (int a = 0; a < D; ++a) {
    int sa = rs.apply(cd.s.matrix(), a);
    if (sa != a && rs.is_positive(sa)) EXPECT_GT(pos[sa], pos[a]);
  }
  if (!ao.gamma1.empty()) EXPECT_EQ(ao.base.sequence[ao.m_plus.begin], ao.gamma1.front());
  if (!ao.gamma2.empty()) EXPECT_EQ(ao.base.sequence[ao.m_plus.end - 1], ao.gamma2.back());
  for (const auto& c : ao.certificates) EXPECT_TRUE(c.second) << c.first;
}

}  // namespace

TEST(Normal, ValidateExamples) {
  RootSystem a1 = RootSystem::from_name("A1");
  EXPECT_FALSE(validate_normal(a1, {0}).has_value());
  RootSystem a2 = RootSystem::from_name("A2");
  int a = idx(a2, {1, 0}), b = idx(a2, {0, 1}), ab = idx(a2, {1, 1});
  EXPECT_FALSE(validate_normal(a2, {a, ab, b}).has_value());
  auto v = validate_normal(a2, {a, b, ab});
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->sum, ab);
}

TEST(Normal, FromReducedWord) {
  RootSystem a2 = RootSystem::from_name("A2");
  EXPECT_EQ(ordering_from_reduced_word(a2, parse_word("1,2,1")).sequence,
            (std::vector<int>{idx(a2, {1, 0}), idx(a2, {1, 1}), idx(a2, {0, 1})}));
  RootSystem b2 = RootSystem::from_name("B2");
  EXPECT_EQ(ordering_from_reduced_word(b2, parse_word("1,2,1,2")).sequence,
            (std::vector<int>{idx(b2, {1, 0}), idx(b2, {1, 1}), idx(b2, {1, 2}), idx(b2, {0, 1})}));
  EXPECT_GT(b2.norm2(0), b2.norm2(1));
  RootSystem a1 = RootSystem::from_name("A1");
  EXPECT_EQ(ordering_from_reduced_word(a1, {0}).sequence, std::vector<int>{0});
}

TEST(Normal, FromReducedWordErrors) {
  RootSystem a2 = RootSystem::from_name("A2");
  try {
    ordering_from_reduced_word(a2, {0, 0, 1});
    FAIL();
  } catch (const MathError& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotReduced);
  }
  try {
    ordering_from_reduced_word(a2, {0, 1});
    FAIL();
  } catch (const MathError& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotLongest);
  }
}

TEST(Normal, CountsMatchPermutationOracle) {
  for (const char* n : {"A1", "A2", "B2", "G2", "A1xA1", "A3"}) {
    RootSystem rs = RootSystem::from_name(n);
    std::vector<NormalOrdering> all = all_normal_orderings(rs);
    EXPECT_EQ(static_cast<int>(all.size()), count_normal_permutations(rs)) << n;
    for (const NormalOrdering& o : all) EXPECT_FALSE(validate_normal(rs, o.sequence).has_value());
  }
  EXPECT_EQ(all_normal_orderings(RootSystem::from_name("A2")).size(), 2u);
  EXPECT_EQ(all_normal_orderings(RootSystem::from_name("A3")).size(), 16u);
}

TEST(Normal, SampledReducedWordsB3AndD4) {
  for (const char* n : {"B3", "D4"}) {
    RootSystem rs = RootSystem::from_name(n);
    std::vector<NormalOrdering> all = all_normal_orderings(rs);
    for (std::size_t k = 0; k < all.size(); k += 37) EXPECT_FALSE(validate_normal(rs, all[k].sequence).has_value());
  }
}

TEST(Transpositions, A2Single) {
  RootSystem a2 = RootSystem::from_name("A2");
  NormalOrdering o = ordering_from_reduced_word(a2, {0, 1, 0});
  auto ts = elementary_transpositions(a2, o);
  ASSERT_EQ(ts.size(), 1u);
  EXPECT_EQ(ts[0].result.sequence, (std::vector<int>{idx(a2, {0, 1}), idx(a2, {1, 1}), idx(a2, {1, 0})}));
  EXPECT_TRUE(is_rank2_pattern(a2, o.sequence));
}

TEST(Transpositions, OrthogonalPairSwaps) {
  RootSystem rs = RootSystem::from_name("A1xA1");
  NormalOrdering o = ordering_from_reduced_word(rs, {0, 1});
  auto ts = elementary_transpositions(rs, o);
  ASSERT_EQ(ts.size(), 1u);
  EXPECT_EQ(ts[0].result.sequence, (std::vector<int>{1, 0}));
  EXPECT_TRUE(is_rank2_pattern(rs, o.sequence));
}

TEST(Transpositions, SegmentsAreRankTwoPatterns) {
  for (const char* n : {"A2", "B2", "G2", "A3", "B3"}) {
    RootSystem rs = RootSystem::from_name(n);
    for (const NormalOrdering& o : all_normal_orderings(rs)) {
      for (const Transposition& t : elementary_transpositions(rs, o)) {
        std::vector<int> seg(o.sequence.begin() + t.begin, o.sequence.begin() + t.end);
        EXPECT_TRUE(is_rank2_pattern(rs, seg)) << n;
        std::vector<int> expect = o.sequence;
        std::reverse(expect.begin() + t.begin, expect.begin() + t.end);
        EXPECT_EQ(t.result.sequence, expect);
        EXPECT_FALSE(validate_normal(rs, t.result.sequence).has_value());
      }
    }
  }
}

TEST(Transpositions, GraphConnected) {
  for (const char* n : {"A2", "B2", "G2", "A3"}) {
    RootSystem rs = RootSystem::from_name(n);
    std::vector<NormalOrdering> all = all_normal_orderings(rs);
    std::set<std::vector<int>> seen{all[0].sequence};
    std::queue<NormalOrdering> q;
    q.push(all[0]);
    while (!q.empty()) {
      NormalOrdering o = q.front();
      q.pop();
      for (const Transposition& t : elementary_transpositions(rs, o))
        if (seen.insert(t.result.sequence).second) q.push(t.result);
    }
    EXPECT_EQ(seen.size(), all.size()) << n;
  }
}

TEST(Circular, Examples) {
  RootSystem a2 = RootSystem::from_name("A2");
  NormalOrdering o = ordering_from_reduced_word(a2, {0, 1, 0});
  CircularOrdering c(a2, o);
  int b1 = o.sequence.front(), bD = o.sequence.back();
  EXPECT_TRUE(circular_less(b1, bD, c));
  EXPECT_TRUE(circular_less(bD, a2.negative(b1), c));
  int a1 = idx(a2, {1, 0}), a2r = idx(a2, {0, 1});
  EXPECT_EQ(c.minimal_segment(a2r, a2.negative(a1)), (std::vector<int>{a2r, a2.negative(a1)}));
}

TEST(Circular, AntisymmetryAndSumsBetween) {
  for (const char* n : {"A2", "B2", "G2", "A3"}) {
    RootSystem rs = RootSystem::from_name(n);
    for (const NormalOrdering& o : all_normal_orderings(rs)) {
      CircularOrdering c(rs, o);
      for (int a = 0; a < rs.num_roots(); ++a) {
        for (int b = 0; b < rs.num_roots(); ++b) {
          if (a == b || a == rs.negative(b)) continue;
          if (c.is_minimal(a, b)) EXPECT_FALSE(c.is_minimal(b, a));
          IntVec v(rs.rank());
          for (int i = 0; i < rs.rank(); ++i) v[i] = rs.root(a)[i] + rs.root(b)[i];
          auto g = rs.index_of(v);
          if (g && c.is_minimal(a, b)) {
            EXPECT_TRUE(c.is_minimal(a, *g));
            EXPECT_TRUE(c.is_minimal(*g, b));
          }
        }
      }
    }
  }
}

TEST(Associated, Identity) {
  RootSystem a2 = RootSystem::from_name("A2");
  auto [cd, ao] = associate(a2, WeylElement::identity(a2));
  EXPECT_EQ(ao.m_plus.size(), 0);
  EXPECT_EQ(ao.fixed, (Range{0, 3}));
  EXPECT_TRUE(ao.all_certified());
}

TEST(Associated, CoxeterA2) {
  RootSystem a2 = RootSystem::from_name("A2");
  auto [cd, ao] = associate(a2, WeylElement(a2, {0, 1}));
  // D = 3, l(s) = 2, l' = 2, D_0 = 0
  EXPECT_EQ(ao.length_s, 2);
  EXPECT_EQ(ao.lprime, 2);
  EXPECT_EQ(ao.m_plus.size(), 3);
  check_shape(cd, ao);
}

TEST(Associated, ReflectionA1) {
  RootSystem a1 = RootSystem::from_name("A1");
  auto [cd, ao] = associate(a1, WeylElement(a1, {0}));
  EXPECT_EQ(ao.base.sequence, std::vector<int>{0});
  EXPECT_EQ(ao.m_plus.size(), 1);
  EXPECT_EQ(cd.gamma1.size() + cd.gamma2.size(), 1u);
}

TEST(Associated, AllClassesRankTwo) {
  for (const char* n : {"A2", "B2", "G2", "A1xA1"}) {
    RootSystem rs = RootSystem::from_name(n);
    for (const WeylElement& s : conjugacy_class_representatives(rs)) {
      auto [cd, ao] = associate(rs, s);
      check_shape(cd, ao);
    }
  }
}

TEST(Associated, AllClassesRankThreeAndFour) {
  for (const char* n : {"A3", "B3", "C3", "D4", "A4"}) {
    RootSystem rs = RootSystem::from_name(n);
    for (const WeylElement& s : conjugacy_class_representatives(rs)) {
      auto [cd, ao] = associate(rs, s);
      check_shape(cd, ao);
    }
  }
}

TEST(Associated, OtherSeeds) {
  for (const char* n : {"B2", "G2", "A3"}) {
    RootSystem rs = RootSystem::from_name(n);
    for (unsigned seed : {1u, 2u, 5u})
      for (const WeylElement& s : conjugacy_class_representatives(rs)) {
        auto [cd, ao] = associate(rs, s, seed);
        check_shape(cd, ao);
      }
  }
}

TEST(Associated, DeterministicFirstMatch) {
  RootSystem b2 = RootSystem::from_name("B2");
  WeylElement s(b2, {0, 1});
  auto r1 = associate(b2, s).second;
  auto r2 = associate(b2, s).second;
  EXPECT_EQ(r1.base.reduced_word, r2.base.reduced_word);
  EXPECT_EQ(r1.choice, "lexicographically first reduced word");
}

TEST(Associated, RejectsBadOrdering) {
  RootSystem a2 = RootSystem::from_name("A2");
  auto [cd, ao] = associate(a2, WeylElement(a2, {0, 1}));
  for (const NormalOrdering& o : all_normal_orderings(a2)) {
    if (o == ao.base) continue;
    bool all = true;
    for (const auto& c : certify_associated(cd, o)) all = all && c.second;
    EXPECT_FALSE(all);
  }
}

// projections of the positive roots of a stratum onto its plane
TEST(RayFamilies, ClosedAndSumsBetweenRays) {
  for (const char* n : {"A2", "B2", "G2", "A3", "B3", "A4"}) {
    RootSystem rs = RootSystem::from_name(n);
    for (const WeylElement& s : conjugacy_class_representatives(rs)) {
      CarterDecomposition dec = carter_decompose(rs, s);
      SpectralDecomposition sp = invariant_subspaces(rs, s, dec);
      PositiveSystemS ps = associated_positive_system(rs, s, sp, 0);
      std::set<int> pos(ps.positive.begin(), ps.positive.end());
      for (std::size_t k = 0; k < ps.strata.size(); ++k) {
        const InvariantSubspace& sub = sp.subspaces[ps.stratum_subspace[k]];
        if (sub.kind != InvariantSubspace::Kind::Plane) continue;
        std::map<int, std::pair<QuadraticNumber, QuadraticNumber>> proj;
        for (int a : ps.strata[k])
          if (pos.count(a)) proj[a] = {pair(rs, sub.basis[0], a), pair(rs, sub.basis[1], a)};
        auto cross = [&](int a, int b) { return proj[a].first * proj[b].second - proj[a].second * proj[b].first; };
        auto same_ray = [&](int a, int b) {
          return is_zero(cross(a, b)) && sign(proj[a].first * proj[b].first + proj[a].second * proj[b].second) > 0;
        };
        for (auto& [a, pa] : proj)
          for (auto& [b, pb] : proj) {
            if (a >= b) continue;
            IntVec v(rs.rank());
            for (int i = 0; i < rs.rank(); ++i) v[i] = rs.root(a)[i] + rs.root(b)[i];
            auto g = rs.index_of(v);
            if (!g) continue;
            ASSERT_TRUE(proj.count(*g)) << n;
            if (same_ray(a, b)) {
              EXPECT_TRUE(same_ray(a, *g));
            } else {
              int s12 = sign(cross(a, b));
              EXPECT_EQ(sign(cross(a, *g)), s12);
              EXPECT_EQ(sign(cross(*g, b)), s12);
            }
          }
      }
    }
  }
}
