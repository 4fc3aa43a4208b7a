#include <gtest/gtest.h>

#include <algorithm>

#include "qw/slice.hpp"
#include "random_util.hpp"

using namespace qw;
using qw::testing::random_coefficient;
using qw::testing::random_n;
using qw::testing::random_rational;
using qw::testing::random_slice_sample;
using qw::testing::SliceSample;

namespace {

struct Case {
  const char* type;
  std::vector<int> s;
};

const std::vector<Case> kCore{{"A1", {0}}, {"A2", {0, 1}}, {"B2", {0, 1}}};
const std::vector<Case> kMore{{"A2", {0}}, {"B2", {1}}, {"G2", {0, 1}}, {"A3", {0, 2}}, {"B2", {0, 1, 0, 1}}};

std::shared_ptr<const SliceContext> context(const Case& c) {
  RootSystem rs = RootSystem::from_name(c.type);
  return std::make_shared<const SliceContext>(make_slice_context(rs, WeylElement(rs, c.s)));
}

std::string label(const Case& c) { return std::string(c.type) + " s=" + word_to_string(c.s); }

bool contains(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

}  // namespace

TEST(Slice, ContextInvariants) {
  std::vector<Case> all = kCore;
  all.insert(all.end(), kMore.begin(), kMore.end());
  for (const Case& c : all) {
    auto ctx = context(c);
    const RootSystem& rs = ctx->rs();
    const Matrix<Rational>& s = ctx->cd.s.matrix();
    const std::vector<int>& seq = ctx->ao.base.sequence;
    ASSERT_EQ(ctx->d + static_cast<int>(ctx->levi_roots.size()), ctx->D) << label(c);
    for (int p = 0; p < ctx->d; ++p) EXPECT_EQ(ctx->n_roots[p], seq[p]);
    // Delta_0 is stable under s and contains none of Delta(n)
    for (int a : ctx->levi_roots) {
      int b = rs.apply(s, a);
      int pos = rs.is_positive(b) ? b : rs.negative(b);
      EXPECT_TRUE(contains(ctx->levi_roots, pos)) << label(c);
    }
    for (int a : ctx->n_roots) EXPECT_FALSE(contains(ctx->levi_roots, a));
    // Delta(n_s) closed under addition
    for (int a : ctx->ns_roots)
      for (int b : ctx->ns_roots) {
        IntVec sum = rs.root(a);
        for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += rs.root(b)[k];
        if (auto idx = rs.index_of(sum)) EXPECT_TRUE(contains(ctx->ns_roots, *idx)) << label(c);
      }
    // fixed cocharacters are fixed
    for (const IntVec& k : ctx->torus_directions) {
      Vec<Rational> v(k.begin(), k.end());
      EXPECT_EQ(ctx->cd.s.coroot_matrix(rs) * v, v);
    }
  }
}

TEST(Slice, CoxeterHasNoLevi) {
  for (const Case& c : {kCore[1], kCore[2]}) {
    auto ctx = context(c);
    EXPECT_TRUE(ctx->levi_roots.empty());
    EXPECT_TRUE(ctx->torus_directions.empty());
    EXPECT_EQ(ctx->d, ctx->D);
  }
}

TEST(Slice, A1Example) {
  auto ctx = context(kCore[0]);
  ASSERT_EQ(ctx->d, 1);
  const ChevalleyBasis& cb = *ctx->cb;
  // g = X(-t) z s^{-1} X(t), z = diag(y, 1/y) in the defining module
  for (Rational t : {Rational(3), Rational(-1, 2), Rational(0)}) {
    Rational y(2, 3);
    GroupElement<Rational> g = GroupElement<Rational>::one_param(0, -t) *
                               GroupElement<Rational>::torus({y}) * GroupElement<Rational>::weyl(0, true) *
                               GroupElement<Rational>::one_param(0, t);
    EXPECT_EQ(t_recursion(*ctx, evaluate_all(g, cb)), std::vector<Rational>{t});
    SliceFactorization f = slice_factorize(*ctx, evaluate_all(g, cb));
    EXPECT_EQ(evaluate_all(f.z, cb), evaluate_all(GroupElement<Rational>::torus({y}), cb));
  }
}

TEST(Slice, RoundTrip) {
  std::mt19937 rng(31);
  for (const Case& c : kCore) {
    auto ctx = context(c);
    const ChevalleyBasis& cb = *ctx->cb;
    for (int trial = 0; trial < 100; ++trial) {
      SliceSample s = random_slice_sample(rng, *ctx);
      Point<Rational> g = evaluate_all(s.g, cb);
      SliceFactorization f = slice_factorize(*ctx, g);
      ASSERT_EQ(f.t, s.t) << label(c);
      ASSERT_EQ(evaluate_all(reassemble(*ctx, f), cb), g) << label(c);
      ASSERT_EQ(evaluate_all(f.n_s * f.z, cb), evaluate_all(root_product(ctx->ns_roots, s.ns) * s.z, cb));
    }
  }
}

TEST(Slice, RoundTripWithLevi) {
  std::mt19937 rng(32);
  for (const Case& c : kMore) {
    auto ctx = context(c);
    const ChevalleyBasis& cb = *ctx->cb;
    for (int trial = 0; trial < 15; ++trial) {
      SliceSample s = random_slice_sample(rng, *ctx);
      Point<Rational> g = evaluate_all(s.g, cb);
      SliceFactorization f = slice_factorize(*ctx, g);
      ASSERT_EQ(f.t, s.t) << label(c);
      ASSERT_EQ(evaluate_all(reassemble(*ctx, f), cb), g) << label(c);
      ASSERT_EQ(evaluate_all(f.z, cb), evaluate_all(s.z, cb)) << label(c);
    }
  }
}

TEST(Slice, SlicePointsHaveZeroT) {
  std::mt19937 rng(33);
  for (const Case& c : kCore) {
    auto ctx = context(c);
    for (int trial = 0; trial < 10; ++trial) {
      SliceSample s = random_slice_sample(rng, *ctx, true);
      std::vector<Rational> t = t_recursion(*ctx, evaluate_all(s.g, *ctx->cb));
      EXPECT_EQ(t, std::vector<Rational>(ctx->d, Rational(0))) << label(c);
    }
  }
}

TEST(Slice, TorusTimesSInverse) {
  auto ctx = context(kMore[0]);  // A2, s = s_1
  ASSERT_FALSE(ctx->torus_directions.empty());
  std::vector<Rational> y(ctx->torus_directions.size(), Rational(5, 2));
  std::vector<Rational> zeros(ctx->levi_roots.size(), Rational(0));
  GroupElement<Rational> z = z_element(*ctx, zeros, y, zeros);
  GroupElement<Rational> g = z * GroupElement<Rational>::weyl_word(ctx->s_word).inverse();
  SliceFactorization f = slice_factorize(*ctx, evaluate_all(g, *ctx->cb));
  EXPECT_EQ(f.t, std::vector<Rational>(ctx->d, Rational(0)));
  for (const Rational& x : f.ns_coordinates) EXPECT_TRUE(x.is_zero());
  EXPECT_EQ(evaluate_all(f.n, *ctx->cb), evaluate_all(GroupElement<Rational>::identity(), *ctx->cb));
  EXPECT_EQ(evaluate_all(f.z, *ctx->cb), evaluate_all(z, *ctx->cb));
}

TEST(Slice, OutsideTheDomain) {
  auto ctx = context(kCore[0]);
  try {
    t_recursion(*ctx, evaluate_all(GroupElement<Rational>::identity(), *ctx->cb));
    FAIL();
  } catch (const MathError& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroDenominator);
  }
  GFunction pf = GFunction::project(ctx, GFunction::entry(*ctx->cb, 0, 0, 0));
  EXPECT_THROW(pf(evaluate_all(GroupElement<Rational>::identity(), *ctx->cb)), MathError);
}

TEST(Projection, ConstantsAndCentralFunctions) {
  std::mt19937 rng(34);
  for (const Case& c : kCore) {
    auto ctx = context(c);
    const ChevalleyBasis& cb = *ctx->cb;
    GFunction one = GFunction::project(ctx, GFunction(Rational(7, 3)));
    GFunction tr = GFunction::trace(cb, cb.root_system().rank() - 1);
    GFunction ptr = GFunction::project(ctx, tr);
    for (int trial = 0; trial < 10; ++trial) {
      Point<Rational> g = evaluate_all(random_slice_sample(rng, *ctx).g, cb);
      EXPECT_EQ(one(g), Rational(7, 3));
      EXPECT_EQ(ptr(g), tr(g)) << label(c);
      Point<Rational> u = evaluate_all(random_n(rng, *ctx, 3), cb);
      EXPECT_EQ(tr(u * g * inverse_point(u)), tr(g));
    }
  }
}

TEST(Projection, FixesSliceValues) {
  std::mt19937 rng(35);
  for (const Case& c : kCore) {
    auto ctx = context(c);
    const ChevalleyBasis& cb = *ctx->cb;
    for (int trial = 0; trial < 10; ++trial) {
      GFunction f = random_coefficient(rng, cb);
      Point<Rational> g = evaluate_all(random_slice_sample(rng, *ctx, true).g, cb);
      EXPECT_EQ(GFunction::project(ctx, f)(g), f(g));
    }
  }
}

TEST(Projection, IdempotentAndNInvariant) {
  std::mt19937 rng(36);
  for (const Case& c : kCore) {
    auto ctx = context(c);
    const ChevalleyBasis& cb = *ctx->cb;
    for (int point = 0; point < 50; ++point) {
      GFunction f = random_coefficient(rng, cb) * random_coefficient(rng, cb) + random_coefficient(rng, cb);
      GFunction pf = GFunction::project(ctx, f);
      GFunction ppf = GFunction::project(ctx, pf);
      Point<Rational> g = evaluate_all(random_slice_sample(rng, *ctx).g, cb);
      Rational value = pf(g);
      ASSERT_EQ(ppf(g), value) << label(c);
      for (int k = 0; k < 20; ++k) {
        Point<Rational> u = evaluate_all(random_n(rng, *ctx, 4), cb);
        ASSERT_EQ(pf(u * g * inverse_point(u)), value) << label(c);
      }
    }
  }
}

TEST(Projection, AgreesWithFactorization) {
  std::mt19937 rng(37);
  std::vector<Case> all = kCore;
  all.insert(all.end(), kMore.begin(), kMore.end());
  for (const Case& c : all) {
    auto ctx = context(c);
    const ChevalleyBasis& cb = *ctx->cb;
    for (int trial = 0; trial < 10; ++trial) {
      GFunction f = random_coefficient(rng, cb);
      Point<Rational> g = evaluate_all(random_slice_sample(rng, *ctx).g, cb);
      SliceFactorization fac = slice_factorize(*ctx, g);
      GroupElement<Rational> m = fac.n_s * fac.z * GroupElement<Rational>::weyl_word(ctx->s_word).inverse();
      EXPECT_EQ(GFunction::project(ctx, f)(g), f(evaluate_all(m, cb))) << label(c);
    }
  }
}

TEST(Projection, JetsAgreeAtZero) {
  std::mt19937 rng(38);
  auto ctx = context(kCore[1]);
  const ChevalleyBasis& cb = *ctx->cb;
  GFunction pf = GFunction::project(ctx, random_coefficient(rng, cb));
  Point<Rational> g = evaluate_all(random_slice_sample(rng, *ctx).g, cb);
  Point<Jet<Rational>> gj = lift_point<Jet<Rational>>(g);
  EXPECT_EQ(pf(gj).value, pf(g));
  EXPECT_TRUE(pf(gj).derivative.is_zero());
}
