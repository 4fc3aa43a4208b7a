#pragma once

// Seeded samplers shared by the certificate suite and the tests.

#include <random>
#include <vector>

#include "qw/slice.hpp"

namespace qw::sampling {

// small nonzero-heavy rationals: n/d with |n| <= 5, 1 <= d <= 3
inline Rational random_rational(std::mt19937& rng, bool nonzero = false) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 3);
  for (;;) {
    Rational x(num(rng), den(rng));
    if (!nonzero || !x.is_zero()) return x;
  }
}

inline std::vector<Rational> random_torus(std::mt19937& rng, int rank) {
  std::vector<Rational> c;
  for (int j = 0; j < rank; ++j) c.push_back(random_rational(rng, true));
  return c;
}

// random word of one-parameter, torus and Weyl factors
inline GroupElement<Rational> random_word(std::mt19937& rng, const RootSystem& rs, int length) {
  std::uniform_int_distribution<int> kind(0, 5), root(0, rs.num_roots() - 1), simple(0, rs.rank() - 1), coin(0, 1);
  GroupElement<Rational> g;
  for (int k = 0; k < length; ++k) {
    int t = kind(rng);
    if (t <= 3) g = g * GroupElement<Rational>::one_param(root(rng), random_rational(rng));
    else if (t == 4) g = g * GroupElement<Rational>::torus(random_torus(rng, rs.rank()));
    else g = g * GroupElement<Rational>::weyl(simple(rng), coin(rng) == 1);
  }
  return g;
}


struct SliceSample {
  std::vector<Rational> t, ns, lower, y, upper;
  GroupElement<Rational> z;
  GroupElement<Rational> g;
};

inline SliceSample random_slice_sample(std::mt19937& rng, const SliceContext& ctx, bool zero_t = false) {
  SliceSample s;
  for (int p = 0; p < ctx.d; ++p) s.t.push_back(zero_t ? Rational(0) : random_rational(rng));
  for (std::size_t p = 0; p < ctx.ns_roots.size(); ++p) s.ns.push_back(random_rational(rng));
  for (std::size_t p = 0; p < ctx.levi_roots.size(); ++p) {
    s.lower.push_back(random_rational(rng));
    s.upper.push_back(random_rational(rng));
  }
  for (std::size_t p = 0; p < ctx.torus_directions.size(); ++p) s.y.push_back(random_rational(rng, true));
  s.z = z_element(ctx, s.lower, s.y, s.upper);
  s.g = slice_point(ctx, s.t, s.ns, s.z);
  return s;
}

// random element of N: one-parameter factors over Delta(n)
inline GroupElement<Rational> random_n(std::mt19937& rng, const SliceContext& ctx, int length) {
  std::uniform_int_distribution<int> pick(0, ctx.d - 1);
  GroupElement<Rational> u;
  for (int k = 0; k < length; ++k) u = u * GroupElement<Rational>::one_param(ctx.n_roots[pick(rng)], random_rational(rng));
  return u;
}

// random matrix coefficient (u, pi_i(g) v) with small integer vectors
inline GFunction random_coefficient(std::mt19937& rng, const ChevalleyBasis& cb) {
  std::uniform_int_distribution<int> mod(0, cb.root_system().rank() - 1), small(-2, 2);
  int i = mod(rng);
  int dim = cb.module(i).dim;
  Vec<Rational> u(dim), v(dim);
  for (int k = 0; k < dim; ++k) {
    u[k] = small(rng);
    v[k] = small(rng);
  }
  return GFunction::coefficient(cb, i, u, v);
}

}  // namespace qw::sampling
