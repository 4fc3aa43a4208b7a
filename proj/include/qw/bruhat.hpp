#pragma once

#include <vector>

#include "qw/ordering.hpp"
#include "qw/repbuilder.hpp"

namespace qw {

/// (u, M v) for the contravariant form of a module.
template <class T>
T form_pair(const HWModule& m, const Vec<Rational>& u, const Matrix<T>& a, const Vec<Rational>& v) {
  Vec<T> av(m.dim, T(0));
  for (int i = 0; i < m.dim; ++i)
    for (int j = 0; j < m.dim; ++j)
      if (!v[j].is_zero() && !is_zero(a(i, j))) av[i] = av[i] + a(i, j) * T(v[j]);
  Vec<T> gu(m.dim, T(0));
  for (int i = 0; i < m.dim; ++i)
    for (int j = 0; j < m.dim; ++j)
      if (!u[i].is_zero() && !m.gram(i, j).is_zero()) gu[j] = gu[j] + T(u[i] * m.gram(i, j));
  return dot(gu, av);
}

/// Data attached to a reduced word i_1..i_n: beta_p, the module omega_{i_p},
/// the extremal vectors w_p v and w_{p-1} v with w_p = s_{i_1}..s_{i_p}, and
/// the measured constants.
struct WordData {
  std::vector<int> word;
  std::vector<int> beta;
  std::vector<int> module;
  std::vector<Vec<Rational>> upper;  // w_{p-1} v
  std::vector<Vec<Rational>> lower;  // w_p v
  std::vector<Rational> c;           // X_beta w_p v = (1/c_p) w_{p-1} v
  std::vector<Rational> d;           // 1/d_p = ratio (w_{p-1}v, X_beta(1) w_p v) / (w_p v, X_beta(1) w_p v)
  int size() const { return static_cast<int>(word.size()); }
};

/// Throws NotReduced if the word is not reduced.
WordData word_data(const ChevalleyBasis& cb, const std::vector<int>& word);

/// The stored word of w if it is reduced, otherwise the reduced word of its matrix.
std::vector<int> representative_word(const RootSystem& rs, const WeylElement& w);

/// A reduced word of the longest element beginning with the given reduced word.
std::vector<int> extend_to_longest(const RootSystem& rs, const std::vector<int>& prefix);

/// Coordinates of g = n w^{-1} h n_{w^{-1}} with n = X_{beta_1}(r_1)..X_{beta_D}(r_D)
/// and n_{w^{-1}} = X_{beta_k}(q_k)..X_{beta_1}(q_1).
struct CellCoordinates {
  std::vector<int> w_word;
  NormalOrdering ordering;
  std::vector<Rational> q;
  std::vector<Rational> r;
  std::vector<Rational> h;
  std::vector<Rational> c;  // measured constants, per position of the ordering
  std::vector<Rational> d;
};

/// q_p by the inductive formula; the first k letters of `full` spell w.
template <class T>
std::vector<T> cell_coordinates_q(const ChevalleyBasis& cb, const Point<T>& g, const WordData& full, int k) {
  std::vector<int> w_word(full.word.begin(), full.word.begin() + k);
  GroupElement<T> wrep = GroupElement<T>::weyl_word(w_word);
  Point<T> m = evaluate_all(wrep, cb) * g;  // w g X_{beta_1}(-q_1)...
  std::vector<T> q;
  for (int p = 0; p < k; ++p) {
    const HWModule& mod = cb.module(full.module[p]);
    const Matrix<T>& a = m[full.module[p]];
    T den = form_pair(mod, full.upper[p], a, full.upper[p]);
    if (!invertible(den)) throw MathError(ErrorCode::ZeroDenominator, "q_" + std::to_string(p + 1));
    T qp = T(full.c[p]) * form_pair(mod, full.upper[p], a, full.lower[p]) / den;
    q.push_back(qp);
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = m[i] * exp_root(cb.module(i), full.beta[p], -qp);
  }
  return q;
}

/// q, r and h. `full_word` is a reduced word of the longest element starting
/// with the representative word of w; empty means extend_to_longest.
CellCoordinates cell_coordinates(const ChevalleyBasis& cb, const Point<Rational>& g, const WeylElement& w,
                                 std::vector<int> full_word = {});

/// r_p for n h with n in N and h in the torus, along a reduced word of the
/// longest element.
template <class T>
std::vector<T> unipotent_coordinates(const ChevalleyBasis& cb, const Point<T>& nh, const WordData& full) {
  std::vector<T> r;
  for (int p = 0; p < full.size(); ++p) {
    const HWModule& mod = cb.module(full.module[p]);
    const Matrix<T>& a = nh[full.module[p]];
    T den = form_pair(mod, full.lower[p], a, full.lower[p]);
    if (!invertible(den)) throw MathError(ErrorCode::ZeroDenominator, "r_" + std::to_string(p + 1));
    r.push_back(T(full.d[p]) * form_pair(mod, full.upper[p], a, full.lower[p]) / den);
  }
  return r;
}

/// X_{beta_1}(r_1) .. X_{beta_n}(r_n) along the roots of a word.
template <class T>
GroupElement<T> root_product(const std::vector<int>& roots, const std::vector<T>& t, bool reversed = false) {
  GroupElement<T> g;
  for (std::size_t k = 0; k < t.size(); ++k) {
    std::size_t p = reversed ? t.size() - 1 - k : k;
    g = g * GroupElement<T>::one_param(roots[p], t[p]);
  }
  return g;
}

/// n w^{-1} h n_{w^{-1}} in factor form.
GroupElement<Rational> assemble_cell_element(const RootSystem& rs, const std::vector<int>& w_word,
                                             const NormalOrdering& ordering, const std::vector<Rational>& h,
                                             const std::vector<Rational>& q, const std::vector<Rational>& r);

/// True if every module matrix is diagonal with the torus values of c.
bool is_torus_point(const ChevalleyBasis& cb, const Point<Rational>& p, std::vector<Rational>* c = nullptr);

}  // namespace qw
