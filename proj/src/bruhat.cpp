#include "qw/bruhat.hpp"

namespace qw {

namespace {

// coefficient k with x = k y, y nonzero
Rational proportionality(const Vec<Rational>& x, const Vec<Rational>& y) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i].is_zero()) continue;
    Rational k = x[i] / y[i];
    if (sub(x, scale(k, y)) != Vec<Rational>(x.size(), Rational(0)))
      throw MathError(ErrorCode::InvalidArgument, "vectors are not proportional");
    return k;
  }
  throw MathError(ErrorCode::InvalidArgument, "zero reference vector");
}

}  // namespace

WordData word_data(const ChevalleyBasis& cb, const std::vector<int>& word) {
  const RootSystem& rs = cb.root_system();
  WordData wd;
  wd.word = word;
  Matrix<Rational> w = Matrix<Rational>::identity(rs.rank());
  std::vector<Matrix<Rational>> rep;  // w_{p-1} in each module
  for (const HWModule& m : cb.modules()) rep.push_back(Matrix<Rational>::identity(m.dim));
  for (int i : word) {
    int beta = rs.apply(w, i);
    if (!rs.is_positive(beta)) throw MathError(ErrorCode::NotReduced, word_to_string(word));
    const HWModule& m = cb.module(i);
    Vec<Rational> v(m.dim, Rational(0));
    v[0] = 1;
    Vec<Rational> up = rep[i] * v;
    for (std::size_t k = 0; k < rep.size(); ++k) rep[k] = rep[k] * cb.module(k).weyl[i];
    Vec<Rational> low = rep[i] * v;
    Rational kappa = proportionality(m.root_vectors[beta] * low, up);
    Vec<Rational> x1 = evaluate(GroupElement<Rational>::one_param(beta, Rational(1)), m) * low;
    Rational ratio = contravariant_pair(m, up, x1) / contravariant_pair(m, low, x1);
    wd.beta.push_back(beta);
    wd.module.push_back(i);
    wd.upper.push_back(up);
    wd.lower.push_back(low);
    wd.c.push_back(1 / kappa);
    wd.d.push_back(1 / ratio);
    w = w * rs.reflection(i);
  }
  return wd;
}

std::vector<int> representative_word(const RootSystem& rs, const WeylElement& w) {
  if (analyze(rs, w).length == static_cast<int>(w.word().size())) return w.word();
  return reduced_word(rs, w.matrix());
}

std::vector<int> extend_to_longest(const RootSystem& rs, const std::vector<int>& prefix) {
  WeylElement w(rs, prefix);
  if (analyze(rs, w).length != static_cast<int>(prefix.size()))
    throw MathError(ErrorCode::NotReduced, word_to_string(prefix));
  Matrix<Rational> rest = w.inverse(rs).matrix() * WeylElement::longest(rs).matrix();
  std::vector<int> word = prefix;
  for (int i : reduced_word(rs, rest)) word.push_back(i);
  return word;
}

bool is_torus_point(const ChevalleyBasis& cb, const Point<Rational>& p, std::vector<Rational>* c) {
  std::vector<Rational> h;
  for (const Matrix<Rational>& m : p) h.push_back(m(0, 0));
  for (const Rational& x : h)
    if (x.is_zero()) return false;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != torus_matrix(cb.module(i), h)) return false;
  if (c) *c = h;
  return true;
}

CellCoordinates cell_coordinates(const ChevalleyBasis& cb, const Point<Rational>& g, const WeylElement& w,
                                 std::vector<int> full_word) {
  const RootSystem& rs = cb.root_system();
  CellCoordinates cc;
  cc.w_word = representative_word(rs, w);
  if (full_word.empty()) full_word = extend_to_longest(rs, cc.w_word);
  if (!std::equal(cc.w_word.begin(), cc.w_word.end(), full_word.begin()))
    throw MathError(ErrorCode::InvalidArgument, "ordering does not start with the inversions of w^{-1}");
  cc.ordering = ordering_from_reduced_word(rs, full_word);
  WordData wd = word_data(cb, full_word);
  cc.c = wd.c;
  cc.d = wd.d;
  int k = static_cast<int>(cc.w_word.size());
  cc.q = cell_coordinates_q(cb, g, wd, k);

  // g n_{w^{-1}}^{-1} w = n (w^{-1} h w)
  GroupElement<Rational> nq_inv = root_product(wd.beta, cc.q, true).inverse();
  GroupElement<Rational> wrep = GroupElement<Rational>::weyl_word(cc.w_word);
  Point<Rational> m = g * evaluate_all(nq_inv * wrep, cb);
  cc.r = unipotent_coordinates(cb, m, wd);

  GroupElement<Rational> n = root_product(wd.beta, cc.r);
  Point<Rational> h = evaluate_all(wrep * n.inverse(), cb) * g * evaluate_all(nq_inv, cb);
  if (!is_torus_point(cb, h, &cc.h)) throw MathError(ErrorCode::InvalidArgument, "recovered h is not in the torus");
  return cc;
}

GroupElement<Rational> assemble_cell_element(const RootSystem& rs, const std::vector<int>& w_word,
                                             const NormalOrdering& ordering, const std::vector<Rational>& h,
                                             const std::vector<Rational>& q, const std::vector<Rational>& r) {
  if (static_cast<int>(h.size()) != rs.rank() || q.size() != w_word.size() ||
      r.size() != ordering.sequence.size())
    throw MathError(ErrorCode::InvalidArgument, "coordinate lengths do not match");
  return root_product(ordering.sequence, r) * GroupElement<Rational>::weyl_word(w_word).inverse() *
         GroupElement<Rational>::torus(h) * root_product(ordering.sequence, q, true);
}

}  // namespace qw
