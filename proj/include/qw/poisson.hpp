#pragma once

#include <memory>
#include <vector>

#include "qw/slice.hpp"

namespace qw {

/// r = P_+ - P_- - (1+s)/(1-s) P_{h'} on g, in the Chevalley basis.
struct RMatrix {
  std::shared_ptr<const ChevalleyBasis> cb;
  WeylElement s;
  Rational lambda{1};
  Matrix<Rational> r, r_plus, r_minus;
  Matrix<Rational> p_plus, p_minus, p_h;  // p_h projects onto h' along its orthogonal complement in h
  Matrix<Rational> cayley;                // (1+s)/(1-s) P_{h'} on h, coroot coordinates
  Matrix<Rational> form, form_inverse;    // invariant form scaled by lambda
  // G* torus cocharacters: kappa_j = scale * h_j, and r_{+-} kappa_j in coroot coordinates
  int cocharacter_scale = 1;
  std::vector<IntVec> plus_cocharacters, minus_cocharacters;

  const ChevalleyBasis& basis() const { return *cb; }
  int dim() const { return cb->dim(); }
};

RMatrix build_r(std::shared_ptr<const ChevalleyBasis> cb, const WeylElement& s, const Rational& lambda = Rational(1));
RMatrix build_r(const SliceContext& ctx, const Rational& lambda = Rational(1));

struct RCertificate {
  bool plus_identity = false;   // r = id on n_+
  bool minus_identity = false;  // r = -id on n_-
  bool fixed_zero = false;      // r = 0 on the s-fixed part of h
  bool skew = false;            // <rX, Y> = -<X, rY>
  bool mcybe = false;           // [rX,rY] - r([rX,Y] + [X,rY]) = -[X,Y] on basis pairs
  int mcybe_failures = 0;
  bool ok() const { return plus_identity && minus_identity && fixed_zero && skew && mcybe; }
};
RCertificate certify(const RMatrix& rm);

template <class T>
Vec<T> apply_matrix(const Matrix<Rational>& a, const Vec<T>& x) {
  Vec<T> y(a.rows(), T(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_zero() && !is_zero(x[j])) y[i] = y[i] + T(a(i, j)) * x[j];
  return y;
}

template <class T>
T pairing(const RMatrix& rm, const Vec<T>& x, const Vec<T>& y) {
  return dot(x, apply_matrix(rm.form, y));
}

/// [X,Y]_* = ([rX,Y] + [X,rY]) / 2.
Vec<Rational> star_bracket(const RMatrix& rm, const Vec<Rational>& x, const Vec<Rational>& y);

/// Ad(g) on g in the Chevalley basis.
template <class T>
Matrix<T> adjoint(const ChevalleyBasis& cb, const Point<T>& g) {
  Point<T> ginv = inverse_point(g);
  int n = cb.dim();
  Matrix<T> ad(n, n);
  for (int a = 0; a < n; ++a) {
    Point<T> conj;
    for (std::size_t i = 0; i < g.size(); ++i) conj.push_back(g[i] * Matrix<T>::lift(cb.basis_matrix(i, a)) * ginv[i]);
    Vec<T> col = cb.coordinates(conj);
    for (int b = 0; b < n; ++b) ad(b, a) = col[b];
  }
  return ad;
}

namespace detail {

// point with value g and derivative d
template <class T>
Point<Jet<T>> jet_point(const Point<T>& g, const Point<T>& d) {
  Point<Jet<T>> p;
  for (std::size_t i = 0; i < g.size(); ++i) {
    Matrix<Jet<T>> m(g[i].rows(), g[i].cols());
    for (std::size_t r = 0; r < g[i].rows(); ++r)
      for (std::size_t c = 0; c < g[i].cols(); ++c) m(r, c) = Jet<T>(g[i](r, c), d[i](r, c));
    p.push_back(std::move(m));
  }
  return p;
}

template <class T>
Point<T> represent_all(const ChevalleyBasis& cb, const Vec<T>& x) {
  Point<T> p;
  for (std::size_t i = 0; i < cb.modules().size(); ++i) p.push_back(cb.represent(static_cast<int>(i), x));
  return p;
}

template <class T>
Vec<T> basis_vector(int n, int a) {
  Vec<T> e(n, T(0));
  e[a] = T(1);
  return e;
}

}  // namespace detail

/// Left gradient: <X, grad f(g)> = d/dt f(e^{tX} g).
template <class T, class F>
Vec<T> left_gradient(const RMatrix& rm, const F& f, const Point<T>& g) {
  const ChevalleyBasis& cb = rm.basis();
  Vec<T> d(cb.dim(), T(0));
  for (int a = 0; a < cb.dim(); ++a) {
    Point<T> dir;
    for (std::size_t i = 0; i < g.size(); ++i) dir.push_back(Matrix<T>::lift(cb.basis_matrix(i, a)) * g[i]);
    d[a] = f(detail::jet_point(g, dir)).derivative;
  }
  return apply_matrix(rm.form_inverse, d);
}

/// Right gradient: <X, grad' f(g)> = d/dt f(g e^{tX}).
template <class T, class F>
Vec<T> right_gradient(const RMatrix& rm, const F& f, const Point<T>& g) {
  const ChevalleyBasis& cb = rm.basis();
  Vec<T> d(cb.dim(), T(0));
  for (int a = 0; a < cb.dim(); ++a) {
    Point<T> dir;
    for (std::size_t i = 0; i < g.size(); ++i) dir.push_back(g[i] * Matrix<T>::lift(cb.basis_matrix(i, a)));
    d[a] = f(detail::jet_point(g, dir)).derivative;
  }
  return apply_matrix(rm.form_inverse, d);
}

/// Bracket on G: <r grad f1, grad f2>/2 - <r grad' f1, grad' f2>/2.
template <class T, class F1, class F2>
T bracket_G(const RMatrix& rm, const F1& f1, const F2& f2, const Point<T>& g) {
  Vec<T> l1 = left_gradient(rm, f1, g), l2 = left_gradient(rm, f2, g);
  Vec<T> r1 = right_gradient(rm, f1, g), r2 = right_gradient(rm, f2, g);
  T half = T(Rational(1, 2));
  return half * pairing(rm, apply_matrix(rm.r, l1), l2) - half * pairing(rm, apply_matrix(rm.r, r1), r2);
}

namespace detail {

template <class T>
T gstar_terms(const RMatrix& rm, const Vec<T>& l1, const Vec<T>& l2, const Vec<T>& r1, const Vec<T>& r2) {
  return -pairing(rm, apply_matrix(rm.r, l1), l2) - pairing(rm, apply_matrix(rm.r, r1), r2) +
         T(2) * pairing(rm, apply_matrix(rm.r_minus, r1), l2) + T(2) * pairing(rm, apply_matrix(rm.r_plus, l1), r2);
}

}  // namespace detail

/// Bracket on G_* with both gradients taken by differentiation.
template <class T, class F1, class F2>
T bracket_Gstar(const RMatrix& rm, const F1& f1, const F2& f2, const Point<T>& g) {
  return detail::gstar_terms(rm, left_gradient(rm, f1, g), left_gradient(rm, f2, g), right_gradient(rm, f1, g),
                             right_gradient(rm, f2, g));
}

/// Same bracket with grad' replaced by Ad(g^{-1}) grad.
template <class T, class F1, class F2>
T bracket_Gstar_adjoint(const RMatrix& rm, const F1& f1, const F2& f2, const Point<T>& g) {
  Matrix<T> ad = adjoint(rm.basis(), inverse_point(g));
  Vec<T> l1 = left_gradient(rm, f1, g), l2 = left_gradient(rm, f2, g);
  return detail::gstar_terms(rm, l1, l2, ad * l1, ad * l2);
}

/// Point of G* in G x G.
template <class T>
struct DualPoint {
  Point<T> plus;
  Point<T> minus;
};

struct DualPair {
  GroupElement<Rational> plus;
  GroupElement<Rational> minus;
};

/// L_+ = n_+ h_+, L_- = n_- h_- with n_+ = prod X_alpha(a_alpha) over positive
/// roots, n_- = prod X_{-alpha}(b_alpha), and h_{+-} = prod_j y_j^{r_{+-} kappa_j}.
DualPair dual_pair(const RMatrix& rm, const std::vector<Rational>& a, const std::vector<Rational>& b,
                   const std::vector<Rational>& y);
DualPoint<Rational> evaluate_pair(const RMatrix& rm, const DualPair& p);

/// q(L_+, L_-) = L_- L_+^{-1}.
GroupElement<Rational> q_map(const DualPair& p);
template <class T>
Point<T> q_map(const DualPoint<T>& p) {
  return p.minus * inverse_point(p.plus);
}

namespace detail {

template <class T, class F>
Vec<T> dual_gradient(const RMatrix& rm, const F& f, const DualPoint<T>& L, bool right) {
  const ChevalleyBasis& cb = rm.basis();
  Vec<T> d(cb.dim(), T(0));
  for (int a = 0; a < cb.dim(); ++a) {
    Vec<T> xp(cb.dim(), T(0)), xm(cb.dim(), T(0));
    for (int b = 0; b < cb.dim(); ++b) {
      xp[b] = T(rm.r_plus(b, a));
      xm[b] = T(rm.r_minus(b, a));
    }
    Point<T> mp = represent_all(cb, xp), mm = represent_all(cb, xm);
    Point<T> dp, dm;
    for (std::size_t i = 0; i < L.plus.size(); ++i) {
      dp.push_back(right ? L.plus[i] * mp[i] : mp[i] * L.plus[i]);
      dm.push_back(right ? L.minus[i] * mm[i] : mm[i] * L.minus[i]);
    }
    d[a] = f(jet_point(L.plus, dp), jet_point(L.minus, dm)).derivative;
  }
  return apply_matrix(rm.form_inverse, d);
}

}  // namespace detail

/// Bracket on G* at (L_+, L_-):
/// sign * (<(Ad L_+ - Ad L_-) grad' f, grad g> - <grad f, (Ad L_+ - Ad L_-) grad' g>).
/// f and g take (plus, minus) points.
template <class T, class F1, class F2>
T bracket_dual(const RMatrix& rm, const F1& f1, const F2& f2, const DualPoint<T>& L, int sign = 1) {
  Matrix<T> a = adjoint(rm.basis(), L.plus) - adjoint(rm.basis(), L.minus);
  Vec<T> l1 = detail::dual_gradient(rm, f1, L, false), l2 = detail::dual_gradient(rm, f2, L, false);
  Vec<T> r1 = detail::dual_gradient(rm, f1, L, true), r2 = detail::dual_gradient(rm, f2, L, true);
  T v = pairing(rm, a * r1, l2) - pairing(rm, l1, a * r2);
  return sign > 0 ? v : -v;
}

/// Sign relating the G* bracket as printed to the one for which q is Poisson.
inline constexpr int kDualBracketSign = -1;

/// Reduced bracket on N_s Z at m: the Ad(s m^{-1}) form, with gradients of
/// the projected extensions at m s^{-1}.
Rational reduced_bracket_direct(std::shared_ptr<const SliceContext> ctx, const RMatrix& rm, const GFunction& phi,
                                const GFunction& psi, const Point<Rational>& m);
/// Bracket on G_* of the projected extensions at m s^{-1}, with both gradients
/// differentiated through the projection.
Rational reduced_bracket_projected(std::shared_ptr<const SliceContext> ctx, const RMatrix& rm, const GFunction& phi,
                                   const GFunction& psi, const Point<Rational>& m);

}  // namespace qw
