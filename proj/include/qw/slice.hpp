#pragma once

#include <memory>
#include <string>
#include <vector>

#include "qw/bruhat.hpp"

namespace qw {

/// Everything needed on N Z s^{-1} N for one class, in the adapted frame.
struct SliceContext {
  std::shared_ptr<const ChevalleyBasis> cb;
  ClassData cd;
  AssociatedOrdering ao;
  std::vector<int> s_word;  // reduced word of s; the representative is the product of s_i along it
  WordData wd;              // along the associated ordering
  int D = 0;
  int d = 0;                     // |Delta(n)|
  std::vector<int> n_roots;      // beta_1 .. beta_d
  std::vector<int> ns_roots;     // Delta(n_s) in ordering order
  std::vector<int> levi_roots;   // (Delta_0)_+ = beta_{d+1} .. beta_D
  std::vector<int> levi_simple;  // simple roots in Delta_0
  std::vector<int> levi_longest_word;
  std::vector<IntVec> torus_directions;  // cocharacters (coroot coordinates) fixed by s
  Point<Rational> s_point;
  Point<Rational> s_inverse_point;
  std::vector<std::vector<int>> outer_depth;  // per module and basis vector: simple roots outside Delta_0 below omega_i

  const RootSystem& rs() const { return cd.rs; }
};

SliceContext make_slice_context(std::shared_ptr<const ChevalleyBasis> cb, const ClassData& cd,
                                const AssociatedOrdering& ao);
/// Runs the Carter and ordering stages for s, then builds the context.
SliceContext make_slice_context(const RootSystem& rs, const WeylElement& s, unsigned seed = 0);

/// z = u_- t u_+ with u_- = prod X_{-gamma}(a_gamma), u_+ = prod X_gamma(b_gamma)
/// over (Delta_0)_+, and t = prod_m y_m^{kappa_m} along the fixed cocharacters.
GroupElement<Rational> z_element(const SliceContext& ctx, const std::vector<Rational>& lower,
                                 const std::vector<Rational>& y, const std::vector<Rational>& upper);
std::vector<Rational> torus_from_directions(const SliceContext& ctx, const std::vector<Rational>& y);

/// X_{beta_d}(t_d) .. X_{beta_1}(t_1).
template <class T>
GroupElement<T> n_element(const SliceContext& ctx, const std::vector<T>& t) {
  return root_product(ctx.n_roots, t, true);
}

/// n^{-1} n_s z s^{-1} n with n_s = prod X_alpha(u_alpha) over Delta(n_s).
GroupElement<Rational> slice_point(const SliceContext& ctx, const std::vector<Rational>& t,
                                   const std::vector<Rational>& ns, const GroupElement<Rational>& z);

/// t_1 .. t_d; `g` is replaced by g_{d+1} = n g n^{-1}.
template <class T>
std::vector<T> t_recursion(const SliceContext& ctx, Point<T>& g) {
  const ChevalleyBasis& cb = *ctx.cb;
  std::vector<T> t;
  for (int p = 0; p < ctx.d; ++p) {
    int i = ctx.wd.module[p];
    const HWModule& mod = cb.module(i);
    Matrix<T> a = Matrix<T>::lift(ctx.s_point[i]) * g[i];
    T den = form_pair(mod, ctx.wd.upper[p], a, ctx.wd.upper[p]);
    if (!invertible(den)) throw MathError(ErrorCode::ZeroDenominator, "t_" + std::to_string(p + 1));
    T tp = T(ctx.wd.c[p]) * form_pair(mod, ctx.wd.upper[p], a, ctx.wd.lower[p]) / den;
    int beta = ctx.wd.beta[p];
    for (std::size_t k = 0; k < g.size(); ++k)
      g[k] = exp_root(cb.module(k), beta, tp) * g[k] * exp_root(cb.module(k), beta, T(-tp));
    t.push_back(tp);
  }
  return t;
}

template <class T>
std::vector<T> t_recursion(const SliceContext& ctx, const Point<T>& g) {
  Point<T> copy = g;
  return t_recursion(ctx, copy);
}

struct SliceFactorization {
  std::vector<Rational> t;
  GroupElement<Rational> n;
  std::vector<Rational> ns_coordinates;  // along the whole ordering; zero outside Delta(n_s)
  GroupElement<Rational> n_s;
  CellCoordinates z_cell;  // z = n' w^{-1} h n'' with w in the Levi Weyl group
  GroupElement<Rational> z;
};

/// Reduced words of the Levi Weyl group, longest first.
std::vector<std::vector<int>> levi_cell_words(const SliceContext& ctx);

SliceFactorization slice_factorize(const SliceContext& ctx, const Point<Rational>& g);
GroupElement<Rational> reassemble(const SliceContext& ctx, const SliceFactorization& f);

/// Function on G built from matrix coefficients g -> (u, pi_i(g) v).
class GFunction {
 public:
  enum class Op { Constant, Coefficient, Add, Sub, Mul, Div, Neg, Project, Translate };

  GFunction(int c) : GFunction(Rational(c)) {}  // NOLINT
  GFunction(const Rational& c);                  // NOLINT
  static GFunction coefficient(const ChevalleyBasis& cb, int module, const Vec<Rational>& u, Vec<Rational> v);
  /// (v_{b}, pi_i(g) v_{c}) for basis vectors b, c of module i.
  static GFunction entry(const ChevalleyBasis& cb, int module, int b, int c);
  /// Trace of pi_i(g); a central function.
  static GFunction trace(const ChevalleyBasis& cb, int module);
  static GFunction project(std::shared_ptr<const SliceContext> ctx, const GFunction& f);
  /// g -> f(g a).
  static GFunction translate(const GFunction& f, const Point<Rational>& a);

  friend GFunction operator+(const GFunction& x, const GFunction& y) { return make(Op::Add, {x, y}); }
  friend GFunction operator-(const GFunction& x, const GFunction& y) { return make(Op::Sub, {x, y}); }
  friend GFunction operator*(const GFunction& x, const GFunction& y) { return make(Op::Mul, {x, y}); }
  friend GFunction operator/(const GFunction& x, const GFunction& y) { return make(Op::Div, {x, y}); }
  GFunction operator-() const { return make(Op::Neg, {*this}); }

  Op op() const { return node_->op; }
  std::string to_string() const;

  template <class T>
  T operator()(const Point<T>& g) const;

 private:
  struct Node {
    Op op = Op::Constant;
    Rational constant;
    int module = 0;
    Vec<Rational> u, v;  // u already multiplied by the Gram matrix
    std::shared_ptr<const SliceContext> ctx;
    Point<Rational> shift;
    std::vector<GFunction> args;
  };
  explicit GFunction(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static GFunction make(Op op, std::vector<GFunction> args);
  std::shared_ptr<const Node> node_;
};

/// (Pi_1 o ... o Pi_d f)(g) = f(n g n^{-1}), the conjugations by
/// exp(A_p X_{beta_p}) applied in the order of the t recursion.
template <class T, class F>
T zhelobenko_apply(const SliceContext& ctx, const F& f, const Point<T>& g) {
  Point<T> h = g;
  t_recursion(ctx, h);
  return f(h);
}

template <class T>
T GFunction::operator()(const Point<T>& g) const {
  const Node& n = *node_;
  switch (n.op) {
    case Op::Constant: return T(n.constant);
    case Op::Coefficient: {
      const Matrix<T>& a = g[n.module];
      T r(0);
      for (std::size_t i = 0; i < n.u.size(); ++i) {
        if (n.u[i].is_zero()) continue;
        T av(0);
        for (std::size_t j = 0; j < n.v.size(); ++j)
          if (!n.v[j].is_zero()) av = av + a(i, j) * T(n.v[j]);
        r = r + T(n.u[i]) * av;
      }
      return r;
    }
    case Op::Add: return n.args[0](g) + n.args[1](g);
    case Op::Sub: return n.args[0](g) - n.args[1](g);
    case Op::Mul: return n.args[0](g) * n.args[1](g);
    case Op::Neg: return -n.args[0](g);
    case Op::Div: {
      T den = n.args[1](g);
      if (!invertible(den)) throw MathError(ErrorCode::DivisionByZero, n.args[1].to_string());
      return n.args[0](g) / den;
    }
    case Op::Project: return zhelobenko_apply(*n.ctx, n.args[0], g);
    case Op::Translate: return n.args[0](g * lift_point<T>(n.shift));
  }
  return T(0);
}

}  // namespace qw
