#include "qw/slice.hpp"

#include <algorithm>
#include <numeric>

namespace qw {

namespace {

GroupElement<Rational> drop_trivial(const GroupElement<Rational>& g) {
  GroupElement<Rational> r;
  for (const Factor<Rational>& f : g.factors) {
    if (f.kind == Factor<Rational>::Kind::OneParam && f.t.is_zero()) continue;
    if (f.kind == Factor<Rational>::Kind::Torus &&
        std::all_of(f.c.begin(), f.c.end(), [](const Rational& x) { return x == 1; }))
      continue;
    r.factors.push_back(f);
  }
  return r;
}

IntVec integral(const Vec<Rational>& v) {
  Integer l(1);
  for (const Rational& x : v) l = boost::multiprecision::lcm(l, denominator(x));
  IntVec r;
  for (const Rational& x : v) r.push_back(static_cast<int>(numerator(x * l)));
  return r;
}

}  // namespace

std::vector<std::vector<int>> levi_cell_words(const SliceContext& ctx) {
  const RootSystem& rs = ctx.rs();
  std::vector<std::vector<int>> words;
  for (const WeylElement& w : weyl_group(rs)) {
    std::vector<int> word = representative_word(rs, w);
    bool inside = std::all_of(word.begin(), word.end(), [&](int i) {
      return std::find(ctx.levi_simple.begin(), ctx.levi_simple.end(), i) != ctx.levi_simple.end();
    });
    if (inside) words.push_back(word);
  }
  std::stable_sort(words.begin(), words.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
  return words;
}

SliceContext make_slice_context(std::shared_ptr<const ChevalleyBasis> cb, const ClassData& cd,
                                const AssociatedOrdering& ao) {
  SliceContext ctx;
  ctx.cb = std::move(cb);
  ctx.cd = cd;
  ctx.ao = ao;
  const RootSystem& rs = cd.rs;
  const std::vector<int>& seq = ao.base.sequence;
  ctx.D = rs.num_positive();
  if (ao.fixed.end != ctx.D) throw MathError(ErrorCode::InvalidArgument, "(Delta_0)_+ is not a final segment");
  ctx.d = ao.fixed.begin;
  const Matrix<Rational>& s = cd.s.matrix();
  for (int p = 0; p < ctx.D; ++p) {
    int a = seq[p];
    if (p < ctx.d) {
      ctx.n_roots.push_back(a);
      if (!rs.is_positive(rs.apply(s, a))) ctx.ns_roots.push_back(a);
    } else {
      ctx.levi_roots.push_back(a);
    }
  }
  for (int i = 0; i < rs.rank(); ++i)
    if (rs.apply(s, i) == i) ctx.levi_simple.push_back(i);
  Matrix<Rational> w = Matrix<Rational>::identity(rs.rank());
  for (bool grew = true; grew;) {
    grew = false;
    for (int i : ctx.levi_simple) {
      if (rs.is_positive(rs.apply(w, i))) {
        ctx.levi_longest_word.push_back(i);
        w = w * rs.reflection(i);
        grew = true;
        break;
      }
    }
  }
  ctx.s_word = representative_word(rs, cd.s);
  ctx.wd = word_data(*ctx.cb, ao.base.reduced_word);
  Matrix<Rational> sc = cd.s.coroot_matrix(rs) - Matrix<Rational>::identity(rs.rank());
  for (const Vec<Rational>& k : kernel(sc)) ctx.torus_directions.push_back(integral(k));
  GroupElement<Rational> srep = GroupElement<Rational>::weyl_word(ctx.s_word);
  ctx.s_point = evaluate_all(srep, *ctx.cb);
  ctx.s_inverse_point = evaluate_all(srep.inverse(), *ctx.cb);
  for (const HWModule& m : ctx.cb->modules()) {
    std::vector<int> depth;
    for (const IntVec& mono : m.monomials) {
      int k = 0;
      for (int letter : mono)
        k += std::find(ctx.levi_simple.begin(), ctx.levi_simple.end(), letter) == ctx.levi_simple.end();
      depth.push_back(k);
    }
    ctx.outer_depth.push_back(depth);
  }
  return ctx;
}

SliceContext make_slice_context(const RootSystem& rs, const WeylElement& s, unsigned seed) {
  auto [cd, ao] = associate(rs, s, seed);
  return make_slice_context(std::make_shared<const ChevalleyBasis>(cd.rs), cd, ao);
}

std::vector<Rational> torus_from_directions(const SliceContext& ctx, const std::vector<Rational>& y) {
  if (y.size() != ctx.torus_directions.size())
    throw MathError(ErrorCode::InvalidArgument, "one torus parameter per fixed cocharacter");
  std::vector<Rational> c(ctx.rs().rank(), Rational(1));
  for (std::size_t m = 0; m < y.size(); ++m)
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= power(y[m], ctx.torus_directions[m][i]);
  return c;
}

GroupElement<Rational> z_element(const SliceContext& ctx, const std::vector<Rational>& lower,
                                 const std::vector<Rational>& y, const std::vector<Rational>& upper) {
  if (lower.size() != ctx.levi_roots.size() || upper.size() != ctx.levi_roots.size())
    throw MathError(ErrorCode::InvalidArgument, "one coefficient per root of (Delta_0)_+");
  const RootSystem& rs = ctx.rs();
  GroupElement<Rational> z;
  for (std::size_t k = 0; k < lower.size(); ++k)
    z = z * GroupElement<Rational>::one_param(rs.negative(ctx.levi_roots[k]), lower[k]);
  z = z * GroupElement<Rational>::torus(torus_from_directions(ctx, y));
  return z * root_product(ctx.levi_roots, upper);
}

GroupElement<Rational> slice_point(const SliceContext& ctx, const std::vector<Rational>& t,
                                   const std::vector<Rational>& ns, const GroupElement<Rational>& z) {
  if (static_cast<int>(t.size()) != ctx.d || ns.size() != ctx.ns_roots.size())
    throw MathError(ErrorCode::InvalidArgument, "coordinate lengths do not match");
  GroupElement<Rational> n = n_element(ctx, t);
  GroupElement<Rational> srep = GroupElement<Rational>::weyl_word(ctx.s_word);
  return n.inverse() * root_product(ctx.ns_roots, ns) * z * srep.inverse() * n;
}

SliceFactorization slice_factorize(const SliceContext& ctx, const Point<Rational>& g) {
  const ChevalleyBasis& cb = *ctx.cb;
  const RootSystem& rs = ctx.rs();
  SliceFactorization f;
  Point<Rational> h = g;
  f.t = t_recursion(ctx, h);
  f.n = n_element(ctx, f.t);
  Point<Rational> m = h * ctx.s_point;  // n_s z

  // z preserves the depth outside Delta_0, n_s strictly lowers it
  Point<Rational> z;
  for (std::size_t k = 0; k < m.size(); ++k) {
    const std::vector<int>& dep = ctx.outer_depth[k];
    Matrix<Rational> b(m[k].rows(), m[k].cols());
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (dep[i] == dep[j]) b(i, j) = m[k](i, j);
    z.push_back(b);
  }
  Point<Rational> ns = m * inverse_point(z);
  f.ns_coordinates = unipotent_coordinates(cb, ns, ctx.wd);
  for (int p = 0; p < ctx.D; ++p) {
    int a = ctx.ao.base.sequence[p];
    bool allowed = std::find(ctx.ns_roots.begin(), ctx.ns_roots.end(), a) != ctx.ns_roots.end();
    if (!allowed && !f.ns_coordinates[p].is_zero())
      throw MathError(ErrorCode::InvalidArgument, "n_s has a component outside Delta(n_s)");
  }
  f.n_s = drop_trivial(root_product(ctx.ao.base.sequence, f.ns_coordinates));
  if (evaluate_all(f.n_s, cb) != ns) throw MathError(ErrorCode::InvalidArgument, "g_{d+1} s is not in N_s Z");

  // Bruhat decomposition inside the Levi subgroup, big cell first
  bool found = false;
  for (const std::vector<int>& word : levi_cell_words(ctx)) {
    try {
      f.z_cell = cell_coordinates(cb, z, WeylElement(rs, word), extend_to_longest(rs, word));
    } catch (const MathError&) {
      continue;
    }
    found = true;
    for (int p = 0; p < ctx.D; ++p) {
      int a = f.z_cell.ordering.sequence[p];
      bool levi = std::find(ctx.levi_roots.begin(), ctx.levi_roots.end(), a) != ctx.levi_roots.end();
      if (!levi && !f.z_cell.r[p].is_zero()) throw MathError(ErrorCode::InvalidArgument, "z is not in the Levi subgroup");
    }
    break;
  }
  if (!found) throw MathError(ErrorCode::InvalidArgument, "z lies in no Bruhat cell of the Levi subgroup");
  f.z = drop_trivial(assemble_cell_element(rs, f.z_cell.w_word, f.z_cell.ordering, f.z_cell.h, f.z_cell.q,
                                           f.z_cell.r));
  return f;
}

GroupElement<Rational> reassemble(const SliceContext& ctx, const SliceFactorization& f) {
  GroupElement<Rational> srep = GroupElement<Rational>::weyl_word(ctx.s_word);
  return f.n.inverse() * f.n_s * f.z * srep.inverse() * f.n;
}

GFunction::GFunction(const Rational& c) {
  auto n = std::make_shared<Node>();
  n->op = Op::Constant;
  n->constant = c;
  node_ = n;
}

GFunction GFunction::coefficient(const ChevalleyBasis& cb, int module, const Vec<Rational>& u, Vec<Rational> v) {
  const HWModule& m = cb.module(module);
  if (static_cast<int>(u.size()) != m.dim || static_cast<int>(v.size()) != m.dim)
    throw MathError(ErrorCode::InvalidArgument, "vector length does not match the module");
  auto n = std::make_shared<Node>();
  n->op = Op::Coefficient;
  n->module = module;
  n->u = m.gram * u;
  n->v = std::move(v);
  return GFunction(std::shared_ptr<const Node>(n));
}

GFunction GFunction::entry(const ChevalleyBasis& cb, int module, int b, int c) {
  const HWModule& m = cb.module(module);
  Vec<Rational> u(m.dim, Rational(0)), v(m.dim, Rational(0));
  u.at(b) = 1;
  v.at(c) = 1;
  return coefficient(cb, module, u, v);
}

GFunction GFunction::trace(const ChevalleyBasis& cb, int module) {
  const HWModule& m = cb.module(module);
  GFunction f(0);
  for (int b = 0; b < m.dim; ++b) {
    Vec<Rational> e(m.dim, Rational(0));
    e[b] = 1;
    GFunction c = coefficient(cb, module, m.gram_inverse * e, e);
    f = b == 0 ? c : f + c;
  }
  return f;
}

GFunction GFunction::project(std::shared_ptr<const SliceContext> ctx, const GFunction& f) {
  auto n = std::make_shared<Node>();
  n->op = Op::Project;
  n->ctx = std::move(ctx);
  n->args = {f};
  return GFunction(std::shared_ptr<const Node>(n));
}

GFunction GFunction::translate(const GFunction& f, const Point<Rational>& a) {
  auto n = std::make_shared<Node>();
  n->op = Op::Translate;
  n->shift = a;
  n->args = {f};
  return GFunction(std::shared_ptr<const Node>(n));
}

GFunction GFunction::make(Op op, std::vector<GFunction> args) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->args = std::move(args);
  return GFunction(std::shared_ptr<const Node>(n));
}

std::string GFunction::to_string() const {
  const Node& n = *node_;
  switch (n.op) {
    case Op::Constant: return qw::to_string(n.constant);
    case Op::Coefficient: return "mc" + std::to_string(n.module + 1) + "(" + qw::to_string(n.u) + "," + qw::to_string(n.v) + ")";
    case Op::Add: return "(" + n.args[0].to_string() + " + " + n.args[1].to_string() + ")";
    case Op::Sub: return "(" + n.args[0].to_string() + " - " + n.args[1].to_string() + ")";
    case Op::Mul: return "(" + n.args[0].to_string() + " * " + n.args[1].to_string() + ")";
    case Op::Div: return "(" + n.args[0].to_string() + " / " + n.args[1].to_string() + ")";
    case Op::Neg: return "-" + n.args[0].to_string();
    case Op::Project: return "Pi(" + n.args[0].to_string() + ")";
    case Op::Translate: return "R(" + n.args[0].to_string() + ")";
  }
  return "";
}

}  // namespace qw
