#include "qw/poisson.hpp"

#include <numeric>

namespace qw {

namespace {

Matrix<Rational> embed_h(const ChevalleyBasis& cb, const Matrix<Rational>& block) {
  int n = cb.dim();
  Matrix<Rational> m(n, n);
  int l = cb.root_system().rank();
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) m(cb.coroot_index(i), cb.coroot_index(j)) = block(i, j);
  return m;
}

long lcm_of_denominators(const Matrix<Rational>& m, long acc) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      acc = std::lcm(acc, denominator(m(i, j)).convert_to<long>());
  return acc;
}

std::vector<IntVec> scaled_columns(const Matrix<Rational>& m, long scale) {
  std::vector<IntVec> cols;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    IntVec c;
    for (std::size_t i = 0; i < m.rows(); ++i) c.push_back((m(i, j) * scale).convert_to<int>());
    cols.push_back(c);
  }
  return cols;
}

std::vector<Rational> cocharacter_torus(const std::vector<IntVec>& cochars, const std::vector<Rational>& y) {
  std::vector<Rational> c(cochars.size(), Rational(1));
  for (std::size_t j = 0; j < cochars.size(); ++j)
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= power(y[j], cochars[j][i]);
  return c;
}

}  // namespace

RMatrix build_r(std::shared_ptr<const ChevalleyBasis> cb, const WeylElement& s, const Rational& lambda) {
  if (lambda.is_zero()) throw MathError(ErrorCode::InvalidArgument, "form scale must be nonzero");
  RMatrix rm;
  rm.cb = std::move(cb);
  rm.s = s;
  rm.lambda = lambda;
  const ChevalleyBasis& b = *rm.cb;
  const RootSystem& rs = b.root_system();
  int n = b.dim(), l = rs.rank(), P = rs.num_positive();

  rm.p_plus = Matrix<Rational>(n, n);
  rm.p_minus = Matrix<Rational>(n, n);
  for (int a = 0; a < P; ++a) {
    rm.p_plus(a, a) = 1;
    rm.p_minus(rs.negative(a), rs.negative(a)) = 1;
  }

  // h = fixed part + h', h' = image of (s - 1)
  Matrix<Rational> S = s.coroot_matrix(rs);
  Matrix<Rational> id = Matrix<Rational>::identity(l);
  std::vector<Vec<Rational>> basis = kernel(S - id);
  std::size_t fixed = basis.size();
  Matrix<Rational> moved = S - id;
  Matrix<Rational> reduced = moved;
  for (std::size_t c : row_reduce(reduced)) {
    Vec<Rational> col(l);
    for (int i = 0; i < l; ++i) col[i] = moved(i, c);
    basis.push_back(col);
  }
  Matrix<Rational> B = Matrix<Rational>::from_columns(basis, l);
  Matrix<Rational> Binv = inverse(B);
  Matrix<Rational> local = Binv * S * B;
  std::size_t k = l - fixed;
  Matrix<Rational> sp(k, k), ik = Matrix<Rational>::identity(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) sp(i, j) = local(fixed + i, fixed + j);
  Matrix<Rational> cay;
  try {
    cay = (ik + sp) * inverse(ik - sp);
  } catch (const MathError&) {
    throw MathError(ErrorCode::CayleyUndefined, "1 - s is singular on h'");
  }
  Matrix<Rational> c_local(l, l), p_local(l, l);
  for (std::size_t i = 0; i < k; ++i) {
    p_local(fixed + i, fixed + i) = 1;
    for (std::size_t j = 0; j < k; ++j) c_local(fixed + i, fixed + j) = cay(i, j);
  }
  rm.cayley = B * c_local * Binv;
  rm.p_h = embed_h(b, B * p_local * Binv);

  rm.r = rm.p_plus - rm.p_minus - embed_h(b, rm.cayley);
  Matrix<Rational> idn = Matrix<Rational>::identity(n);
  rm.r_plus = Rational(1, 2) * (rm.r + idn);
  rm.r_minus = Rational(1, 2) * (rm.r - idn);
  rm.form = b.form(lambda);
  rm.form_inverse = inverse(rm.form);

  Matrix<Rational> hp = Rational(1, 2) * (id - rm.cayley), hm = Rational(-1, 2) * (id + rm.cayley);
  long scale = lcm_of_denominators(hm, lcm_of_denominators(hp, 1));
  rm.cocharacter_scale = static_cast<int>(scale);
  rm.plus_cocharacters = scaled_columns(hp, scale);
  rm.minus_cocharacters = scaled_columns(hm, scale);
  return rm;
}

RMatrix build_r(const SliceContext& ctx, const Rational& lambda) { return build_r(ctx.cb, ctx.cd.s, lambda); }

RCertificate certify(const RMatrix& rm) {
  const ChevalleyBasis& b = rm.basis();
  const RootSystem& rs = b.root_system();
  int n = b.dim(), P = rs.num_positive();
  RCertificate c;
  c.plus_identity = c.minus_identity = true;
  for (int a = 0; a < P; ++a) {
    Vec<Rational> e = detail::basis_vector<Rational>(n, a), f = detail::basis_vector<Rational>(n, rs.negative(a));
    c.plus_identity = c.plus_identity && rm.r * e == e;
    c.minus_identity = c.minus_identity && rm.r * f == scale(Rational(-1), f);
  }
  c.fixed_zero = true;
  for (const Vec<Rational>& k : kernel(rm.s.coroot_matrix(rs) - Matrix<Rational>::identity(rs.rank()))) {
    Vec<Rational> v(n, Rational(0));
    for (int j = 0; j < rs.rank(); ++j) v[b.coroot_index(j)] = k[j];
    c.fixed_zero = c.fixed_zero && is_zero_vector(rm.r * v);
  }
  Matrix<Rational> skew = rm.form * rm.r + rm.r.transpose() * rm.form;
  c.skew = skew == Matrix<Rational>(n, n);
  for (int a = 0; a < n; ++a) {
    Vec<Rational> x = detail::basis_vector<Rational>(n, a), rx = rm.r * x;
    for (int bb = 0; bb < n; ++bb) {
      Vec<Rational> y = detail::basis_vector<Rational>(n, bb), ry = rm.r * y;
      Vec<Rational> lhs = sub(b.bracket(rx, ry), rm.r * add(b.bracket(rx, y), b.bracket(x, ry)));
      if (lhs != scale(Rational(-1), b.bracket(x, y))) ++c.mcybe_failures;
    }
  }
  c.mcybe = c.mcybe_failures == 0;
  return c;
}

Vec<Rational> star_bracket(const RMatrix& rm, const Vec<Rational>& x, const Vec<Rational>& y) {
  const ChevalleyBasis& b = rm.basis();
  return scale(Rational(1, 2), add(b.bracket(rm.r * x, y), b.bracket(x, rm.r * y)));
}

DualPair dual_pair(const RMatrix& rm, const std::vector<Rational>& a, const std::vector<Rational>& b,
                   const std::vector<Rational>& y) {
  const RootSystem& rs = rm.basis().root_system();
  int P = rs.num_positive();
  if (static_cast<int>(a.size()) != P || static_cast<int>(b.size()) != P || static_cast<int>(y.size()) != rs.rank())
    throw MathError(ErrorCode::InvalidArgument, "dual pair needs |Delta_+| + |Delta_+| + rank parameters");
  for (const Rational& x : y)
    if (x.is_zero()) throw MathError(ErrorCode::ZeroTorusEntry, "torus parameter is zero");
  std::vector<int> pos, neg;
  for (int k = 0; k < P; ++k) {
    pos.push_back(k);
    neg.push_back(rs.negative(k));
  }
  DualPair p;
  p.plus = root_product(pos, a) * GroupElement<Rational>::torus(cocharacter_torus(rm.plus_cocharacters, y));
  p.minus = root_product(neg, b) * GroupElement<Rational>::torus(cocharacter_torus(rm.minus_cocharacters, y));
  return p;
}

DualPoint<Rational> evaluate_pair(const RMatrix& rm, const DualPair& p) {
  return {evaluate_all(p.plus, rm.basis()), evaluate_all(p.minus, rm.basis())};
}

GroupElement<Rational> q_map(const DualPair& p) { return p.minus * p.plus.inverse(); }

Rational reduced_bracket_direct(std::shared_ptr<const SliceContext> ctx, const RMatrix& rm, const GFunction& phi,
                                const GFunction& psi, const Point<Rational>& m) {
  Point<Rational> g = m * ctx->s_inverse_point;
  GFunction pphi = GFunction::project(ctx, phi), ppsi = GFunction::project(ctx, psi);
  Vec<Rational> l1 = left_gradient(rm, pphi, g), l2 = left_gradient(rm, ppsi, g);
  Matrix<Rational> ad = adjoint(rm.basis(), ctx->s_point * inverse_point(m));
  return detail::gstar_terms(rm, l1, l2, ad * l1, ad * l2);
}

Rational reduced_bracket_projected(std::shared_ptr<const SliceContext> ctx, const RMatrix& rm, const GFunction& phi,
                                   const GFunction& psi, const Point<Rational>& m) {
  Point<Rational> g = m * ctx->s_inverse_point;
  return bracket_Gstar(rm, GFunction::project(ctx, phi), GFunction::project(ctx, psi), g);
}

}  // namespace qw
