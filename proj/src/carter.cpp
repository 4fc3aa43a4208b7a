#include "qw/carter.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>

namespace qw {

namespace {

Matrix<QuadraticNumber> lift_q(const Matrix<Rational>& m) { return Matrix<QuadraticNumber>::lift(m); }

QuadraticNumber inner_q(const RootSystem& rs, const QVec& x, const QVec& y) {
  QuadraticNumber r(0);
  for (int i = 0; i < rs.rank(); ++i) {
    if (is_zero(x[i])) continue;
    for (int j = 0; j < rs.rank(); ++j) {
      if (is_zero(y[j]) || rs.form()(i, j).is_zero()) continue;
      r += x[i] * QuadraticNumber(rs.form()(i, j)) * y[j];
    }
  }
  return r;
}

QVec root_q(const RootSystem& rs, int root) {
  QVec v(rs.rank());
  for (int i = 0; i < rs.rank(); ++i) v[i] = QuadraticNumber(rs.root(root)[i]);
  return v;
}

std::vector<QVec> gram_schmidt(const RootSystem& rs, const std::vector<QVec>& in) {
  std::vector<QVec> out;
  for (const QVec& v : in) {
    QVec w = v;
    for (const QVec& u : out) w = sub(w, scale(inner_q(rs, w, u) / inner_q(rs, u, u), u));
    if (!is_zero_vector(w)) out.push_back(w);
  }
  return out;
}

/// Vectors of span(basis) annihilated by the matrix m.
std::vector<QVec> restrict_kernel(const Matrix<QuadraticNumber>& m, const std::vector<QVec>& basis) {
  if (basis.empty()) return {};
  std::size_t n = basis[0].size();
  Matrix<QuadraticNumber> mb = m * Matrix<QuadraticNumber>::from_columns(basis, n);
  std::vector<QVec> out;
  for (const QVec& x : kernel(mb)) {
    QVec v(n, QuadraticNumber(0));
    for (std::size_t j = 0; j < basis.size(); ++j) v = add(v, scale(x[j], basis[j]));
    out.push_back(v);
  }
  return out;
}

/// Orthogonal complement of `plane` inside span(basis).
std::vector<QVec> complement_in(const RootSystem& rs, const std::vector<QVec>& plane, const std::vector<QVec>& basis) {
  if (basis.empty()) return {};
  std::size_t n = basis[0].size();
  Matrix<QuadraticNumber> rows(plane.size(), n);
  Matrix<QuadraticNumber> form = lift_q(rs.form());
  for (std::size_t i = 0; i < plane.size(); ++i) {
    QVec fp = form * plane[i];
    for (std::size_t j = 0; j < n; ++j) rows(i, j) = fp[j];
  }
  return restrict_kernel(rows, basis);
}

struct AngleFactor {
  int m;
  int j;
  std::int64_t radicand;
  QuadraticNumber c;  // 2 cos(2 pi j/m)
};

std::vector<AngleFactor> angle_table() {
  QuadraticNumber r5 = QuadraticNumber::sqrt(5);
  QuadraticNumber r2 = QuadraticNumber::sqrt(2);
  QuadraticNumber r3 = QuadraticNumber::sqrt(3);
  QuadraticNumber half(Rational(1, 2));
  return {
      {3, 1, 1, QuadraticNumber(-1)},
      {4, 1, 1, QuadraticNumber(0)},
      {5, 1, 5, half * (r5 - QuadraticNumber(1))},
      {5, 2, 5, -half * (r5 + QuadraticNumber(1))},
      {6, 1, 1, QuadraticNumber(1)},
      {8, 1, 2, r2},
      {8, 3, 2, -r2},
      {10, 1, 5, half * (r5 + QuadraticNumber(1))},
      {10, 3, 5, half * (QuadraticNumber(1) - r5)},
      {12, 1, 3, r3},
      {12, 5, 3, -r3},
  };
}

Matrix<Rational> cyclotomic(int m, const Matrix<Rational>& s) {
  std::size_t n = s.rows();
  Matrix<Rational> id = Matrix<Rational>::identity(n);
  Matrix<Rational> s2 = s * s;
  switch (m) {
    case 5: return s2 * s2 + s2 * s + s2 + s + id;
    case 8: return s2 * s2 + id;
    case 10: return s2 * s2 - s2 * s + s2 - s + id;
    case 12: return s2 * s2 - s2 + id;
    default: break;
  }
  return Matrix<Rational>(n, n);
}

}  // namespace

QuadraticNumber pair(const RootSystem& rs, const QVec& h, int root) { return inner_q(rs, h, root_q(rs, root)); }

Matrix<Rational> reflection_product(const RootSystem& rs, const std::vector<int>& roots) {
  Matrix<Rational> m = Matrix<Rational>::identity(rs.rank());
  for (int r : roots) m = m * rs.reflection(r);
  return m;
}

bool is_valid_carter(const RootSystem& rs, const WeylElement& s, const CarterDecomposition& dec, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  auto check_list = [&](const std::vector<int>& list) {
    for (std::size_t a = 0; a < list.size(); ++a) {
      if (!rs.is_positive(list[a])) return false;
      for (std::size_t b = a + 1; b < list.size(); ++b)
        if (!rs.inner_roots(list[a], list[b]).is_zero()) return false;
    }
    return true;
  };
  if (!check_list(dec.gamma1) || !check_list(dec.gamma2)) return fail("roots not positive and mutually orthogonal");
  Matrix<Rational> s1 = reflection_product(rs, dec.gamma1);
  Matrix<Rational> s2 = reflection_product(rs, dec.gamma2);
  Matrix<Rational> id = Matrix<Rational>::identity(rs.rank());
  if (!(s1 * s2 == s.matrix())) return fail("s1 s2 differs from s");
  std::vector<Vec<Rational>> gammas;
  for (int g : dec.gamma1) gammas.push_back(to_rational(rs.root(g)));
  for (int g : dec.gamma2) gammas.push_back(to_rational(rs.root(g)));
  std::size_t fixed_dim = kernel(s.matrix() - id).size();
  std::size_t lprime = rs.rank() - fixed_dim;
  if (gammas.size() != lprime) return fail("number of roots differs from dim h'");
  if (!gammas.empty() && rank(Matrix<Rational>::from_columns(gammas, rs.rank())) != lprime)
    return fail("roots linearly dependent");
  // -1 lines of s1 on which s2 is trivial
  Matrix<Rational> stacked(2 * rs.rank(), rs.rank());
  Matrix<Rational> a = s1 + id, b = s2 - id;
  for (int i = 0; i < rs.rank(); ++i)
    for (int j = 0; j < rs.rank(); ++j) {
      stacked(i, j) = a(i, j);
      stacked(rs.rank() + i, j) = b(i, j);
    }
  if (!kernel(stacked).empty()) return fail("s1 acts by -1 on a line fixed by s2");
  return true;
}

bool fixed_roots_condition(const RootSystem& rs, const WeylElement& s, const CarterDecomposition& dec) {
  Matrix<Rational> s2 = reflection_product(rs, dec.gamma2);
  for (int k = 0; k < rs.num_roots(); ++k) {
    if (rs.apply(s2, k) == k && rs.apply(s.matrix(), k) != k) return false;
  }
  return true;
}

std::vector<CarterDecomposition> carter_candidates(const RootSystem& rs, const WeylElement& s) {
  Matrix<Rational> id = Matrix<Rational>::identity(rs.rank());
  std::vector<CarterDecomposition> out;
  std::vector<int> current;
  // orthogonal sets of positive roots in lexicographic order (prefixes first)
  std::function<void(int)> visit_s1 = [&](int start) {
    Matrix<Rational> s1 = reflection_product(rs, current);
    Matrix<Rational> s2 = s1 * s.matrix();
    if (s2 * s2 == id) {
      std::vector<int> minus;
      for (int k = 0; k < rs.num_positive(); ++k)
        if (rs.apply(s2, k) == rs.negative(k)) minus.push_back(k);
      std::size_t need = kernel(s2 + id).size();
      std::vector<int> chosen;
      bool found = false;
      std::function<void(std::size_t)> visit_s2 = [&](std::size_t from) {
        if (found) return;
        if (chosen.size() == need) {
          found = true;
          return;
        }
        for (std::size_t c = from; c < minus.size() && !found; ++c) {
          bool orth = true;
          for (int g : chosen) orth = orth && rs.inner_roots(g, minus[c]).is_zero();
          if (!orth) continue;
          chosen.push_back(minus[c]);
          visit_s2(c + 1);
          if (!found) chosen.pop_back();
        }
      };
      visit_s2(0);
      if (found) {
        CarterDecomposition dec{current, chosen};
        if (is_valid_carter(rs, s, dec)) out.push_back(dec);
      }
    }
    if (static_cast<int>(current.size()) >= rs.rank()) return;
    for (int k = start; k < rs.num_positive(); ++k) {
      bool orth = true;
      for (int g : current) orth = orth && rs.inner_roots(g, k).is_zero();
      if (!orth) continue;
      current.push_back(k);
      visit_s1(k + 1);
      current.pop_back();
    }
  };
  visit_s1(0);
  std::sort(out.begin(), out.end(), [](const CarterDecomposition& x, const CarterDecomposition& y) {
    return std::tie(x.gamma1, x.gamma2) < std::tie(y.gamma1, y.gamma2);
  });
  return out;
}

CarterDecomposition carter_decompose(const RootSystem& rs, const WeylElement& s) {
  std::vector<CarterDecomposition> all = carter_candidates(rs, s);
  if (all.empty()) throw MathError(ErrorCode::NotFound, "no decomposition of s = " + word_to_string(s.word()));
  for (const CarterDecomposition& d : all)
    if (fixed_roots_condition(rs, s, d)) return d;
  return all.front();
}

// ------------------------------------------------------------------ spectra

SpectralDecomposition invariant_subspaces(const RootSystem& rs, const WeylElement& s, const CarterDecomposition& dec) {
  int n = rs.rank();
  Matrix<Rational> S = s.matrix();
  Matrix<Rational> S1 = reflection_product(rs, dec.gamma1);
  Matrix<Rational> id = Matrix<Rational>::identity(n);
  Matrix<QuadraticNumber> Sq = lift_q(S);
  Matrix<QuadraticNumber> S1q = lift_q(S1);
  Matrix<QuadraticNumber> S2q = lift_q(reflection_product(rs, dec.gamma2));
  Matrix<QuadraticNumber> idq = lift_q(id);

  SpectralDecomposition out;
  std::vector<AngleFactor> table = angle_table();
  for (int m : {5, 8, 10, 12}) {
    if (kernel(cyclotomic(m, S)).empty()) continue;
    std::int64_t d = m == 8 ? 2 : (m == 12 ? 3 : 5);
    if (out.radicand != 1 && out.radicand != d)
      throw MathError(ErrorCode::UnsupportedField, "splitting needs both sqrt(" + std::to_string(out.radicand) +
                                                       ") and sqrt(" + std::to_string(d) + ")");
    out.radicand = d;
  }

  auto as_q = [](const std::vector<Vec<Rational>>& vs) {
    std::vector<QVec> r;
    for (const auto& v : vs) {
      QVec q(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) q[i] = QuadraticNumber(v[i]);
      r.push_back(q);
    }
    return r;
  };

  InvariantSubspace fixed;
  fixed.kind = InvariantSubspace::Kind::Fixed;
  fixed.basis = gram_schmidt(rs, as_q(kernel(S - id)));
  fixed.angle = 0;
  out.subspaces.push_back(fixed);
  std::size_t total = fixed.basis.size();

  // -1 eigenspace: lines split by the eigenvalue of s1
  std::vector<QVec> minus = as_q(kernel(S + id));
  total += minus.size();
  std::vector<InvariantSubspace> lines_minus, lines_plus;
  for (int sign : {-1, 1}) {
    Matrix<QuadraticNumber> m = S1q - QuadraticNumber(sign) * idq;
    for (const QVec& v : gram_schmidt(rs, restrict_kernel(m, minus))) {
      InvariantSubspace line;
      line.kind = InvariantSubspace::Kind::Line;
      line.basis = {v};
      line.s1_sign = sign;
      line.s2_sign = -sign;
      line.angle = Rational(1, 2);
      (sign < 0 ? lines_minus : lines_plus).push_back(line);
    }
  }
  for (auto& l : lines_minus) out.subspaces.push_back(l);
  for (auto& l : lines_plus) out.subspaces.push_back(l);

  for (const AngleFactor& f : table) {
    if (f.radicand != 1 && f.radicand != out.radicand) continue;
    Matrix<QuadraticNumber> p = Sq * Sq - f.c * Sq + idq;
    std::vector<QVec> block = kernel(p);
    total += block.size();
    while (!block.empty()) {
      std::vector<QVec> v = restrict_kernel(S1q - idq, block);
      if (v.empty()) v = restrict_kernel(S1q + idq, block);
      QVec p1 = v.front();
      QVec sv = Sq * p1;
      QVec p2 = sub(sv, scale(inner_q(rs, sv, p1) / inner_q(rs, p1, p1), p1));
      InvariantSubspace plane;
      plane.kind = InvariantSubspace::Kind::Plane;
      plane.basis = {p1, p2};
      plane.angle = Rational(f.j, f.m);
      plane.v1 = restrict_kernel(S1q + idq, plane.basis).at(0);
      plane.v2 = restrict_kernel(S2q + idq, plane.basis).at(0);
      if (sign(inner_q(rs, plane.v1, plane.v2)) > 0) plane.v2 = scale(QuadraticNumber(-1), plane.v2);
      out.subspaces.push_back(plane);
      block = complement_in(rs, plane.basis, block);
    }
  }
  if (total != static_cast<std::size_t>(n))
    throw MathError(ErrorCode::UnsupportedField, "eigenvalues of s outside the supported cyclotomic factors");
  return out;
}

// ----------------------------------------------------------- positive system

namespace {

bool orthogonal_to(const RootSystem& rs, const InvariantSubspace& sub, int root) {
  for (const QVec& b : sub.basis)
    if (!is_zero(pair(rs, b, root))) return false;
  return true;
}

QuadraticNumber abs_square_difference(const QuadraticNumber& a, const QuadraticNumber& b) { return a * a - b * b; }

}  // namespace

PositiveSystemS associated_positive_system(const RootSystem& rs, const WeylElement& s, SpectralDecomposition& spectral,
                                           unsigned seed) {
  (void)s;
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<int> positive(1, 3);
  int count = static_cast<int>(spectral.subspaces.size());
  for (InvariantSubspace& sub : spectral.subspaces) {
    sub.h = QVec(rs.rank(), QuadraticNumber(0));
    sub.scale_exponent = 0;
    if (sub.basis.empty()) continue;
    // on a plane h must pair positively with the -1 directions of s1 and s2
    QVec u1, u2;
    if (sub.kind == InvariantSubspace::Kind::Plane) {
      u1 = qw::sub(sub.v1, scale(inner_q(rs, sub.v1, sub.v2) / inner_q(rs, sub.v2, sub.v2), sub.v2));
      u2 = qw::sub(sub.v2, scale(inner_q(rs, sub.v1, sub.v2) / inner_q(rs, sub.v1, sub.v1), sub.v1));
    }
    while (true) {
      QVec h(rs.rank(), QuadraticNumber(0));
      if (sub.kind == InvariantSubspace::Kind::Plane) {
        h = add(scale(QuadraticNumber(positive(rng)), u1), scale(QuadraticNumber(positive(rng)), u2));
      } else {
        for (const QVec& b : sub.basis) h = add(h, scale(QuadraticNumber(coeff(rng)), b));
      }
      if (is_zero_vector(h)) continue;
      bool ok = true;
      for (int a = 0; a < rs.num_roots() && ok; ++a)
        if (!orthogonal_to(rs, sub, a) && is_zero(pair(rs, h, a))) ok = false;
      if (ok) {
        sub.h = h;
        break;
      }
    }
  }

  PositiveSystemS ps;
  ps.stratum_of.assign(rs.num_roots(), -1);
  std::vector<int> subspace_of(rs.num_roots(), -1);
  for (int a = 0; a < rs.num_roots(); ++a) {
    for (int i = count - 1; i >= 0; --i) {
      if (!is_zero(pair(rs, spectral.subspaces[i].h, a))) {
        subspace_of[a] = i;
        break;
      }
    }
  }
  for (int i = 0; i < count; ++i) {
    std::vector<int> members;
    for (int a = 0; a < rs.num_roots(); ++a)
      if (subspace_of[a] == i) members.push_back(a);
    if (members.empty()) continue;
    for (int a : members) ps.stratum_of[a] = static_cast<int>(ps.strata.size());
    ps.stratum_subspace.push_back(i);
    ps.strata.push_back(members);
  }

  // rescale stratum by stratum until the strict inequalities certify
  int strata = static_cast<int>(ps.strata.size());
  for (int k = 1; k < strata; ++k) {
    InvariantSubspace& hk = spectral.subspaces[ps.stratum_subspace[k]];
    while (true) {
      bool ok = true;
      for (int a : ps.strata[k]) {
        QuadraticNumber top = pair(rs, hk.h, a);
        QuadraticNumber tail(0);
        for (int l = k - 1; l >= 0 && ok; --l) {
          tail += pair(rs, spectral.subspaces[ps.stratum_subspace[l]].h, a);
          if (certify_sign(abs_square_difference(top, tail)).sign <= 0) ok = false;
        }
        if (!ok) break;
      }
      if (ok) break;
      hk.h = scale(QuadraticNumber(10), hk.h);
      ++hk.scale_exponent;
    }
  }
  for (int k = 1; k < strata; ++k) {
    for (int a : ps.strata[k]) {
      QuadraticNumber top = pair(rs, spectral.subspaces[ps.stratum_subspace[k]].h, a);
      QuadraticNumber tail(0);
      for (int l = k - 1; l >= 0; --l) {
        tail += pair(rs, spectral.subspaces[ps.stratum_subspace[l]].h, a);
        ps.inequalities.push_back({a, k, l, certify_sign(abs_square_difference(top, tail))});
      }
    }
  }

  ps.hbar = QVec(rs.rank(), QuadraticNumber(0));
  for (int k = 0; k < strata; ++k) ps.hbar = add(ps.hbar, spectral.subspaces[ps.stratum_subspace[k]].h);
  for (int a = 0; a < rs.num_roots(); ++a) {
    SignCertificate c = certify_sign(pair(rs, ps.hbar, a));
    if (c.sign == 0) throw MathError(ErrorCode::UnresolvedSign, "hbar vanishes on a root");
    if (c.sign > 0) ps.positive.push_back(a);
    ps.hbar_signs.push_back(c);
  }
  return ps;
}

WeylElement adapting_element(const RootSystem& rs, const std::vector<int>& positive) {
  std::vector<bool> in(rs.num_roots(), false);
  for (int a : positive) in[a] = true;
  std::vector<int> steps;
  while (true) {
    int simple = -1;
    for (int i = 0; i < rs.rank(); ++i)
      if (!in[i]) {
        simple = i;
        break;
      }
    if (simple < 0) break;
    Matrix<Rational> r = rs.reflection(simple);
    std::vector<bool> next(rs.num_roots(), false);
    for (int a = 0; a < rs.num_roots(); ++a)
      if (in[a]) next[rs.apply(r, a)] = true;
    in = next;
    steps.push_back(simple);
  }
  return WeylElement(rs, steps);  // u = s_{i1} ... s_{ik}
}

int ClassData::fixed_stratum() const {
  if (positive_input.stratum_subspace.empty() || positive_input.stratum_subspace[0] != 0) return -1;
  return 0;
}

ClassData prepare_class(const RootSystem& rs, const WeylElement& s, const CarterDecomposition& dec, unsigned seed) {
  ClassData cd;
  cd.rs = rs;
  cd.s_input = s;
  cd.carter_input = dec;
  cd.spectral = invariant_subspaces(rs, s, dec);
  cd.positive_input = associated_positive_system(rs, s, cd.spectral, seed);
  cd.adapt = adapting_element(rs, cd.positive_input.positive);
  WeylElement uinv = cd.adapt.inverse(rs);
  cd.to_adapted = rs.permutation(uinv.matrix());
  auto conj = [&](const Matrix<Rational>& m) {
    Matrix<Rational> c = uinv.matrix() * m * cd.adapt.matrix();
    return WeylElement(rs, reduced_word(rs, c));
  };
  cd.s = conj(s.matrix());
  cd.s1 = conj(reflection_product(rs, dec.gamma1));
  cd.s2 = conj(reflection_product(rs, dec.gamma2));
  auto transport = [&](const std::vector<int>& list) {
    std::vector<int> out;
    for (int g : list) {
      int a = cd.to_adapted[g];
      out.push_back(rs.is_positive(a) ? a : rs.negative(a));
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  cd.gamma1 = transport(dec.gamma1);
  cd.gamma2 = transport(dec.gamma2);
  cd.stratum_of.assign(rs.num_roots(), -1);
  for (int a = 0; a < rs.num_roots(); ++a) cd.stratum_of[cd.to_adapted[a]] = cd.positive_input.stratum_of[a];
  cd.num_strata = static_cast<int>(cd.positive_input.strata.size());
  return cd;
}

}  // namespace qw
