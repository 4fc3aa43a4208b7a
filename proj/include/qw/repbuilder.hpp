#pragma once

#include <string>
#include <vector>

#include "qw/rootsys.hpp"

namespace qw {

/// Irreducible module with highest weight omega_i.
///
/// Basis vectors are ordered by depth below the highest weight, then by weight
/// in order of first appearance, then by the f-monomial generating them
/// (parent first, then the index of the lowering operator). Vector 0 is the
/// highest weight vector.
struct HWModule {
  int index = 0;  // 0-based i of omega_i
  int dim = 0;
  std::vector<IntVec> weights;    // Dynkin labels
  std::vector<IntVec> monomials;  // basis vector = f_{m[0]} f_{m[1]} ... v
  std::vector<int> depth;
  std::vector<Matrix<Rational>> root_vectors;  // by root index
  std::vector<Matrix<Rational>> coroots;       // h_j = alpha_j^vee, diagonal
  std::vector<std::vector<Matrix<Rational>>> exp_terms;  // X_a^k / k! for k = 0.. until zero
  std::vector<Matrix<Rational>> weyl;          // s_i = exp(f_i) exp(-e_i) exp(f_i)
  std::vector<Matrix<Rational>> weyl_inverse;
  Matrix<Rational> gram;  // contravariant form, (v, v) = 1
  Matrix<Rational> gram_inverse;

  const Matrix<Rational>& e(int i) const { return root_vectors[i]; }
  const Matrix<Rational>& f(int i) const { return root_vectors[i + num_positive]; }
  int num_positive = 0;
};

/// Root-addition tree used for non-simple root vectors: alpha = alpha_i + beta
/// with i least, X_alpha = [e_i, X_beta] / (p + 1) and
/// X_{-alpha} = [X_{-beta}, f_i] / (p + 1), where p is the largest integer with
/// beta - p alpha_i a root.
struct RootStep {
  int simple = -1;
  int beta = -1;
  int p = 0;
};
std::vector<RootStep> root_tree(const RootSystem& rs);

HWModule build_fundamental_module(const RootSystem& rs, int i);

/// omega(M) = G^{-1} M^T G, the adjoint of M for the contravariant form.
template <class T>
Matrix<T> omega_adjoint(const HWModule& m, const Matrix<T>& a) {
  return Matrix<T>::lift(m.gram_inverse) * a.transpose() * Matrix<T>::lift(m.gram);
}

template <class T>
T contravariant_pair(const HWModule& m, const Vec<T>& u, const Vec<T>& v) {
  T r(0);
  for (int i = 0; i < m.dim; ++i) {
    if (is_zero(u[i])) continue;
    for (int j = 0; j < m.dim; ++j)
      if (!m.gram(i, j).is_zero() && !is_zero(v[j])) r = r + u[i] * T(m.gram(i, j)) * v[j];
  }
  return r;
}

/// Lie algebra g with basis x_a: root vectors X_alpha for a < |Delta| (root
/// index order), then the simple coroots h_j at |Delta| + j.
class ChevalleyBasis {
 public:
  explicit ChevalleyBasis(const RootSystem& rs);

  const RootSystem& root_system() const { return rs_; }
  int dim() const { return dim_; }
  int num_roots() const { return rs_.num_roots(); }
  int coroot_index(int j) const { return rs_.num_roots() + j; }
  const std::vector<HWModule>& modules() const { return modules_; }
  const HWModule& module(int i) const { return modules_[i]; }

  /// Coordinates of [x_a, x_b].
  const Vec<Rational>& bracket_basis(int a, int b) const { return table_[a * dim_ + b]; }
  /// N with [X_alpha, X_beta] = N X_{alpha+beta}; 0 if alpha + beta is not a root.
  Rational structure_constant(int alpha, int beta) const;
  /// Matrix of ad(x_a).
  const Matrix<Rational>& ad(int a) const { return ad_[a]; }

  template <class T>
  Vec<T> bracket(const Vec<T>& x, const Vec<T>& y) const {
    Vec<T> r(dim_, T(0));
    for (int a = 0; a < dim_; ++a) {
      if (is_zero(x[a])) continue;
      for (int b = 0; b < dim_; ++b) {
        if (is_zero(y[b])) continue;
        const Vec<Rational>& c = table_[a * dim_ + b];
        T xy = x[a] * y[b];
        for (int k = 0; k < dim_; ++k)
          if (!c[k].is_zero()) r[k] = r[k] + xy * T(c[k]);
      }
    }
    return r;
  }

  /// Invariant form with (alpha, alpha) = 2 on long roots, times lambda.
  Matrix<Rational> form(const Rational& lambda = Rational(1)) const;

  /// Matrix of x = sum x_a x_a in module i.
  template <class T>
  Matrix<T> represent(int i, const Vec<T>& x) const {
    const HWModule& m = modules_[i];
    Matrix<T> r(m.dim, m.dim);
    for (int a = 0; a < dim_; ++a) {
      if (is_zero(x[a])) continue;
      const Matrix<Rational>& b = basis_matrix(i, a);
      for (int p = 0; p < m.dim; ++p)
        for (int q = 0; q < m.dim; ++q)
          if (!b(p, q).is_zero()) r(p, q) = r(p, q) + x[a] * T(b(p, q));
    }
    return r;
  }
  const Matrix<Rational>& basis_matrix(int module, int a) const {
    return a < rs_.num_roots() ? modules_[module].root_vectors[a] : modules_[module].coroots[a - rs_.num_roots()];
  }

  /// Coordinates of an element of g given by its matrices in every fundamental
  /// module (whose sum is faithful). Reads dim() selected entries.
  template <class T>
  Vec<T> coordinates(const std::vector<Matrix<T>>& per_module) const {
    Vec<T> entries(dim_, T(0));
    for (int k = 0; k < dim_; ++k) entries[k] = per_module[witness_[k].module](witness_[k].row, witness_[k].col);
    Vec<T> r(dim_, T(0));
    for (int a = 0; a < dim_; ++a)
      for (int k = 0; k < dim_; ++k)
        if (!witness_inverse_(a, k).is_zero()) r[a] = r[a] + T(witness_inverse_(a, k)) * entries[k];
    return r;
  }

 private:
  struct Entry {
    int module;
    int row;
    int col;
  };
  RootSystem rs_;
  int dim_ = 0;
  std::vector<HWModule> modules_;
  std::vector<Vec<Rational>> table_;
  std::vector<Matrix<Rational>> ad_;
  std::vector<Entry> witness_;
  Matrix<Rational> witness_inverse_;
};

inline ChevalleyBasis chevalley_basis(const RootSystem& rs) { return ChevalleyBasis(rs); }

/// One factor of a group word.
template <class T>
struct Factor {
  enum class Kind { OneParam, Torus, Weyl };
  Kind kind = Kind::OneParam;
  int root = 0;         // OneParam: root index; Weyl: simple index
  bool inverse = false;  // Weyl only
  T t{0};
  std::vector<T> c;  // Torus: acts on weight mu by prod c_j^{mu_j}
};

template <class T>
struct GroupElement {
  std::vector<Factor<T>> factors;

  static GroupElement identity() { return {}; }
  static GroupElement one_param(int root, const T& t) {
    Factor<T> f;
    f.kind = Factor<T>::Kind::OneParam;
    f.root = root;
    f.t = t;
    return {{f}};
  }
  static GroupElement torus(std::vector<T> c) {
    Factor<T> f;
    f.kind = Factor<T>::Kind::Torus;
    f.c = std::move(c);
    return {{f}};
  }
  static GroupElement weyl(int i, bool inverse = false) {
    Factor<T> f;
    f.kind = Factor<T>::Kind::Weyl;
    f.root = i;
    f.inverse = inverse;
    return {{f}};
  }
  /// Product of simple representatives along a word.
  static GroupElement weyl_word(const std::vector<int>& word) {
    GroupElement g;
    for (int i : word) g = g * weyl(i);
    return g;
  }

  friend GroupElement operator*(const GroupElement& a, const GroupElement& b) {
    GroupElement r = a;
    r.factors.insert(r.factors.end(), b.factors.begin(), b.factors.end());
    return r;
  }

  GroupElement inverse() const {
    GroupElement r;
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
      Factor<T> f = *it;
      switch (f.kind) {
        case Factor<T>::Kind::OneParam: f.t = -f.t; break;
        case Factor<T>::Kind::Torus:
          for (T& x : f.c) {
            if (!invertible(x)) throw MathError(ErrorCode::ZeroTorusEntry, "inverse of a torus factor");
            x = T(1) / x;
          }
          break;
        case Factor<T>::Kind::Weyl: f.inverse = !f.inverse; break;
      }
      r.factors.push_back(f);
    }
    return r;
  }

  /// The anti-involution: reversed word, X_alpha(t) -> X_{-alpha}(t), torus
  /// fixed, s_i -> s_i^{-1}.
  GroupElement omega(const RootSystem& rs) const {
    GroupElement r;
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
      Factor<T> f = *it;
      if (f.kind == Factor<T>::Kind::OneParam) f.root = rs.negative(f.root);
      if (f.kind == Factor<T>::Kind::Weyl) f.inverse = !f.inverse;
      r.factors.push_back(f);
    }
    return r;
  }
};

/// exp(t X_alpha) in a module.
template <class T>
Matrix<T> exp_root(const HWModule& m, int root, const T& t) {
  const auto& terms = m.exp_terms[root];
  Matrix<T> r = Matrix<T>::identity(m.dim);
  T tk(1);
  for (std::size_t k = 1; k < terms.size(); ++k) {
    tk = tk * t;
    if (is_zero(tk)) break;
    const Matrix<Rational>& p = terms[k];
    for (int i = 0; i < m.dim; ++i)
      for (int j = 0; j < m.dim; ++j)
        if (!p(i, j).is_zero()) r(i, j) = r(i, j) + tk * T(p(i, j));
  }
  return r;
}

/// Diagonal torus matrix; throws ZeroTorusEntry on a non-invertible entry.
template <class T>
Matrix<T> torus_matrix(const HWModule& m, const std::vector<T>& c) {
  for (const T& x : c)
    if (!invertible(x)) throw MathError(ErrorCode::ZeroTorusEntry, "torus coordinate is zero");
  Matrix<T> r(m.dim, m.dim);
  for (int b = 0; b < m.dim; ++b) {
    T v(1);
    for (std::size_t j = 0; j < c.size(); ++j) v = v * power(c[j], m.weights[b][j]);
    r(b, b) = v;
  }
  return r;
}

template <class T>
Matrix<T> factor_matrix(const HWModule& m, const Factor<T>& f) {
  switch (f.kind) {
    case Factor<T>::Kind::OneParam: return exp_root(m, f.root, f.t);
    case Factor<T>::Kind::Torus: return torus_matrix(m, f.c);
    case Factor<T>::Kind::Weyl:
      return Matrix<T>::lift(f.inverse ? m.weyl_inverse[f.root] : m.weyl[f.root]);
  }
  return Matrix<T>::identity(m.dim);
}

template <class T>
Matrix<T> evaluate(const GroupElement<T>& g, const HWModule& m) {
  Matrix<T> r = Matrix<T>::identity(m.dim);
  for (const Factor<T>& f : g.factors) r = r * factor_matrix(m, f);
  return r;
}

/// A group element given by its matrices in all fundamental modules.
template <class T>
using Point = std::vector<Matrix<T>>;

template <class T>
Point<T> evaluate_all(const GroupElement<T>& g, const ChevalleyBasis& cb) {
  Point<T> p;
  for (const HWModule& m : cb.modules()) p.push_back(evaluate(g, m));
  return p;
}

template <class U, class T>
Point<U> lift_point(const Point<T>& p) {
  Point<U> r;
  for (const Matrix<T>& m : p) r.push_back(Matrix<U>::lift(m));
  return r;
}

template <class U, class T>
GroupElement<U> lift_element(const GroupElement<T>& g) {
  GroupElement<U> r;
  for (const Factor<T>& f : g.factors) {
    Factor<U> h;
    h.kind = static_cast<typename Factor<U>::Kind>(static_cast<int>(f.kind));
    h.root = f.root;
    h.inverse = f.inverse;
    h.t = U(f.t);
    for (const T& x : f.c) h.c.push_back(U(x));
    r.factors.push_back(h);
  }
  return r;
}

template <class T>
Point<T> operator*(const Point<T>& a, const Point<T>& b) {
  Point<T> r;
  for (std::size_t i = 0; i < a.size(); ++i) r.push_back(a[i] * b[i]);
  return r;
}

template <class T>
Point<T> inverse_point(const Point<T>& a) {
  Point<T> r;
  for (const Matrix<T>& m : a) r.push_back(inverse(m));
  return r;
}

/// Human-readable factor word, e.g. "X[1,1](3/2) s2 T(2,1/3)".
template <class T>
std::string to_string(const RootSystem& rs, const GroupElement<T>& g) {
  std::string s;
  for (const Factor<T>& f : g.factors) {
    if (!s.empty()) s += " ";
    switch (f.kind) {
      case Factor<T>::Kind::OneParam: {
        s += "X[";
        const IntVec& r = rs.root(f.root);
        for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + std::to_string(r[i]);
        s += "](" + to_string(f.t) + ")";
        break;
      }
      case Factor<T>::Kind::Torus: {
        s += "T(";
        for (std::size_t i = 0; i < f.c.size(); ++i) s += (i ? "," : "") + to_string(f.c[i]);
        s += ")";
        break;
      }
      case Factor<T>::Kind::Weyl: s += "s" + std::to_string(f.root + 1) + (f.inverse ? "^-1" : ""); break;
    }
  }
  return s.empty() ? "1" : s;
}

}  // namespace qw
