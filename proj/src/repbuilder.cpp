#include "qw/repbuilder.hpp"

#include <algorithm>
#include <map>

namespace qw {

namespace {

using Sparse = std::map<int, Rational>;

void add_to(Sparse& r, int k, const Rational& c) {
  if (c.is_zero()) return;
  Rational& x = r[k];
  x += c;
  if (x.is_zero()) r.erase(k);
}

Matrix<Rational> commutator(const Matrix<Rational>& a, const Matrix<Rational>& b) { return a * b - b * a; }

std::vector<Matrix<Rational>> exp_series(const Matrix<Rational>& x) {
  std::vector<Matrix<Rational>> terms{Matrix<Rational>::identity(x.rows())};
  Matrix<Rational> p = x;
  for (int k = 1; !p.is_zero(); ++k) {
    if (k > static_cast<int>(x.rows())) throw MathError(ErrorCode::InvalidArgument, "root vector is not nilpotent");
    terms.push_back(Rational(1, k) * (terms.back() * x));
    p = p * x;
  }
  return terms;
}

Matrix<Rational> exp_nilpotent(const Matrix<Rational>& x) {
  Matrix<Rational> r(x.rows(), x.cols());
  for (const Matrix<Rational>& t : exp_series(x)) r += t;
  return r;
}

}  // namespace

std::vector<RootStep> root_tree(const RootSystem& rs) {
  std::vector<RootStep> tree(rs.num_positive());
  for (int a = rs.rank(); a < rs.num_positive(); ++a) {
    const IntVec& alpha = rs.root(a);
    for (int i = 0; i < rs.rank(); ++i) {
      IntVec beta = alpha;
      beta[i] -= 1;
      std::optional<int> b = rs.index_of(beta);
      if (!b) continue;
      int p = 0;
      for (IntVec x = beta;; ++p) {
        x[i] -= 1;
        if (!rs.index_of(x)) break;
      }
      tree[a] = RootStep{i, *b, p};
      break;
    }
    if (tree[a].simple < 0) throw MathError(ErrorCode::InvalidArgument, "root without a simple predecessor");
  }
  return tree;
}

HWModule build_fundamental_module(const RootSystem& rs, int i) {
  const int l = rs.rank();
  if (i < 0 || i >= l) throw MathError(ErrorCode::InvalidArgument, "fundamental weight index out of range");
  HWModule m;
  m.index = i;
  m.num_positive = rs.num_positive();

  IntVec lambda(l, 0);
  lambda[i] = 1;
  m.weights.push_back(lambda);
  m.monomials.push_back({});
  m.depth.push_back(0);
  std::vector<std::vector<Sparse>> e_act{std::vector<Sparse>(l)};  // e_j b
  std::vector<std::vector<Sparse>> f_act{std::vector<Sparse>(l)};  // f_j b
  std::map<std::pair<int, int>, Rational> gram{{{0, 0}, Rational(1)}};

  std::vector<int> level{0};
  for (int depth = 1; !level.empty(); ++depth) {
    struct Candidate {
      int parent;
      int letter;
      IntVec weight;
      std::vector<Sparse> e;
    };
    std::vector<Candidate> cands;
    std::vector<IntVec> order;  // weights in order of first appearance
    for (int b : level) {
      for (int a = 0; a < l; ++a) {
        Candidate c{b, a, m.weights[b], std::vector<Sparse>(l)};
        for (int j = 0; j < l; ++j) c.weight[j] -= rs.cartan(a, j);
        // e_j f_a b = f_a e_j b + delta_{ja} <wt b, alpha_a^vee> b
        for (int j = 0; j < l; ++j) {
          for (const auto& [x, coef] : e_act[b][j])
            for (const auto& [y, c2] : f_act[x][a]) add_to(c.e[j], y, coef * c2);
          if (j == a) add_to(c.e[j], b, Rational(m.weights[b][a]));
        }
        if (std::find(order.begin(), order.end(), c.weight) == order.end()) order.push_back(c.weight);
        cands.push_back(std::move(c));
      }
    }

    std::vector<int> next;
    for (const IntVec& w : order) {
      std::vector<int> group;
      std::map<std::pair<int, int>, int> keys;  // (j, vector) -> row
      for (int k = 0; k < static_cast<int>(cands.size()); ++k) {
        if (cands[k].weight != w) continue;
        group.push_back(k);
        for (int j = 0; j < l; ++j)
          for (const auto& [x, coef] : cands[k].e[j]) keys.emplace(std::make_pair(j, x), 0);
      }
      int row = 0;
      for (auto& [key, r] : keys) r = row++;
      auto image = [&](const Candidate& c) {
        Vec<Rational> v(keys.size(), Rational(0));
        for (int j = 0; j < l; ++j)
          for (const auto& [x, coef] : c.e[j]) v[keys.at({j, x})] = coef;
        return v;
      };

      std::vector<Vec<Rational>> kept_images;
      std::vector<int> kept_index;
      for (int k : group) {
        const Candidate& c = cands[k];
        Vec<Rational> img = image(c);
        std::optional<Vec<Rational>> x;
        if (kept_images.empty()) {
          if (is_zero_vector(img)) x = Vec<Rational>{};
        } else {
          x = solve_any(Matrix<Rational>::from_columns(kept_images, img.size()), img);
        }
        Sparse& target = f_act[c.parent][c.letter];
        if (x) {
          for (std::size_t r = 0; r < x->size(); ++r) add_to(target, kept_index[r], (*x)[r]);
          continue;
        }
        int n = static_cast<int>(m.weights.size());
        m.weights.push_back(c.weight);
        IntVec mono{c.letter};
        mono.insert(mono.end(), m.monomials[c.parent].begin(), m.monomials[c.parent].end());
        m.monomials.push_back(mono);
        m.depth.push_back(depth);
        e_act.push_back(c.e);
        f_act.push_back(std::vector<Sparse>(l));
        target[n] = Rational(1);
        // (f_a b, n') = (b, e_a n')
        for (int n2 : kept_index) {
          Rational g(0);
          for (const auto& [x, coef] : e_act[n2][c.letter]) {
            auto it = gram.find({c.parent, x});
            if (it != gram.end()) g += coef * it->second;
          }
          if (!g.is_zero()) {
            gram[{n, n2}] = g;
            gram[{n2, n}] = g;
          }
        }
        Rational g(0);
        for (const auto& [x, coef] : c.e[c.letter]) {
          auto it = gram.find({c.parent, x});
          if (it != gram.end()) g += coef * it->second;
        }
        gram[{n, n}] = g;
        kept_images.push_back(img);
        kept_index.push_back(n);
        next.push_back(n);
      }
    }
    level = next;
  }

  m.dim = static_cast<int>(m.weights.size());
  const int d = m.dim;
  m.root_vectors.assign(rs.num_roots(), Matrix<Rational>(d, d));
  for (int b = 0; b < d; ++b) {
    for (int j = 0; j < l; ++j) {
      for (const auto& [x, coef] : e_act[b][j]) m.root_vectors[j](x, b) = coef;
      for (const auto& [y, coef] : f_act[b][j]) m.root_vectors[rs.negative(j)](y, b) = coef;
    }
  }
  std::vector<RootStep> tree = root_tree(rs);
  for (int a = l; a < rs.num_positive(); ++a) {
    const RootStep& st = tree[a];
    Rational inv(1, st.p + 1);
    m.root_vectors[a] = inv * commutator(m.root_vectors[st.simple], m.root_vectors[st.beta]);
    m.root_vectors[rs.negative(a)] =
        inv * commutator(m.root_vectors[rs.negative(st.beta)], m.root_vectors[rs.negative(st.simple)]);
  }
  m.coroots.assign(l, Matrix<Rational>(d, d));
  for (int j = 0; j < l; ++j)
    for (int b = 0; b < d; ++b) m.coroots[j](b, b) = Rational(m.weights[b][j]);
  for (int a = 0; a < rs.num_roots(); ++a) m.exp_terms.push_back(exp_series(m.root_vectors[a]));
  for (int j = 0; j < l; ++j) {
    Matrix<Rational> ef = exp_nilpotent(m.f(j));
    Matrix<Rational> ee = exp_nilpotent(-m.e(j));
    m.weyl.push_back(ef * ee * ef);
    Matrix<Rational> ef_inv = exp_nilpotent(-m.f(j));
    Matrix<Rational> ee_inv = exp_nilpotent(m.e(j));
    m.weyl_inverse.push_back(ef_inv * ee_inv * ef_inv);
  }
  m.gram = Matrix<Rational>(d, d);
  for (const auto& [key, g] : gram) m.gram(key.first, key.second) = g;
  m.gram_inverse = inverse(m.gram);
  return m;
}

ChevalleyBasis::ChevalleyBasis(const RootSystem& rs) : rs_(rs) {
  const int l = rs.rank();
  dim_ = rs.num_roots() + l;
  for (int i = 0; i < l; ++i) modules_.push_back(build_fundamental_module(rs, i));

  // dim_ matrix entries on which the basis is linearly independent
  std::vector<Vec<Rational>> rows;
  for (int mi = 0; mi < l && static_cast<int>(rows.size()) < dim_; ++mi) {
    int d = modules_[mi].dim;
    for (int r = 0; r < d && static_cast<int>(rows.size()) < dim_; ++r) {
      for (int c = 0; c < d && static_cast<int>(rows.size()) < dim_; ++c) {
        Vec<Rational> v(dim_);
        for (int a = 0; a < dim_; ++a) v[a] = basis_matrix(mi, a)(r, c);
        if (is_zero_vector(v)) continue;
        rows.push_back(v);
        Matrix<Rational> w = Matrix<Rational>::from_columns(rows, dim_);
        if (rank(w) < rows.size()) {
          rows.pop_back();
          continue;
        }
        witness_.push_back(Entry{mi, r, c});
      }
    }
  }
  if (static_cast<int>(rows.size()) != dim_)
    throw MathError(ErrorCode::InvalidArgument, "fundamental modules are not faithful");
  witness_inverse_ = inverse(Matrix<Rational>::from_columns(rows, dim_).transpose());

  table_.assign(dim_ * dim_, Vec<Rational>(dim_, Rational(0)));
  for (int a = 0; a < dim_; ++a) {
    for (int b = 0; b < dim_; ++b) {
      std::vector<Matrix<Rational>> c;
      for (int mi = 0; mi < l; ++mi) c.push_back(commutator(basis_matrix(mi, a), basis_matrix(mi, b)));
      table_[a * dim_ + b] = coordinates(c);
    }
  }
  for (int a = 0; a < dim_; ++a) {
    Matrix<Rational> m(dim_, dim_);
    for (int b = 0; b < dim_; ++b)
      for (int k = 0; k < dim_; ++k) m(k, b) = table_[a * dim_ + b][k];
    ad_.push_back(m);
  }
}

Rational ChevalleyBasis::structure_constant(int alpha, int beta) const {
  IntVec sum = rs_.root(alpha);
  for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += rs_.root(beta)[i];
  std::optional<int> g = rs_.index_of(sum);
  if (!g) return Rational(0);
  return bracket_basis(alpha, beta)[*g];
}

Matrix<Rational> ChevalleyBasis::form(const Rational& lambda) const {
  Matrix<Rational> k(dim_, dim_);
  for (int a = 0; a < rs_.num_roots(); ++a) k(a, rs_.negative(a)) = lambda * Rational(2) / rs_.norm2(a);
  const int l = rs_.rank();
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j)
      k(coroot_index(i), coroot_index(j)) =
          lambda * Rational(4) * rs_.inner_roots(i, j) / (rs_.norm2(i) * rs_.norm2(j));
  return k;
}

}  // namespace qw
