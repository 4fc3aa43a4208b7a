#include "qw/ordering.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "qw/errors.hpp"

namespace qw {

namespace {

std::vector<std::vector<int>> simple_perms(const RootSystem& rs) {
  std::vector<std::vector<int>> out;
  for (int i = 0; i < rs.rank(); ++i) out.push_back(rs.permutation(rs.reflection(i)));
  return out;
}

std::optional<int> add_roots(const RootSystem& rs, int a, int b, int ca = 1, int cb = 1) {
  IntVec v(rs.rank());
  for (int i = 0; i < rs.rank(); ++i) v[i] = ca * rs.root(a)[i] + cb * rs.root(b)[i];
  return rs.index_of(v);
}

/// Depth-first walk over reduced words of the longest element in lexicographic
/// order. `accept(position, root)` prunes prefixes; `leaf` returns true to stop.
long long walk_reduced_words(const RootSystem& rs, const std::function<bool(int, int)>& accept,
                             const std::function<bool(const std::vector<int>&, const std::vector<int>&)>& leaf) {
  auto sp = simple_perms(rs);
  int D = rs.num_positive();
  std::vector<int> word, seq;
  std::vector<int> w(rs.num_roots());
  for (int a = 0; a < rs.num_roots(); ++a) w[a] = a;
  long long visited = 0;
  bool stop = false;
  std::function<void()> rec = [&]() {
    if (stop) return;
    if (static_cast<int>(seq.size()) == D) {
      ++visited;
      stop = leaf(word, seq);
      return;
    }
    for (int i = 0; i < rs.rank() && !stop; ++i) {
      int beta = w[rs.simple(i)];
      if (!rs.is_positive(beta)) continue;
      if (!accept(static_cast<int>(seq.size()), beta)) continue;
      std::vector<int> saved = w;
      for (int a = 0; a < rs.num_roots(); ++a) w[a] = saved[sp[i][a]];
      word.push_back(i);
      seq.push_back(beta);
      rec();
      word.pop_back();
      seq.pop_back();
      w = std::move(saved);
    }
  };
  rec();
  return visited;
}

int coxeter_m(const RootSystem& rs, int i, int j) {
  switch (rs.cartan(i, j) * rs.cartan(j, i)) {
    case 0: return 2;
    case 1: return 3;
    case 2: return 4;
    case 3: return 6;
    default: break;
  }
  throw MathError(ErrorCode::InvalidArgument, "unexpected Cartan product");
}

std::vector<int> inversion_set(const RootSystem& rs, const Matrix<Rational>& w) {
  std::vector<int> out;
  for (int a = 0; a < rs.num_positive(); ++a)
    if (!rs.is_positive(rs.apply(w, a))) out.push_back(a);
  return out;
}

std::vector<int> minus_set(const RootSystem& rs, const Matrix<Rational>& w) {
  std::vector<int> out;
  for (int a = 0; a < rs.num_positive(); ++a)
    if (rs.apply(w, a) == rs.negative(a)) out.push_back(a);
  return out;
}

}  // namespace

std::optional<NormalityViolation> validate_normal(const RootSystem& rs, const std::vector<int>& seq) {
  std::vector<int> pos(rs.num_roots(), -1);
  for (std::size_t p = 0; p < seq.size(); ++p) pos[seq[p]] = static_cast<int>(p);
  for (std::size_t x = 0; x < seq.size(); ++x) {
    for (std::size_t y = x + 1; y < seq.size(); ++y) {
      auto g = add_roots(rs, seq[x], seq[y]);
      if (!g || pos[*g] < 0) continue;
      if (!(pos[*g] > static_cast<int>(x) && pos[*g] < static_cast<int>(y))) return NormalityViolation{seq[x], seq[y], *g};
    }
  }
  return std::nullopt;
}

NormalOrdering ordering_from_reduced_word(const RootSystem& rs, const std::vector<int>& word) {
  auto sp = simple_perms(rs);
  std::vector<int> w(rs.num_roots());
  for (int a = 0; a < rs.num_roots(); ++a) w[a] = a;
  NormalOrdering out;
  out.reduced_word = word;
  for (int i : word) {
    if (i < 0 || i >= rs.rank()) throw MathError(ErrorCode::InvalidArgument, "simple index out of range");
    int beta = w[rs.simple(i)];
    if (!rs.is_positive(beta)) throw MathError(ErrorCode::NotReduced, "word " + word_to_string(word) + " is not reduced");
    out.sequence.push_back(beta);
    std::vector<int> saved = w;
    for (int a = 0; a < rs.num_roots(); ++a) w[a] = saved[sp[i][a]];
  }
  if (static_cast<int>(word.size()) != rs.num_positive())
    throw MathError(ErrorCode::NotLongest, "word " + word_to_string(word) + " has length " + std::to_string(word.size()) +
                                               ", longest element has length " + std::to_string(rs.num_positive()));
  return out;
}

std::vector<NormalOrdering> all_normal_orderings(const RootSystem& rs, std::size_t limit) {
  std::vector<NormalOrdering> out;
  walk_reduced_words(
      rs, [](int, int) { return true; },
      [&](const std::vector<int>& word, const std::vector<int>& seq) {
        if (out.size() == limit) throw MathError(ErrorCode::InvalidArgument, "more than " + std::to_string(limit) + " normal orderings");
        out.push_back({seq, word});
        return false;
      });
  return out;
}

std::vector<Transposition> elementary_transpositions(const RootSystem& rs, const NormalOrdering& ordering) {
  std::vector<Transposition> out;
  const std::vector<int>& word = ordering.reduced_word;
  for (std::size_t k = 0; k < word.size(); ++k) {
    for (int j = 0; j < rs.rank(); ++j) {
      int i = word[k];
      if (i == j) continue;
      std::size_t m = coxeter_m(rs, i, j);
      if (k + m > word.size()) continue;
      bool match = true;
      for (std::size_t t = 0; t < m; ++t) match = match && word[k + t] == (t % 2 == 0 ? i : j);
      if (!match) continue;
      std::vector<int> w2 = word;
      for (std::size_t t = 0; t < m; ++t) w2[k + t] = (t % 2 == 0 ? j : i);
      out.push_back({static_cast<int>(k), static_cast<int>(k + m), ordering_from_reduced_word(rs, w2)});
    }
  }
  return out;
}

bool is_rank2_pattern(const RootSystem& rs, const std::vector<int>& seq) {
  auto matches = [&](const std::vector<int>& s) {
    int a = s.front(), b = s.back();
    if (rs.norm2(a) < rs.norm2(b)) return false;
    if (add_roots(rs, a, b, 1, -1)) return false;
    std::vector<std::pair<int, int>> coeffs;
    switch (s.size()) {
      case 2: coeffs = {{1, 0}, {0, 1}}; break;
      case 3: coeffs = {{1, 0}, {1, 1}, {0, 1}}; break;
      case 4: coeffs = {{1, 0}, {1, 1}, {1, 2}, {0, 1}}; break;
      case 6: coeffs = {{1, 0}, {1, 1}, {2, 3}, {1, 2}, {1, 3}, {0, 1}}; break;
      default: return false;
    }
    if (s.size() == 2 && add_roots(rs, a, b)) return false;
    for (std::size_t t = 0; t < s.size(); ++t) {
      IntVec v(rs.rank());
      for (int i = 0; i < rs.rank(); ++i) v[i] = coeffs[t].first * rs.root(a)[i] + coeffs[t].second * rs.root(b)[i];
      auto idx = rs.index_of(v);
      if (!idx || *idx != s[t]) return false;
    }
    return true;
  };
  if (seq.size() < 2) return false;
  std::vector<int> rev(seq.rbegin(), seq.rend());
  return matches(seq) || matches(rev);
}

CircularOrdering::CircularOrdering(const RootSystem& rs, const NormalOrdering& ordering) : rs_(&rs) {
  circle_ = ordering.sequence;
  for (int b : ordering.sequence) circle_.push_back(rs.negative(b));
  position_.assign(rs.num_roots(), -1);
  for (std::size_t p = 0; p < circle_.size(); ++p) position_[circle_[p]] = static_cast<int>(p);
}

std::vector<int> CircularOrdering::segment(int a, int b) const {
  std::vector<int> out;
  int n = static_cast<int>(circle_.size());
  for (int p = position_[a];; p = (p + 1) % n) {
    out.push_back(circle_[p]);
    if (circle_[p] == b) break;
  }
  return out;
}

bool CircularOrdering::is_minimal(int a, int b) const {
  if (a == b || a == rs_->negative(b)) return false;
  for (int r : segment(a, b))
    if (r == rs_->negative(a) || r == rs_->negative(b)) return false;
  return true;
}

std::vector<int> CircularOrdering::minimal_segment(int a, int b) const {
  if (!is_minimal(a, b)) return {};
  return segment(a, b);
}

bool AssociatedOrdering::all_certified() const {
  for (const auto& c : certificates)
    if (!c.second) return false;
  return true;
}

std::vector<std::pair<std::string, bool>> certify_associated(const ClassData& cd, const NormalOrdering& ordering,
                                                             AssociatedOrdering* out) {
  const RootSystem& rs = cd.rs;
  const std::vector<int>& seq = ordering.sequence;
  int D = rs.num_positive();
  std::vector<int> pos(rs.num_roots(), -1);
  for (int p = 0; p < static_cast<int>(seq.size()); ++p) pos[seq[p]] = p;
  const Matrix<Rational>& S = cd.s.matrix();
  const Matrix<Rational>& S1 = cd.s1.matrix();
  const Matrix<Rational>& S2 = cd.s2.matrix();
  Matrix<Rational> Sinv = cd.s.inverse(rs).matrix();

  std::vector<int> inv1 = inversion_set(rs, S1), inv2 = inversion_set(rs, S2);
  std::vector<int> invs = inversion_set(rs, S), invsinv = inversion_set(rs, Sinv);
  std::vector<int> n1 = minus_set(rs, S1), n2 = minus_set(rs, S2);
  std::vector<int> fixed;
  for (int a = 0; a < D; ++a)
    if (rs.apply(S, a) == a) fixed.push_back(a);
  int l1 = static_cast<int>(inv1.size()), l2 = static_cast<int>(inv2.size()), ls = static_cast<int>(invs.size());
  int D0 = static_cast<int>(fixed.size());
  int lprime = static_cast<int>(cd.gamma1.size() + cd.gamma2.size());

  auto positions_are = [&](const std::vector<int>& set, Range r) {
    if (static_cast<int>(set.size()) != r.size() || r.begin < 0 || r.end > D) return false;
    for (int a : set)
      if (!r.contains(pos[a])) return false;
    return true;
  };
  auto span_of = [&](const std::vector<int>& set) {
    Range r{D, -1};
    for (int a : set) {
      r.begin = std::min(r.begin, pos[a]);
      r.end = std::max(r.end, pos[a] + 1);
    }
    if (set.empty()) r = {0, 0};
    return r;
  };
  auto by_position = [&](std::vector<int> list) {
    std::sort(list.begin(), list.end(), [&](int a, int b) { return pos[a] < pos[b]; });
    return list;
  };
  std::vector<int> g1 = by_position(cd.gamma1), g2 = by_position(cd.gamma2);
  std::vector<int> all_gammas = by_position([&] {
    std::vector<int> v = g1;
    v.insert(v.end(), g2.begin(), g2.end());
    return v;
  }());

  std::vector<std::pair<std::string, bool>> cert;
  cert.emplace_back("normal", !validate_normal(rs, seq).has_value());
  cert.emplace_back("reduced decomposition l(s) = l(s1) + l(s2)", ls == l1 + l2);

  auto set_of = [](const std::vector<int>& v) { return std::set<int>(v.begin(), v.end()); };
  auto image = [&](const Matrix<Rational>& w, const std::vector<int>& v) {
    std::set<int> o;
    for (int a : v) o.insert(rs.apply(w, a));
    return o;
  };
  auto disjoint_union = [&](const std::vector<int>& total, const std::vector<int>& x, const std::set<int>& y) {
    std::set<int> u = set_of(x);
    for (int a : y) {
      if (u.count(a)) return false;
      u.insert(a);
    }
    return u == set_of(total);
  };
  cert.emplace_back("Delta_s = Delta_s2 + s2(Delta_s1)", disjoint_union(invs, inv2, image(S2, inv1)));
  cert.emplace_back("Delta_s^-1 = Delta_s1 + s1(Delta_s2)", disjoint_union(invsinv, inv1, image(S1, inv2)));

  Range r_s1{0, l1};
  Range r_fixed{D - D0, D};
  Range r_s2{D - D0 - l2, D - D0};
  Range r_s{D - D0 - ls, D - D0};
  cert.emplace_back("Delta_s1 initial segment", positions_are(inv1, r_s1));
  cert.emplace_back("Delta_s2 precedes (Delta_0)_+", positions_are(inv2, r_s2));
  cert.emplace_back("(Delta_0)_+ final segment", positions_are(fixed, r_fixed));

  Range r_n1 = span_of(n1), r_n2 = span_of(n2);
  int nn1 = static_cast<int>(g1.size()), nn2 = static_cast<int>(g2.size());
  int p1 = static_cast<int>(n1.size()), p2 = static_cast<int>(n2.size());
  bool ok_n1 = positions_are(n1, r_n1) && r_n1.begin >= r_s1.begin && r_n1.end <= r_s1.end;
  if (nn1 > 0) {
    ok_n1 = ok_n1 && pos[g1.back()] == r_n1.end - 1 && (p1 - nn1) % 2 == 0 && pos[g1.front()] - r_n1.begin == (p1 - nn1) / 2;
  }
  bool ok_n2 = positions_are(n2, r_n2) && r_n2.begin >= r_s2.begin && r_n2.end <= r_s2.end;
  if (nn2 > 0) {
    ok_n2 = ok_n2 && pos[g2.front()] == r_n2.begin && (p2 - nn2) % 2 == 0 && r_n2.end - 1 - pos[g2.back()] == (p2 - nn2) / 2;
  }
  cert.emplace_back("s1 = -1 roots: segment in Delta_s1 ending with a gamma", ok_n1);
  cert.emplace_back("s2 = -1 roots: segment in Delta_s2 starting with a gamma", ok_n2);

  Range r_m{nn1 > 0 ? pos[g1.front()] : 0, nn2 > 0 ? pos[g2.back()] + 1 : D - D0};
  bool parity = (ls - lprime) % 2 == 0;
  cert.emplace_back("|Delta_m+| = D - ((l(s) - l')/2 + D_0)", parity && r_m.size() == D - ((ls - lprime) / 2 + D0));
  cert.emplace_back("Delta_s minimal segment ending at Delta_s2", positions_are(invs, r_s) && r_s.begin <= r_s2.begin);

  bool greater = true, shift = true, fixed_shift = true;
  std::vector<int> fixed_all;
  for (int a = 0; a < rs.num_roots(); ++a)
    if (rs.apply(S, a) == a) fixed_all.push_back(a);
  for (int a = 0; a < D; ++a) {
    int sa = rs.apply(S, a);
    if (sa == a || !rs.is_positive(sa)) continue;
    if (pos[sa] <= pos[a]) greater = false;
    int k = cd.stratum_of[a];
    for (int j = 0; j < k; ++j) {
      std::vector<int> left, right;  // s a + beta, a + gamma
      for (int b = 0; b < rs.num_roots(); ++b) {
        if (cd.stratum_of[b] != j) continue;
        if (auto x = add_roots(rs, sa, b)) left.push_back(*x);
        if (auto y = add_roots(rs, a, b)) right.push_back(*y);
      }
      if (left.empty() || right.empty()) continue;
      for (int x : left)
        for (int y : right)
          if (!rs.is_positive(x) || !rs.is_positive(y) || pos[x] <= pos[y]) shift = false;
    }
    for (int a0 : fixed_all) {
      if (auto x = add_roots(rs, sa, a0))
        if (!rs.is_positive(*x) || pos[*x] <= pos[a]) fixed_shift = false;
    }
  }
  cert.emplace_back("s alpha > alpha", greater);
  cert.emplace_back("s alpha + beta > alpha + gamma for beta, gamma in lower strata", shift);
  cert.emplace_back("s alpha + alpha_0 > alpha for alpha_0 in Delta_0", fixed_shift);

  bool no_rep = true;
  for (int x = r_m.begin; x < r_m.end && no_rep; ++x) {
    for (int y = x + 1; y < r_m.end && no_rep; ++y) {
      std::vector<Vec<Rational>> cols;
      for (int g : all_gammas)
        if (pos[g] > x && pos[g] < y) cols.push_back(to_rational(rs.root(g)));
      Vec<Rational> target = add(to_rational(rs.root(seq[x])), to_rational(rs.root(seq[y])));
      if (cols.empty()) continue;
      auto c = solve_any(Matrix<Rational>::from_columns(cols, rs.rank()), target);
      if (!c) continue;
      bool natural = true;
      for (const Rational& v : *c) natural = natural && v >= 0 && denominator(v) == 1;
      if (natural) no_rep = false;
    }
  }
  cert.emplace_back("no sum in Delta_m+ is a nonnegative combination of gammas between", no_rep);

  if (out) {
    out->base = ordering;
    out->gamma1 = g1;
    out->gamma2 = g2;
    out->s1_inversions = r_s1;
    out->s1_minus = r_n1;
    out->s2_inversions = r_s2;
    out->s2_minus = r_n2;
    out->fixed = r_fixed;
    out->m_plus = r_m;
    out->s_inversions = r_s;
    out->length_s = ls;
    out->lprime = lprime;
    out->certificates = cert;
  }
  return cert;
}

AssociatedOrdering build_associated_ordering(const ClassData& cd) {
  const RootSystem& rs = cd.rs;
  int D = rs.num_positive();
  const Matrix<Rational>& S = cd.s.matrix();
  Matrix<Rational> Sinv = cd.s.inverse(rs).matrix();
  std::vector<char> in1(rs.num_roots(), 0), in2(rs.num_roots(), 0), ins(rs.num_roots(), 0), in0(rs.num_roots(), 0);
  int l1 = 0, l2 = 0, ls = 0, D0 = 0;
  for (int a = 0; a < D; ++a) {
    if (!rs.is_positive(rs.apply(cd.s1.matrix(), a))) in1[a] = 1, ++l1;
    if (!rs.is_positive(rs.apply(cd.s2.matrix(), a))) in2[a] = 1, ++l2;
    if (!rs.is_positive(rs.apply(S, a))) ins[a] = 1, ++ls;
    if (rs.apply(S, a) == a) in0[a] = 1, ++D0;
  }
  std::vector<int> preimage(rs.num_roots());
  for (int a = 0; a < rs.num_roots(); ++a) preimage[a] = rs.apply(Sinv, a);
  std::vector<char> placed(rs.num_roots(), 0);
  std::vector<int> stack;

  auto accept = [&](int p, int root) {
    // the walk backtracks without telling us, so rebuild `placed` from depth
    while (static_cast<int>(stack.size()) > p) {
      placed[stack.back()] = 0;
      stack.pop_back();
    }
    if ((p < l1) != static_cast<bool>(in1[root])) return false;
    if ((p >= D - D0) != static_cast<bool>(in0[root])) return false;
    if (p >= D - D0 - l2 && p < D - D0 && !in2[root]) return false;
    if (p >= D - D0 - ls && p < D - D0 && !ins[root]) return false;
    if (p < D - D0 - ls && ins[root]) return false;
    int a = preimage[root];  // root = s a must come after a
    if (a != root && rs.is_positive(a) && !placed[a]) return false;
    placed[root] = 1;
    stack.push_back(root);
    return true;
  };
  AssociatedOrdering result;
  bool found = false;
  long long visited = walk_reduced_words(rs, accept, [&](const std::vector<int>& word, const std::vector<int>& seq) {
    NormalOrdering no{seq, word};
    AssociatedOrdering cand;
    certify_associated(cd, no, &cand);
    if (cand.all_certified()) {
      result = cand;
      found = true;
      return true;
    }
    return false;
  });
  if (!found)
    throw MathError(ErrorCode::NotFound, "no associated ordering among " + std::to_string(visited) +
                                             " reduced words of the longest element surviving the segment constraints");
  result.words_visited = visited;
  return result;
}

std::pair<ClassData, AssociatedOrdering> associate(const RootSystem& rs, const WeylElement& s, unsigned seed) {
  std::vector<CarterDecomposition> all = carter_candidates(rs, s);
  std::stable_partition(all.begin(), all.end(), [&](const CarterDecomposition& d) { return fixed_roots_condition(rs, s, d); });
  std::string tried;
  for (const CarterDecomposition& dec : all) {
    ClassData cd = prepare_class(rs, s, dec, seed);
    try {
      AssociatedOrdering ao = build_associated_ordering(cd);
      return {cd, ao};
    } catch (const MathError& e) {
      if (e.code() != ErrorCode::NotFound) throw;
      tried += (tried.empty() ? "" : "; ") + e.detail();
    }
  }
  throw MathError(ErrorCode::NotFound, "no Carter decomposition of s = " + word_to_string(s.word()) +
                                           " admits an associated ordering (" + tried + ")");
}

}  // namespace qw
