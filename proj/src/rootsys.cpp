#include "qw/rootsys.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

namespace qw {

namespace {

struct Component {
  char type;
  int n;
};

Matrix<Rational> component_form(const Component& c) {
  int n = c.n;
  Matrix<Rational> b(n, n);
  auto link = [&](int i, int j, const Rational& v) {
    b(i, j) = v;
    b(j, i) = v;
  };
  switch (c.type) {
    case 'A':
      for (int i = 0; i < n; ++i) b(i, i) = 2;
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1, -1);
      break;
    case 'B':
      for (int i = 0; i < n; ++i) b(i, i) = 2;
      b(n - 1, n - 1) = 1;
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1, -1);
      break;
    case 'C':
      for (int i = 0; i < n; ++i) b(i, i) = 1;
      b(n - 1, n - 1) = 2;
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1, Rational(-1, 2));
      link(n - 2, n - 1, -1);
      break;
    case 'D':
      for (int i = 0; i < n; ++i) b(i, i) = 2;
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1, -1);
      link(n - 3, n - 1, -1);
      break;
    case 'G':
      b(0, 0) = Rational(2, 3);
      b(1, 1) = 2;
      link(0, 1, -1);
      break;
    default: break;
  }
  return b;
}

Component parse_component(const std::string& text) {
  if (text.size() < 2) throw MathError(ErrorCode::UnsupportedType, "'" + text + "'");
  char t = text[0];
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(text.substr(1), &used);
    if (used != text.size() - 1) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw MathError(ErrorCode::UnsupportedType, "'" + text + "'");
  }
  bool ok = (t == 'A' && n >= 1) || (t == 'B' && n >= 2) || (t == 'C' && n >= 3) || (t == 'D' && n >= 4) ||
            (t == 'G' && n == 2);
  if (!ok || n > 8) throw MathError(ErrorCode::UnsupportedType, "'" + text + "'");
  return {t, n};
}

}  // namespace

Vec<Rational> to_rational(const IntVec& v) {
  Vec<Rational> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i];
  return r;
}

RootSystem RootSystem::from_name(const std::string& name) {
  std::vector<Component> comps;
  std::size_t start = 0;
  while (true) {
    std::size_t x = name.find('x', start);
    comps.push_back(parse_component(name.substr(start, x == std::string::npos ? std::string::npos : x - start)));
    if (x == std::string::npos) break;
    start = x + 1;
  }
  RootSystem rs;
  rs.name_ = name;
  for (const Component& c : comps) rs.rank_ += c.n;
  rs.form_ = Matrix<Rational>(rs.rank_, rs.rank_);
  int offset = 0;
  for (const Component& c : comps) {
    Matrix<Rational> b = component_form(c);
    for (int i = 0; i < c.n; ++i)
      for (int j = 0; j < c.n; ++j) rs.form_(offset + i, offset + j) = b(i, j);
    offset += c.n;
  }

  // closure of the simple roots under simple reflections
  int l = rs.rank_;
  std::set<IntVec> found;
  std::deque<IntVec> queue;
  for (int i = 0; i < l; ++i) {
    IntVec e(l, 0);
    e[i] = 1;
    found.insert(e);
    queue.push_back(e);
  }
  auto pair = [&](const IntVec& beta, int i) {
    Rational s = 0;
    for (int k = 0; k < l; ++k) s += rs.form_(k, i) * beta[k];
    Rational v = 2 * s / rs.form_(i, i);
    return static_cast<int>(v.convert_to<long>());
  };
  while (!queue.empty()) {
    IntVec beta = queue.front();
    queue.pop_front();
    for (int i = 0; i < l; ++i) {
      IntVec img = beta;
      img[i] -= pair(beta, i);
      if (found.insert(img).second) queue.push_back(img);
    }
  }
  std::vector<IntVec> positives;
  for (const IntVec& r : found)
    if (std::all_of(r.begin(), r.end(), [](int c) { return c >= 0; })) positives.push_back(r);
  std::sort(positives.begin(), positives.end(), [](const IntVec& a, const IntVec& b) {
    int ha = std::accumulate(a.begin(), a.end(), 0);
    int hb = std::accumulate(b.begin(), b.end(), 0);
    if (ha != hb) return ha < hb;
    return a > b;  // alpha_1 before alpha_2 among simple roots
  });
  rs.num_positive_ = static_cast<int>(positives.size());
  rs.roots_ = positives;
  for (const IntVec& p : positives) {
    IntVec n = p;
    for (int& c : n) c = -c;
    rs.roots_.push_back(n);
  }
  for (int k = 0; k < rs.num_roots(); ++k) rs.index_[rs.roots_[k]] = k;
  return rs;
}

std::optional<int> RootSystem::index_of(const IntVec& coords) const {
  auto it = index_.find(coords);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int RootSystem::require_index(const IntVec& coords) const {
  auto idx = index_of(coords);
  if (!idx) {
    std::ostringstream os;
    os << "not a root: [";
    for (std::size_t i = 0; i < coords.size(); ++i) os << (i ? "," : "") << coords[i];
    os << "]";
    throw MathError(ErrorCode::InvalidArgument, os.str());
  }
  return *idx;
}

int RootSystem::height(int index) const {
  const IntVec& r = roots_[index];
  return std::accumulate(r.begin(), r.end(), 0);
}

Rational RootSystem::inner(const Vec<Rational>& x, const Vec<Rational>& y) const { return dot(x, form_ * y); }

Rational RootSystem::inner_roots(int a, int b) const { return inner(to_rational(roots_[a]), to_rational(roots_[b])); }

int RootSystem::pairing(int beta, int alpha) const {
  Rational v = 2 * inner_roots(beta, alpha) / norm2(alpha);
  return static_cast<int>(v.convert_to<long>());
}

IntVec RootSystem::dynkin_labels(int index) const {
  IntVec labels(rank_);
  for (int j = 0; j < rank_; ++j) labels[j] = pairing(index, j);
  return labels;
}

Matrix<Rational> RootSystem::reflection(int index) const {
  Matrix<Rational> m = Matrix<Rational>::identity(rank_);
  const IntVec& a = roots_[index];
  Rational n = norm2(index);
  for (int j = 0; j < rank_; ++j) {
    // s(e_j) = e_j - 2(e_j, a)/(a,a) a
    Rational p = 0;
    for (int k = 0; k < rank_; ++k) p += form_(j, k) * a[k];
    p = 2 * p / n;
    for (int i = 0; i < rank_; ++i) m(i, j) -= p * a[i];
  }
  return m;
}

Vec<Rational> RootSystem::coroot(int index) const {
  // alpha^vee = 2 alpha/(alpha,alpha) = sum_i c_i (alpha_i,alpha_i)/(alpha,alpha) alpha_i^vee
  Vec<Rational> v(rank_);
  Rational n = norm2(index);
  for (int i = 0; i < rank_; ++i) v[i] = roots_[index][i] * form_(i, i) / n;
  return v;
}

Matrix<Rational> RootSystem::coroot_reflection(int index) const {
  // on coroots: s(x) = x - <alpha, x> alpha^vee
  Matrix<Rational> m = Matrix<Rational>::identity(rank_);
  Vec<Rational> av = coroot(index);
  for (int j = 0; j < rank_; ++j) {
    // <alpha, alpha_j^vee>
    int p = 0;
    for (int k = 0; k < rank_; ++k) p += roots_[index][k] * cartan(k, j);
    for (int i = 0; i < rank_; ++i) m(i, j) -= p * av[i];
  }
  return m;
}

int RootSystem::apply(const Matrix<Rational>& w, int index) const {
  Vec<Rational> img = w * to_rational(roots_[index]);
  IntVec coords(rank_);
  for (int i = 0; i < rank_; ++i) {
    if (boost::multiprecision::denominator(img[i]) != 1) throw MathError(ErrorCode::InvalidArgument, "matrix does not preserve roots");
    coords[i] = static_cast<int>(img[i].convert_to<long>());
  }
  return require_index(coords);
}

std::vector<int> RootSystem::permutation(const Matrix<Rational>& w) const {
  std::vector<int> p(num_roots());
  for (int k = 0; k < num_roots(); ++k) p[k] = apply(w, k);
  return p;
}

// ------------------------------------------------------------- weyl element

WeylElement::WeylElement(const RootSystem& rs, std::vector<int> word) : word_(std::move(word)) {
  matrix_ = Matrix<Rational>::identity(rs.rank());
  for (int i : word_) {
    if (i < 0 || i >= rs.rank())
      throw MathError(ErrorCode::InvalidArgument, "simple reflection index " + std::to_string(i + 1));
    matrix_ = matrix_ * rs.reflection(i);
  }
}

WeylElement WeylElement::longest(const RootSystem& rs) {
  // -1 is not always in W, so build by descending until no simple root is sent up
  std::vector<int> word;
  Matrix<Rational> w = Matrix<Rational>::identity(rs.rank());
  while (true) {
    int next = -1;
    for (int i = 0; i < rs.rank(); ++i) {
      if (rs.is_positive(rs.apply(w, i))) {
        next = i;
        break;
      }
    }
    if (next < 0) break;
    word.push_back(next);
    w = w * rs.reflection(next);
  }
  return WeylElement(rs, word);
}

Matrix<Rational> WeylElement::coroot_matrix(const RootSystem& rs) const {
  Matrix<Rational> m = Matrix<Rational>::identity(rs.rank());
  for (int i : word_) m = m * rs.coroot_reflection(i);
  return m;
}

WeylElement WeylElement::compose(const RootSystem& rs, const WeylElement& other) const {
  std::vector<int> w = word_;
  w.insert(w.end(), other.word_.begin(), other.word_.end());
  return WeylElement(rs, w);
}

WeylElement WeylElement::inverse(const RootSystem& rs) const {
  std::vector<int> w(word_.rbegin(), word_.rend());
  return WeylElement(rs, w);
}

std::vector<int> reduced_word(const RootSystem& rs, const Matrix<Rational>& w0) {
  std::vector<int> rev;
  Matrix<Rational> w = w0;
  while (true) {
    int descent = -1;
    for (int i = 0; i < rs.rank(); ++i) {
      if (!rs.is_positive(rs.apply(w, i))) {
        descent = i;
        break;
      }
    }
    if (descent < 0) break;
    rev.push_back(descent);
    w = w * rs.reflection(descent);
  }
  return std::vector<int>(rev.rbegin(), rev.rend());
}

WeylAnalysis analyze(const RootSystem& rs, const WeylElement& w, const std::vector<int>& positive) {
  WeylAnalysis a;
  std::vector<bool> pos(rs.num_roots(), false);
  if (positive.empty()) {
    for (int k = 0; k < rs.num_positive(); ++k) pos[k] = true;
  } else {
    for (int k : positive) pos[k] = true;
  }
  for (int k = 0; k < rs.num_roots(); ++k) {
    if (pos[k] && !pos[rs.apply(w.matrix(), k)]) a.inversion_set.push_back(k);
  }
  a.length = static_cast<int>(a.inversion_set.size());
  a.reduced_word = reduced_word(rs, w.matrix());
  Matrix<Rational> id = Matrix<Rational>::identity(rs.rank());
  Matrix<Rational> p = w.matrix();
  while (!(p == id)) {
    p = p * w.matrix();
    ++a.order;
  }
  return a;
}

namespace {

std::vector<long> key(const Matrix<Rational>& m) {
  std::vector<long> k;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) k.push_back(m(i, j).convert_to<long>());
  return k;
}

}  // namespace

std::vector<WeylElement> weyl_group(const RootSystem& rs) {
  std::vector<WeylElement> out;
  std::set<std::vector<long>> seen;
  std::deque<std::vector<int>> queue;
  queue.push_back({});
  seen.insert(key(Matrix<Rational>::identity(rs.rank())));
  while (!queue.empty()) {
    std::vector<int> word = queue.front();
    queue.pop_front();
    WeylElement w(rs, word);
    out.push_back(w);
    for (int i = 0; i < rs.rank(); ++i) {
      Matrix<Rational> m = w.matrix() * rs.reflection(i);
      if (seen.insert(key(m)).second) {
        std::vector<int> next = word;
        next.push_back(i);
        queue.push_back(next);
      }
    }
  }
  return out;
}

std::vector<WeylElement> conjugacy_class_representatives(const RootSystem& rs) {
  std::vector<WeylElement> group = weyl_group(rs);
  std::vector<Matrix<Rational>> inverses;
  for (const WeylElement& g : group) inverses.push_back(g.inverse(rs).matrix());
  std::set<std::vector<long>> assigned;
  std::vector<WeylElement> reps;
  // group is ordered by length, so the first unassigned element of a class
  // has minimal length; among equal lengths pick the least reduced word
  std::vector<std::pair<int, std::vector<int>>> order;
  for (std::size_t k = 0; k < group.size(); ++k) {
    std::vector<int> rw = reduced_word(rs, group[k].matrix());
    order.push_back({static_cast<int>(rw.size()), rw});
  }
  std::vector<std::size_t> idx(group.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return order[a] < order[b]; });
  for (std::size_t k : idx) {
    if (assigned.count(key(group[k].matrix()))) continue;
    // the lexicographically least reduced word of minimal length in the class
    std::vector<int> best = order[k].second;
    for (std::size_t g = 0; g < group.size(); ++g) {
      Matrix<Rational> c = group[g].matrix() * group[k].matrix() * inverses[g];
      assigned.insert(key(c));
    }
    reps.push_back(WeylElement(rs, best));
  }
  return reps;
}

std::vector<int> parse_word(const std::string& text) {
  std::vector<int> word;
  std::string token;
  std::istringstream is(text);
  while (std::getline(is, token, ',')) {
    if (token.empty()) continue;
    try {
      word.push_back(std::stoi(token) - 1);
    } catch (const std::exception&) {
      throw MathError(ErrorCode::InvalidArgument, "malformed word '" + text + "'");
    }
  }
  return word;
}

std::string word_to_string(const std::vector<int>& word) {
  std::string s;
  for (std::size_t i = 0; i < word.size(); ++i) s += (i ? "," : "") + std::to_string(word[i] + 1);
  return s;
}

}  // namespace qw
