#include "qw/cli.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <memory>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qw/poisson.hpp"
#include "qw/sampling.hpp"
#include "qw/verify.hpp"

namespace qw {

namespace {

using json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

// Malformed user input, as opposed to a mathematical failure.
struct ParseFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

[[noreturn]] void malformed(const std::string& what) { throw MathError(ErrorCode::InvalidArgument, what); }

class Lexer {
 public:
  explicit Lexer(const std::string& text) : s_(text) {}

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool done() {
    skip();
    return i_ == s_.size();
  }
  char peek() {
    skip();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++i_;
    return true;
  }
  bool accept(const std::string& word) {
    skip();
    if (s_.compare(i_, word.size(), word) != 0) return false;
    i_ += word.size();
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  long long integer() {
    skip();
    std::size_t start = i_;
    if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) ++i_;
    std::size_t digits = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (i_ == digits) fail("expected an integer");
    try {
      return std::stoll(s_.substr(start, i_ - start));
    } catch (const std::out_of_range&) {
      fail("integer out of range");
    }
  }
  Rational rational() {
    skip();
    std::size_t start = i_;
    if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) ++i_;
    while (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '/')) ++i_;
    std::string tok = s_.substr(start, i_ - start);
    if (!tok.empty() && tok[0] == '+') tok.erase(0, 1);
    if (tok.empty() || tok == "-") fail("expected a rational");
    try {
      return parse_rational(tok);
    } catch (const MathError& e) {
      if (e.code() == ErrorCode::ZeroDenominator || e.code() == ErrorCode::DivisionByZero) throw;
      fail("malformed rational '" + tok + "'");
    }
  }
  [[noreturn]] void fail(const std::string& what) const {
    malformed(what + " at offset " + std::to_string(i_) + " in '" + s_ + "'");
  }

 private:
  std::string s_;
  std::size_t i_ = 0;
};

int one_based(Lexer& lx, int upper, const char* what) {
  long long k = lx.integer();
  if (k < 1 || k > upper) lx.fail(std::string(what) + " " + std::to_string(k) + " out of range 1.." + std::to_string(upper));
  return static_cast<int>(k - 1);
}

std::vector<Rational> rational_list(Lexer& lx, char close) {
  std::vector<Rational> v{lx.rational()};
  while (lx.accept(',')) v.push_back(lx.rational());
  if (close) lx.expect(close);
  return v;
}

class FunctionParser {
 public:
  FunctionParser(const ChevalleyBasis& cb, const std::string& text) : cb_(cb), lx_(text) {}

  GFunction parse() {
    GFunction f = expr();
    if (!lx_.done()) lx_.fail("unexpected trailing input");
    return f;
  }

 private:
  GFunction expr() {
    GFunction f = term();
    for (;;) {
      if (lx_.accept('+'))
        f = f + term();
      else if (lx_.accept('-'))
        f = f - term();
      else
        return f;
    }
  }
  GFunction term() {
    GFunction f = unary();
    for (;;) {
      if (lx_.accept('*'))
        f = f * unary();
      else if (lx_.accept('/'))
        f = f / unary();
      else
        return f;
    }
  }
  GFunction unary() {
    if (lx_.accept('-')) return -unary();
    return primary();
  }
  int module_index() { return one_based(lx_, static_cast<int>(cb_.modules().size()), "module"); }
  GFunction primary() {
    if (lx_.accept('(')) {
      GFunction f = expr();
      lx_.expect(')');
      return f;
    }
    if (lx_.accept("entry(")) {
      int i = module_index();
      int dim = cb_.module(i).dim;
      lx_.expect(',');
      int b = one_based(lx_, dim, "basis vector");
      lx_.expect(',');
      int c = one_based(lx_, dim, "basis vector");
      lx_.expect(')');
      return GFunction::entry(cb_, i, b, c);
    }
    if (lx_.accept("trace(")) {
      int i = module_index();
      lx_.expect(')');
      return GFunction::trace(cb_, i);
    }
    if (lx_.accept("mc(")) {
      int i = module_index();
      std::size_t dim = cb_.module(i).dim;
      lx_.expect(';');
      std::vector<Rational> u = rational_list(lx_, ';');
      std::vector<Rational> v = rational_list(lx_, ')');
      if (u.size() != dim || v.size() != dim) lx_.fail("mc vectors need " + std::to_string(dim) + " entries");
      return GFunction::coefficient(cb_, i, u, v);
    }
    char c = lx_.peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long long k = lx_.integer();
      return GFunction(Rational(k));
    }
    lx_.fail("expected a number, entry(, trace(, mc( or (");
  }

  const ChevalleyBasis& cb_;
  Lexer lx_;
};

// ---------------------------------------------------------------------------
// JSON helpers

json str(const Rational& x) { return to_string(x); }

json strings(const std::vector<Rational>& v) {
  json a = json::array();
  for (const Rational& x : v) a.push_back(to_string(x));
  return a;
}

json qstrings(const QVec& v) {
  json a = json::array();
  for (const QuadraticNumber& x : v) a.push_back(to_string(x));
  return a;
}

json matrix_json(const Matrix<Rational>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json word_json(const std::vector<int>& word) {
  json a = json::array();
  for (int i : word) a.push_back(i + 1);
  return a;
}

json root_json(const RootSystem& rs, int index) { return rs.root(index); }

json roots_json(const RootSystem& rs, const std::vector<int>& roots) {
  json a = json::array();
  for (int r : roots) a.push_back(root_json(rs, r));
  return a;
}

json sign_json(const SignCertificate& c) {
  return {{"sign", c.sign},
          {"exact", c.exact},
          {"lower", str(c.lower)},
          {"upper", str(c.upper)},
          {"precision_bits", c.precision_bits},
          {"expression", c.expression}};
}

json range_json(const Range& r) { return {{"begin", r.begin + 1}, {"end", r.end}, {"size", r.size()}}; }

json certificates_json(const std::vector<std::pair<std::string, bool>>& certs) {
  json a = json::array();
  for (const auto& [name, ok] : certs) a.push_back({{"name", name}, {"passed", ok}});
  return a;
}

// c_p and d_p are read off the modules, not taken from a table.
json constants_json(const ChevalleyBasis& cb, const WordData& wd) {
  const RootSystem& rs = cb.root_system();
  json a = json::array();
  for (int p = 0; p < wd.size(); ++p) {
    a.push_back({{"p", p + 1},
                 {"letter", wd.word[p] + 1},
                 {"beta", root_json(rs, wd.beta[p])},
                 {"module", wd.module[p] + 1},
                 {"upper_vector", strings(wd.upper[p])},
                 {"lower_vector", strings(wd.lower[p])},
                 {"c", str(wd.c[p])},
                 {"d", str(wd.d[p])},
                 {"c_rule", "X_beta(w_p v) = (1/c_p) w_{p-1} v in the module"},
                 {"d_rule", "1/d_p = (w_{p-1}v, X_beta(1) w_p v) / (w_p v, X_beta(1) w_p v)"}});
  }
  return a;
}

json r_certificate_json(const RCertificate& c) {
  return {{"plus_identity", c.plus_identity}, {"minus_identity", c.minus_identity}, {"fixed_zero", c.fixed_zero},
          {"skew", c.skew},                   {"mcybe", c.mcybe},                   {"mcybe_failures", c.mcybe_failures},
          {"passed", c.ok()}};
}

// ---------------------------------------------------------------------------
// Requests

struct Request {
  std::string command;
  std::string type;
  std::string s_word;
  std::string w_word;
  std::string point;
  std::string function;
  std::string f;
  std::string h;
  std::string kind;
  std::string lambda = "1";
  std::string output;
  int index = 0;
  bool matrices = false;
  unsigned seed = 0;
};

template <class F>
auto parsed(F&& f) {
  try {
    return f();
  } catch (const MathError& e) {
    if (e.code() == ErrorCode::InvalidArgument || e.code() == ErrorCode::UnsupportedType) throw ParseFailure(e.what());
    throw;
  }
}

RootSystem root_system(const Request& q) {
  return parsed([&] { return RootSystem::from_name(q.type); });
}

std::vector<int> word(const RootSystem& rs, const std::string& text, const char* name) {
  return parsed([&] {
    std::vector<int> w = parse_word(text);
    for (int i : w)
      if (i < 0 || i >= rs.rank())
        malformed(std::string(name) + " letter " + std::to_string(i + 1) + " out of range 1.." +
                  std::to_string(rs.rank()));
    return w;
  });
}

Rational rational_arg(const std::string& text) {
  return parsed([&] {
    Lexer lx(text);
    Rational x = lx.rational();
    if (!lx.done()) lx.fail("unexpected trailing input");
    return x;
  });
}

json header(const Request& q) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = q.command;
  j["type"] = q.type;
  return j;
}

struct SliceSetup {
  RootSystem rs;
  std::vector<int> s;
  std::shared_ptr<const SliceContext> ctx;
};

SliceSetup slice_setup(const Request& q) {
  RootSystem rs = root_system(q);
  std::vector<int> s = word(rs, q.s_word, "s");
  auto ctx = std::make_shared<const SliceContext>(make_slice_context(rs, WeylElement(rs, s), q.seed));
  return {rs, s, ctx};
}

json frame_json(const SliceContext& ctx) {
  return {{"adapting_element", word_json(ctx.cd.adapt.word())},
          {"s_adapted", word_json(ctx.s_word)},
          {"note", "points are read in the adapted frame, where the positive system of s is the standard one"}};
}

// Point from --point, or a seeded sample when it is empty.
GroupElement<Rational> point_or_sample(const Request& q, const RootSystem& rs,
                                       const std::function<GroupElement<Rational>(std::mt19937&)>& sample) {
  if (!q.point.empty()) return parse_point(rs, q.point);
  std::mt19937 rng(q.seed);
  return sample(rng);
}

// ---------------------------------------------------------------------------
// Subcommands

json cmd_positive_system(const Request& q) {
  RootSystem rs = root_system(q);
  std::vector<int> s = word(rs, q.s_word, "s");
  auto [cd, ao] = associate(rs, WeylElement(rs, s), q.seed);
  json j = header(q);
  j["s"] = word_json(s);
  j["carter"] = {{"gamma1", roots_json(rs, cd.carter_input.gamma1)},
                 {"gamma2", roots_json(rs, cd.carter_input.gamma2)},
                 {"fixed_roots_condition", fixed_roots_condition(rs, cd.s_input, cd.carter_input)}};
  json subspaces = json::array();
  for (const InvariantSubspace& v : cd.spectral.subspaces) {
    const char* kind = v.kind == InvariantSubspace::Kind::Fixed  ? "fixed"
                       : v.kind == InvariantSubspace::Kind::Line ? "line"
                                                                 : "plane";
    json b = json::array();
    for (const QVec& x : v.basis) b.push_back(qstrings(x));
    json e{{"kind", kind}, {"angle", str(v.angle)}, {"basis", b}};
    if (v.kind == InvariantSubspace::Kind::Line) {
      e["s1_sign"] = v.s1_sign;
      e["s2_sign"] = v.s2_sign;
    }
    if (!v.h.empty()) e["h"] = qstrings(v.h);
    e["scale_exponent"] = v.scale_exponent;
    subspaces.push_back(e);
  }
  j["spectral"] = {{"radicand", cd.spectral.radicand}, {"subspaces", subspaces}};
  const PositiveSystemS& ps = cd.positive_input;
  j["hbar"] = qstrings(ps.hbar);
  j["positive_roots"] = roots_json(rs, ps.positive);
  json strata = json::array();
  for (std::size_t k = 0; k < ps.strata.size(); ++k)
    strata.push_back({{"subspace", ps.stratum_subspace[k]}, {"roots", roots_json(rs, ps.strata[k])}});
  j["strata"] = strata;
  json ineq = json::array();
  for (const StratumInequality& e : ps.inequalities)
    ineq.push_back({{"root", root_json(rs, e.root)}, {"k", e.k}, {"l", e.l}, {"certificate", sign_json(e.certificate)}});
  j["stratum_inequalities"] = ineq;
  json signs = json::array();
  for (int a = 0; a < rs.num_positive(); ++a) {
    const SignCertificate& c = ps.hbar_signs[a];
    signs.push_back({{"root", root_json(rs, a)}, {"sign", c.sign}, {"exact", c.exact}});
  }
  j["hbar_signs"] = signs;
  j["adapting_element"] = word_json(cd.adapt.word());
  j["s_adapted"] = word_json(cd.s.word());
  return j;
}

json cmd_ordering(const Request& q) {
  RootSystem rs = root_system(q);
  std::vector<int> s = word(rs, q.s_word, "s");
  auto [cd, ao] = associate(rs, WeylElement(rs, s), q.seed);
  json j = header(q);
  j["s"] = word_json(s);
  j["s_adapted"] = word_json(cd.s.word());
  j["adapting_element"] = word_json(cd.adapt.word());
  json original = json::array();
  for (int a : ao.base.sequence) original.push_back(root_json(rs, rs.apply(cd.adapt.matrix(), a)));
  j["ordering"] = roots_json(rs, ao.base.sequence);
  j["ordering_original_frame"] = original;
  j["reduced_word"] = word_json(ao.base.reduced_word);
  j["gamma1"] = roots_json(rs, ao.gamma1);
  j["gamma2"] = roots_json(rs, ao.gamma2);
  j["ranges"] = {{"s1_inversions", range_json(ao.s1_inversions)}, {"s1_minus", range_json(ao.s1_minus)},
                 {"s2_inversions", range_json(ao.s2_inversions)}, {"s2_minus", range_json(ao.s2_minus)},
                 {"fixed", range_json(ao.fixed)},                 {"m_plus", range_json(ao.m_plus)},
                 {"s_inversions", range_json(ao.s_inversions)}};
  int D = rs.num_positive(), D0 = ao.fixed.size();
  j["D"] = D;
  j["D0"] = D0;
  j["length_s"] = ao.length_s;
  j["lprime"] = ao.lprime;
  j["m_plus_size"] = ao.m_plus.size();
  j["length_formula"] = ao.m_plus.size() == D - ((ao.length_s - ao.lprime) / 2 + D0);
  j["certificates"] = certificates_json(ao.certificates);
  j["all_certified"] = ao.all_certified();
  j["choice"] = ao.choice;
  j["words_visited"] = ao.words_visited;
  return j;
}

json cmd_module(const Request& q) {
  RootSystem rs = root_system(q);
  if (q.index < 1 || q.index > rs.rank())
    throw ParseFailure("module index " + std::to_string(q.index) + " out of range 1.." + std::to_string(rs.rank()));
  ChevalleyBasis cb(rs);
  const HWModule& m = cb.module(q.index - 1);
  json j = header(q);
  j["index"] = q.index;
  j["dim"] = m.dim;
  j["weights"] = m.weights;
  json monomials = json::array();
  for (const IntVec& mono : m.monomials) monomials.push_back(word_json(mono));
  j["monomials"] = monomials;
  j["depth"] = m.depth;
  j["gram"] = matrix_json(m.gram);
  if (q.matrices) {
    json e = json::array(), f = json::array(), h = json::array();
    for (int i = 0; i < rs.rank(); ++i) {
      e.push_back(matrix_json(m.e(i)));
      f.push_back(matrix_json(m.f(i)));
      h.push_back(matrix_json(m.coroots[i]));
    }
    j["e"] = e;
    j["f"] = f;
    j["h"] = h;
  }
  return j;
}

json cmd_bruhat_coords(const Request& q) {
  RootSystem rs = root_system(q);
  std::vector<int> w = word(rs, q.w_word, "w");
  GroupElement<Rational> g = parsed([&] { return parse_point(rs, q.point); });
  ChevalleyBasis cb(rs);
  Point<Rational> gp = evaluate_all(g, cb);
  WeylElement we(rs, w);
  CellCoordinates cc = cell_coordinates(cb, gp, we);
  GroupElement<Rational> back = assemble_cell_element(rs, cc.w_word, cc.ordering, cc.h, cc.q, cc.r);
  json j = header(q);
  j["w"] = word_json(cc.w_word);
  j["point"] = to_string(rs, g);
  j["ordering"] = roots_json(rs, cc.ordering.sequence);
  j["reduced_word"] = word_json(cc.ordering.reduced_word);
  j["q"] = strings(cc.q);
  j["r"] = strings(cc.r);
  j["h"] = strings(cc.h);
  j["reassembled"] = to_string(rs, back);
  j["reassembly_matches"] = evaluate_all(back, cb) == gp;
  j["constants"] = constants_json(cb, word_data(cb, cc.ordering.reduced_word));
  return j;
}

json cmd_slice_factorize(const Request& q) {
  SliceSetup st = slice_setup(q);
  const SliceContext& ctx = *st.ctx;
  GroupElement<Rational> g = parsed([&] {
    return point_or_sample(q, st.rs, [&](std::mt19937& rng) { return sampling::random_slice_sample(rng, ctx).g; });
  });
  Point<Rational> gp = evaluate_all(g, *ctx.cb);
  SliceFactorization f = slice_factorize(ctx, gp);
  GroupElement<Rational> back = reassemble(ctx, f);
  json j = header(q);
  j["s"] = word_json(st.s);
  j["frame"] = frame_json(ctx);
  j["point"] = to_string(st.rs, g);
  j["ordering"] = roots_json(st.rs, ctx.ao.base.sequence);
  j["n_roots"] = roots_json(st.rs, ctx.n_roots);
  j["ns_roots"] = roots_json(st.rs, ctx.ns_roots);
  j["levi_roots"] = roots_json(st.rs, ctx.levi_roots);
  j["t"] = strings(f.t);
  j["n"] = to_string(st.rs, f.n);
  j["ns_coordinates"] = strings(f.ns_coordinates);
  j["n_s"] = to_string(st.rs, f.n_s);
  j["z"] = to_string(st.rs, f.z);
  j["z_cell"] = {{"w", word_json(f.z_cell.w_word)},
                 {"q", strings(f.z_cell.q)},
                 {"r", strings(f.z_cell.r)},
                 {"h", strings(f.z_cell.h)}};
  j["reassembled"] = to_string(st.rs, back);
  j["reassembly_matches"] = evaluate_all(back, *ctx.cb) == gp;
  j["constants"] = constants_json(*ctx.cb, ctx.wd);
  return j;
}

json cmd_project(const Request& q) {
  SliceSetup st = slice_setup(q);
  const SliceContext& ctx = *st.ctx;
  GroupElement<Rational> g = parsed([&] {
    return point_or_sample(q, st.rs, [&](std::mt19937& rng) { return sampling::random_slice_sample(rng, ctx).g; });
  });
  GFunction f = parsed([&] { return parse_function(*ctx.cb, q.function); });
  Point<Rational> gp = evaluate_all(g, *ctx.cb);
  GFunction pf = GFunction::project(st.ctx, f);
  json j = header(q);
  j["s"] = word_json(st.s);
  j["frame"] = frame_json(ctx);
  j["point"] = to_string(st.rs, g);
  j["function"] = f.to_string();
  j["t"] = strings(t_recursion(ctx, gp));
  j["value"] = str(f(gp));
  j["projected_value"] = str(pf(gp));
  j["constants"] = constants_json(*ctx.cb, ctx.wd);
  return j;
}

json cmd_bracket(const Request& q) {
  static const std::vector<std::string> kinds{"G", "Gstar", "Gstar-adjoint", "reduced-direct", "reduced-projected"};
  if (std::find(kinds.begin(), kinds.end(), q.kind) == kinds.end()) throw ParseFailure("unknown bracket kind " + q.kind);
  bool reduced = q.kind.rfind("reduced", 0) == 0;
  SliceSetup st = slice_setup(q);
  const SliceContext& ctx = *st.ctx;
  const ChevalleyBasis& cb = *ctx.cb;
  Rational lambda = rational_arg(q.lambda);
  if (lambda.is_zero()) throw ParseFailure("lambda must be nonzero");
  GFunction f = parsed([&] { return parse_function(cb, q.f); });
  GFunction h = parsed([&] { return parse_function(cb, q.h); });
  // reduced kinds take m in N_s Z; the others any point of G
  GroupElement<Rational> g = parsed([&] {
    return point_or_sample(q, st.rs, [&](std::mt19937& rng) {
      if (reduced) return sampling::random_slice_sample(rng, ctx, true).g * GroupElement<Rational>::weyl_word(ctx.s_word);
      return sampling::random_word(rng, st.rs, 6);
    });
  });
  Point<Rational> gp = evaluate_all(g, cb);
  RMatrix rm = build_r(ctx, lambda);
  RCertificate cert = certify(rm);

  Rational value;
  json certificates{{"r_matrix", r_certificate_json(cert)}};
  if (q.kind == "G") {
    value = bracket_G(rm, f, h, gp);
    certificates["skew_symmetry"] = bracket_G(rm, h, f, gp) == -value;
  } else if (q.kind == "Gstar") {
    value = bracket_Gstar(rm, f, h, gp);
    certificates["skew_symmetry"] = bracket_Gstar(rm, h, f, gp) == -value;
    certificates["agrees_with_adjoint_form"] = bracket_Gstar_adjoint(rm, f, h, gp) == value;
  } else if (q.kind == "Gstar-adjoint") {
    value = bracket_Gstar_adjoint(rm, f, h, gp);
    certificates["skew_symmetry"] = bracket_Gstar_adjoint(rm, h, f, gp) == -value;
  } else {
    // m s^{-1} must lie on the slice: all t_p vanish
    std::vector<Rational> t = t_recursion(ctx, gp * ctx.s_inverse_point);
    bool on_slice = std::all_of(t.begin(), t.end(), [](const Rational& x) { return x.is_zero(); });
    certificates["m_s_inverse_on_slice"] = on_slice;
    if (!on_slice) throw MathError(ErrorCode::InvalidArgument, "m s^-1 is not on the slice: t = " + to_string(t[0]));
    if (q.kind == "reduced-direct")
      value = reduced_bracket_direct(st.ctx, rm, f, h, gp);
    else
      value = reduced_bracket_projected(st.ctx, rm, f, h, gp);
  }
  json j = header(q);
  j["s"] = word_json(st.s);
  j["frame"] = frame_json(ctx);
  j["kind"] = q.kind;
  j["lambda"] = str(lambda);
  j["point"] = to_string(st.rs, g);
  j["f"] = f.to_string();
  j["h"] = h.to_string();
  j["value"] = str(value);
  j["certificates"] = certificates;
  return j;
}

json cmd_verify(const Request& q, bool* all_passed) {
  SliceSetup st = slice_setup(q);
  const SliceContext& ctx = *st.ctx;
  std::vector<Check> checks = verify_class(ClassSpec{q.type, st.s}, q.seed);
  RCertificate rc = certify(build_r(ctx));
  json suites = json::array();
  bool ok = rc.ok() && ctx.ao.all_certified();
  for (const Check& c : checks) {
    ok = ok && c.passed && c.samples > 0;
    suites.push_back({{"name", c.name},
                      {"passed", c.passed},
                      {"samples", c.samples},
                      {"failures", c.failures},
                      {"first_failure", c.first_failure}});
  }
  json j = header(q);
  j["s"] = word_json(st.s);
  j["seed"] = q.seed;
  j["frame"] = frame_json(ctx);
  j["ordering"] = roots_json(st.rs, ctx.ao.base.sequence);
  j["ordering_certificates"] = certificates_json(ctx.ao.certificates);
  j["r_matrix"] = r_certificate_json(rc);
  j["suites"] = suites;
  j["constants"] = constants_json(*ctx.cb, ctx.wd);
  j["all_passed"] = ok;
  *all_passed = ok;
  return j;
}

void emit(const Request& q, const json& j, std::ostream& out) {
  std::string text = j.dump(2) + "\n";
  if (q.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(q.output, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + q.output);
  file << text;
}

}  // namespace

GroupElement<Rational> parse_point(const RootSystem& rs, const std::string& text) {
  Lexer lx(text);
  GroupElement<Rational> g;
  if (lx.accept('1')) {
    if (!lx.done()) lx.fail("'1' stands alone");
    return g;
  }
  if (lx.done()) lx.fail("empty point");
  while (!lx.done()) {
    if (lx.accept('*')) continue;
    if (lx.accept("X[")) {
      IntVec coords;
      do {
        coords.push_back(static_cast<int>(lx.integer()));
      } while (lx.accept(','));
      lx.expect(']');
      auto index = static_cast<int>(coords.size()) == rs.rank() ? rs.index_of(coords) : std::nullopt;
      if (!index) lx.fail("not a root of " + rs.name());
      lx.expect('(');
      Rational t = lx.rational();
      lx.expect(')');
      g = g * GroupElement<Rational>::one_param(*index, t);
    } else if (lx.accept("T(")) {
      std::vector<Rational> c = rational_list(lx, ')');
      if (static_cast<int>(c.size()) != rs.rank()) lx.fail("torus factor needs " + std::to_string(rs.rank()) + " entries");
      g = g * GroupElement<Rational>::torus(c);
    } else if (lx.accept('s')) {
      int i = one_based(lx, rs.rank(), "simple reflection");
      bool inverse = lx.accept("^-1");
      g = g * GroupElement<Rational>::weyl(i, inverse);
    } else {
      lx.fail("expected X[..](..), T(..) or s<i>");
    }
  }
  return g;
}

GFunction parse_function(const ChevalleyBasis& cb, const std::string& text) { return FunctionParser(cb, text).parse(); }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations on transversal slices and their Poisson structures", "qw"};
  app.require_subcommand(1);
  Request q;

  auto add = [&](const std::string& name, const std::string& help) {
    CLI::App* c = app.add_subcommand(name, help);
    c->add_option("type", q.type, "Cartan type, e.g. A2, B3, G2")->required();
    c->add_option("--output,-o", q.output, "Write the JSON document to this file");
    return c;
  };
  auto add_s = [&](CLI::App* c) {
    c->add_option("--s", q.s_word, "Weyl group element as comma separated 1-based simple indices")->required();
    c->add_option("--seed", q.seed, "Seed for every random choice")->capture_default_str();
  };

  CLI::App* ps = add("positive-system", "Carter decomposition and the positive system associated to s");
  add_s(ps);
  CLI::App* ord = add("ordering", "Associated normal ordering with its certificates");
  add_s(ord);
  CLI::App* mod = add("module", "Fundamental module with its contravariant form");
  mod->add_option("--index", q.index, "1-based i of omega_i")->required();
  mod->add_flag("--matrices", q.matrices, "Include the matrices of e_i, f_i, h_i");
  CLI::App* br = add("bruhat-coords", "Coordinates of a point in the Bruhat cell of w");
  br->add_option("--w", q.w_word, "Weyl group element as comma separated 1-based simple indices")->required();
  br->add_option("--point", q.point, "Factor word, e.g. \"X[1,0](2) s1 T(3,1/2)\"")->required();
  CLI::App* sf = add("slice-factorize", "Factor g = n^-1 n_s z s^-1 n on the slice");
  add_s(sf);
  sf->add_option("--point", q.point, "Factor word; a seeded random slice point if omitted");
  CLI::App* pr = add("project", "Evaluate f and its projection onto N-invariants");
  add_s(pr);
  pr->add_option("--point", q.point, "Factor word; a seeded random slice point if omitted");
  pr->add_option("--function", q.function, "Function descriptor, e.g. \"entry(1,1,2) + 2*trace(1)\"")->required();
  CLI::App* bk = add("bracket", "Poisson bracket of two functions at a point");
  add_s(bk);
  bk->add_option("--kind", q.kind, "G, Gstar, Gstar-adjoint, reduced-direct or reduced-projected")->required();
  bk->add_option("--f1", q.f, "First function descriptor")->required();
  bk->add_option("--f2", q.h, "Second function descriptor")->required();
  bk->add_option("--point", q.point, "Factor word (m in N_s Z for reduced kinds); seeded random if omitted");
  bk->add_option("--lambda", q.lambda, "Scale of the invariant form")->capture_default_str();
  CLI::App* vf = add("verify", "Run the certificate suite for one class");
  add_s(vf);

  std::vector<std::string> argv_store{"qw"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "qw: " << e.what() << "\n";
    return 2;
  }

  for (CLI::App* c : app.get_subcommands()) q.command = c->get_name();
  try {
    json j;
    bool passed = true;
    if (q.command == "positive-system") j = cmd_positive_system(q);
    else if (q.command == "ordering") j = cmd_ordering(q);
    else if (q.command == "module") j = cmd_module(q);
    else if (q.command == "bruhat-coords") j = cmd_bruhat_coords(q);
    else if (q.command == "slice-factorize") j = cmd_slice_factorize(q);
    else if (q.command == "project") j = cmd_project(q);
    else if (q.command == "bracket") j = cmd_bracket(q);
    else j = cmd_verify(q, &passed);
    emit(q, j, out);
    return passed ? 0 : 1;
  } catch (const ParseFailure& e) {
    err << "qw: " << e.what() << "\n";
    return 2;
  } catch (const MathError& e) {
    json j = header(q);
    j["error"] = {{"code", std::string(to_string(e.code()))}, {"detail", e.detail()}};
    out << j.dump(2) << "\n";
    err << "qw: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "qw: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace qw
