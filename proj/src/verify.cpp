#include "qw/verify.hpp"

#include <chrono>
#include <random>

#include "qw/sampling.hpp"

namespace qw {

using sampling::random_coefficient;
using sampling::random_n;
using sampling::random_rational;
using sampling::random_slice_sample;
using sampling::random_word;

std::string ClassSpec::label() const { return type + " s=" + word_to_string(s); }

void Check::record(bool ok, const std::string& what) {
  ++samples;
  if (ok) return;
  ++failures;
  passed = false;
  if (first_failure.empty()) first_failure = what;
}

void Check::merge(const Check& other) {
  samples += other.samples;
  failures += other.failures;
  passed = passed && other.passed;
  if (first_failure.empty()) first_failure = other.first_failure;
  seconds += other.seconds;
}

std::vector<ClassSpec> all_classes(const std::string& type) {
  RootSystem rs = RootSystem::from_name(type);
  std::vector<ClassSpec> out;
  for (const WeylElement& w : conjugacy_class_representatives(rs)) out.push_back({type, w.word()});
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Timer {
  Check& check;
  Clock::time_point start = Clock::now();
  explicit Timer(Check& c) : check(c) {}
  ~Timer() { check.seconds += std::chrono::duration<double>(Clock::now() - start).count(); }
};

std::shared_ptr<const SliceContext> context(const ClassSpec& c) {
  RootSystem rs = RootSystem::from_name(c.type);
  return std::make_shared<const SliceContext>(make_slice_context(rs, WeylElement(rs, c.s)));
}

// Runs f and turns a MathError into a recorded failure.
template <class F>
void guarded(Check& check, const std::string& where, F&& f) {
  try {
    f();
  } catch (const MathError& e) {
    check.record(false, where + ": " + e.what());
  }
}

Point<Rational> random_point(std::mt19937& rng, const ChevalleyBasis& cb) {
  return evaluate_all(random_word(rng, cb.root_system(), 6), cb);
}

Point<Rational> random_m(std::mt19937& rng, const SliceContext& ctx) {
  return evaluate_all(random_slice_sample(rng, ctx, true).g, *ctx.cb) * ctx.s_point;
}

DualPoint<Rational> random_dual_point(std::mt19937& rng, const RMatrix& rm) {
  const RootSystem& rs = rm.basis().root_system();
  std::vector<Rational> a, b, y;
  for (int k = 0; k < rs.num_positive(); ++k) {
    a.push_back(random_rational(rng));
    b.push_back(random_rational(rng));
  }
  for (int k = 0; k < rs.rank(); ++k) y.push_back(random_rational(rng, true));
  return evaluate_pair(rm, dual_pair(rm, a, b, y));
}

}  // namespace

Check check_mcybe(const std::vector<ClassSpec>& classes) {
  Check check{"mCYBE on all Chevalley basis pairs"};
  Timer t(check);
  for (const ClassSpec& c : classes) {
    guarded(check, c.label(), [&] {
      auto ctx = context(c);
      RCertificate cert = certify(build_r(*ctx));
      check.record(cert.ok(), c.label() + ": " + std::to_string(cert.mcybe_failures) + " mCYBE failures");
    });
  }
  return check;
}

Check check_associated_orderings(const std::vector<ClassSpec>& classes) {
  Check check{"associated orderings and the length of Delta_m+"};
  Timer t(check);
  for (const ClassSpec& c : classes) {
    guarded(check, c.label(), [&] {
      RootSystem rs = RootSystem::from_name(c.type);
      auto [cd, ao] = associate(rs, WeylElement(rs, c.s));
      // recompute the length formula from scratch
      int D = rs.num_positive(), D0 = 0;
      for (int a = 0; a < D; ++a) D0 += rs.apply(cd.s.matrix(), a) == a;
      int ls = analyze(rs, cd.s).length;
      int lprime = static_cast<int>(cd.gamma1.size() + cd.gamma2.size());
      bool length = (ls - lprime) % 2 == 0 && ao.m_plus.size() == D - ((ls - lprime) / 2 + D0);
      bool normal = !validate_normal(rs, ao.base.sequence).has_value();
      std::string failed;
      for (const auto& [name, ok] : ao.certificates)
        if (!ok && failed.empty()) failed = name;
      check.record(ao.all_certified() && length && normal, c.label() + ": " + (failed.empty() ? "length" : failed));
    });
  }
  return check;
}

Check check_bruhat_round_trip(const std::vector<std::string>& types, int per_cell, unsigned seed) {
  Check check{"Bruhat cell coordinates round trip"};
  Timer t(check);
  std::mt19937 rng(seed);
  for (const std::string& type : types) {
    RootSystem rs = RootSystem::from_name(type);
    ChevalleyBasis cb(rs);
    for (const WeylElement& w : weyl_group(rs)) {
      std::vector<int> word = representative_word(rs, w);
      NormalOrdering o = ordering_from_reduced_word(rs, extend_to_longest(rs, word));
      for (int trial = 0; trial < per_cell; ++trial) {
        std::vector<Rational> h = sampling::random_torus(rng, rs.rank()), q, r;
        for (std::size_t p = 0; p < word.size(); ++p) q.push_back(random_rational(rng));
        for (int p = 0; p < rs.num_positive(); ++p) r.push_back(random_rational(rng));
        std::string where = type + " w=" + word_to_string(word);
        guarded(check, where, [&] {
          CellCoordinates cc = cell_coordinates(cb, evaluate_all(assemble_cell_element(rs, word, o, h, q, r), cb), w);
          check.record(cc.q == q && cc.r == r && cc.h == h, where);
        });
      }
    }
  }
  return check;
}

Check check_slice_round_trip(const std::vector<ClassSpec>& classes, int per_class, unsigned seed) {
  Check check{"slice factorization round trip"};
  Timer t(check);
  std::mt19937 rng(seed);
  for (const ClassSpec& c : classes) {
    auto ctx = context(c);
    const ChevalleyBasis& cb = *ctx->cb;
    for (int trial = 0; trial < per_class; ++trial) {
      sampling::SliceSample s = random_slice_sample(rng, *ctx);
      guarded(check, c.label(), [&] {
        Point<Rational> g = evaluate_all(s.g, cb);
        SliceFactorization f = slice_factorize(*ctx, g);
        check.record(f.t == s.t && evaluate_all(reassemble(*ctx, f), cb) == g, c.label());
      });
    }
  }
  return check;
}

Check check_projection(const std::vector<ClassSpec>& classes, int points, int conjugations, unsigned seed) {
  Check check{"projection is idempotent and N-invariant"};
  Timer t(check);
  std::mt19937 rng(seed);
  for (const ClassSpec& c : classes) {
    auto ctx = context(c);
    const ChevalleyBasis& cb = *ctx->cb;
    for (int point = 0; point < points; ++point) {
      GFunction f = random_coefficient(rng, cb) * random_coefficient(rng, cb) + random_coefficient(rng, cb);
      GFunction pf = GFunction::project(ctx, f);
      Point<Rational> g = evaluate_all(random_slice_sample(rng, *ctx).g, cb);
      std::vector<Point<Rational>> us;
      for (int k = 0; k < conjugations; ++k) us.push_back(evaluate_all(random_n(rng, *ctx, 4), cb));
      guarded(check, c.label(), [&] {
        Rational v = pf(g);
        check.record(GFunction::project(ctx, pf)(g) == v, c.label() + ": idempotence");
        for (const Point<Rational>& u : us) check.record(pf(u * g * inverse_point(u)) == v, c.label() + ": invariance");
      });
    }
  }
  return check;
}

Check check_bracket_axioms(const std::vector<ClassSpec>& classes, int points, unsigned seed) {
  Check check{"skew-symmetry and Jacobi for the brackets on G and G_*"};
  Timer t(check);
  std::mt19937 rng(seed);
  for (const ClassSpec& c : classes) {
    auto ctx = context(c);
    RMatrix rm = build_r(*ctx);
    const ChevalleyBasis& cb = *ctx->cb;
    auto on_g = [&rm](auto f, auto h) { return [&rm, f, h](const auto& p) { return bracket_G(rm, f, h, p); }; };
    auto on_gstar = [&rm](auto f, auto h) { return [&rm, f, h](const auto& p) { return bracket_Gstar(rm, f, h, p); }; };
    for (int point = 0; point < points; ++point) {
      GFunction f = random_coefficient(rng, cb), h = random_coefficient(rng, cb), k = random_coefficient(rng, cb);
      Point<Rational> x = random_point(rng, cb);
      guarded(check, c.label(), [&] {
        check.record(bracket_G(rm, f, h, x) == -bracket_G(rm, h, f, x), c.label() + ": skew (G)");
        check.record(bracket_Gstar(rm, f, h, x) == -bracket_Gstar(rm, h, f, x), c.label() + ": skew (G_*)");
        Rational jg = on_g(on_g(f, h), k)(x) + on_g(on_g(h, k), f)(x) + on_g(on_g(k, f), h)(x);
        check.record(jg.is_zero(), c.label() + ": Jacobi (G)");
        Rational js = on_gstar(on_gstar(f, h), k)(x) + on_gstar(on_gstar(h, k), f)(x) + on_gstar(on_gstar(k, f), h)(x);
        check.record(js.is_zero(), c.label() + ": Jacobi (G_*)");
      });
    }
  }
  return check;
}

Check check_reduced_equivalence(const std::vector<ClassSpec>& classes, int points, unsigned seed) {
  Check check{"reduced bracket: Ad(sm^-1) form equals projected G_* bracket"};
  Timer t(check);
  std::mt19937 rng(seed);
  for (const ClassSpec& c : classes) {
    auto ctx = context(c);
    RMatrix rm = build_r(*ctx);
    for (int point = 0; point < points; ++point) {
      GFunction f = random_coefficient(rng, *ctx->cb), h = random_coefficient(rng, *ctx->cb);
      Point<Rational> m = random_m(rng, *ctx);
      guarded(check, c.label(), [&] {
        Rational direct = reduced_bracket_direct(ctx, rm, f, h, m);
        check.record(direct == reduced_bracket_projected(ctx, rm, f, h, m), c.label());
      });
    }
  }
  return check;
}

Check check_q_poisson(const std::vector<ClassSpec>& classes, int pairs, unsigned seed) {
  Check check{"q(L+, L-) = L- L+^-1 is a Poisson map"};
  Timer t(check);
  std::mt19937 rng(seed);
  for (const ClassSpec& c : classes) {
    auto ctx = context(c);
    RMatrix rm = build_r(*ctx);
    for (int k = 0; k < pairs; ++k) {
      DualPoint<Rational> L = random_dual_point(rng, rm);
      GFunction f = random_coefficient(rng, *ctx->cb), h = random_coefficient(rng, *ctx->cb);
      guarded(check, c.label(), [&] {
        auto fq = [&](const auto& plus, const auto& minus) { return f(minus * inverse_point(plus)); };
        auto hq = [&](const auto& plus, const auto& minus) { return h(minus * inverse_point(plus)); };
        check.record(bracket_dual(rm, fq, hq, L, kDualBracketSign) == bracket_Gstar(rm, f, h, q_map(L)), c.label());
      });
    }
  }
  return check;
}

Check check_form_scaling(const std::vector<ClassSpec>& classes, int points, const Rational& lambda, unsigned seed) {
  Check check{"form scaled by lambda divides every bracket by lambda"};
  Timer t(check);
  std::mt19937 rng(seed);
  for (const ClassSpec& c : classes) {
    auto ctx = context(c);
    RMatrix rm = build_r(*ctx), rl = build_r(*ctx, lambda);
    const ChevalleyBasis& cb = *ctx->cb;
    for (int point = 0; point < points; ++point) {
      GFunction f = random_coefficient(rng, cb), h = random_coefficient(rng, cb);
      Point<Rational> x = random_point(rng, cb), m = random_m(rng, *ctx);
      DualPoint<Rational> L = random_dual_point(rng, rm);
      guarded(check, c.label(), [&] {
        check.record(bracket_G(rl, f, h, x) * lambda == bracket_G(rm, f, h, x), c.label() + ": G");
        check.record(bracket_Gstar(rl, f, h, x) * lambda == bracket_Gstar(rm, f, h, x), c.label() + ": G_*");
        check.record(reduced_bracket_direct(ctx, rl, f, h, m) * lambda == reduced_bracket_direct(ctx, rm, f, h, m),
                     c.label() + ": reduced");
        check.record(
            reduced_bracket_projected(ctx, rl, f, h, m) * lambda == reduced_bracket_projected(ctx, rm, f, h, m),
            c.label() + ": projected");
        auto fq = [&](const auto& plus, const auto& minus) { return f(minus * inverse_point(plus)); };
        auto hq = [&](const auto& plus, const auto& minus) { return h(minus * inverse_point(plus)); };
        // L is a point of the same G* for both scalings: r does not depend on lambda
        check.record(bracket_dual(rl, fq, hq, L) * lambda == bracket_dual(rm, fq, hq, L), c.label() + ": G*");
      });
    }
  }
  return check;
}

std::vector<Check> verify_class(const ClassSpec& c, unsigned seed) {
  std::vector<ClassSpec> one{c};
  return {check_mcybe(one),
          check_associated_orderings(one),
          check_slice_round_trip(one, 20, seed),
          check_projection(one, 5, 5, seed),
          check_bracket_axioms(one, 1, seed),
          check_reduced_equivalence(one, 5, seed),
          check_q_poisson(one, 3, seed),
          check_form_scaling(one, 2, Rational(3), seed)};
}

}  // namespace qw
