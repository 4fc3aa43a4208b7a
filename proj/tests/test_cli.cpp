#include <gtest/gtest.h>

#include <sstream>

#include "json.hpp"
#include "qw/cli.hpp"

using namespace qw;
using json = nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(PointParser, RoundTripsThroughToString) {
  RootSystem rs = RootSystem::from_name("B2");
  for (std::string text : {"X[1,1](3/2) s2^-1 T(2,-1/3)", "s1 s2", "X[-1,-2](-7)", "1"}) {
    GroupElement<Rational> g = parse_point(rs, text);
    EXPECT_EQ(to_string(rs, g), text);
  }
  EXPECT_EQ(to_string(rs, parse_point(rs, "X[1,0](2) * s1")), "X[1,0](2) s1");
}

TEST(PointParser, Rejects) {
  RootSystem rs = RootSystem::from_name("A2");
  for (std::string text : {"", "X[1,2](1)", "X[1](1)", "s3", "s0", "T(1)", "X[1,0](1", "Y", "1 s1", "X[1,0](a)"})
    EXPECT_THROW(parse_point(rs, text), MathError) << text;
}

TEST(FunctionParser, AgreesWithBuiltFunctions) {
  RootSystem rs = RootSystem::from_name("A2");
  ChevalleyBasis cb(rs);
  Point<Rational> g = evaluate_all(parse_point(rs, "X[1,0](2) s1 X[0,1](-1/3) T(2,3) X[1,1](5)"), cb);
  GFunction built = GFunction::entry(cb, 0, 0, 1) * Rational(3) - GFunction::trace(cb, 1) / Rational(2);
  EXPECT_EQ(parse_function(cb, "3*entry(1,1,2) - trace(2)/2")(g), built(g));
  EXPECT_EQ(parse_function(cb, "-(1 + 2) * 2")(g), Rational(-6));
  Vec<Rational> u{Rational(1), Rational(0), Rational(2)}, v{Rational(0), Rational(1, 2), Rational(1)};
  EXPECT_EQ(parse_function(cb, "mc(2; 1,0,2; 0,1/2,1)")(g), GFunction::coefficient(cb, 1, u, v)(g));
}

TEST(FunctionParser, Rejects) {
  ChevalleyBasis cb(RootSystem::from_name("A1"));
  for (std::string text : {"", "entry(2,1,1)", "entry(1,3,1)", "trace(1", "mc(1; 1; 1,0)", "1 +", "x", "2 2"})
    EXPECT_THROW(parse_function(cb, text), MathError) << text;
}

TEST(Cli, OrderingA1) {
  Result r = call({"ordering", "A1", "--s", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = r.doc();
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["ordering"], json::parse("[[1]]"));
  EXPECT_EQ(j["m_plus_size"], 1);
  EXPECT_TRUE(j["all_certified"].get<bool>());
  EXPECT_TRUE(j["length_formula"].get<bool>());
}

TEST(Cli, PositiveSystemAndModule) {
  Result r = call({"positive-system", "B2", "--s", "1,2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.doc()["positive_roots"].size(), 4u);
  r = call({"module", "G2", "--index", "1", "--matrices"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = r.doc();
  EXPECT_EQ(j["dim"], 7);
  EXPECT_EQ(j["e"].size(), 2u);
  EXPECT_TRUE(j["gram"][0][0].is_string());
}

TEST(Cli, BruhatCoordinates) {
  Result r = call({"bruhat-coords", "A2", "--w", "1,2", "--point", "X[1,0](2) X[1,1](1/3) s2^-1 s1^-1 T(2,3) X[0,1](1)"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = r.doc();
  EXPECT_TRUE(j["reassembly_matches"].get<bool>());
  EXPECT_EQ(j["constants"].size(), 3u);
  EXPECT_TRUE(j["constants"][0]["c"].is_string());
}

TEST(Cli, SliceFactorizeSampledAndGiven) {
  Result r = call({"slice-factorize", "A2", "--s", "1,2", "--seed", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = r.doc();
  EXPECT_TRUE(j["reassembly_matches"].get<bool>());
  Result again = call({"slice-factorize", "A2", "--s", "1,2", "--point", j["point"].get<std::string>()});
  ASSERT_EQ(again.code, 0) << again.err;
  EXPECT_EQ(again.doc()["t"], j["t"]);
}

TEST(Cli, ProjectFixesInvariants) {
  Result r = call({"project", "A1", "--s", "1", "--point", "X[1](2) s1 X[1](-1)", "--function", "trace(1)"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = r.doc();
  EXPECT_EQ(j["value"], j["projected_value"]);
}

TEST(Cli, ReducedKindsAgree) {
  for (std::string s : {"1,2", "1"}) {
    std::vector<std::string> base{"bracket", "A2", "--s", s, "--f1", "entry(1,1,2) + entry(2,3,1)", "--f2", "entry(1,2,3)",
                                  "--seed", "2"};
    std::vector<std::string> direct = base, projected = base;
    direct.insert(direct.end(), {"--kind", "reduced-direct"});
    projected.insert(projected.end(), {"--kind", "reduced-projected"});
    Result a = call(direct), b = call(projected);
    ASSERT_EQ(a.code, 0) << a.err;
    ASSERT_EQ(b.code, 0) << b.err;
    EXPECT_EQ(a.doc()["value"], b.doc()["value"]);
    EXPECT_TRUE(a.doc()["certificates"]["m_s_inverse_on_slice"].get<bool>());
  }
}

TEST(Cli, BracketKinds) {
  for (std::string kind : {"G", "Gstar", "Gstar-adjoint"}) {
    Result r = call({"bracket", "B2", "--s", "1,2", "--kind", kind, "--f1", "entry(1,1,2)", "--f2", "entry(2,2,1)",
                     "--point", "X[1,0](1) s2 X[0,1](2) T(2,3)"});
    ASSERT_EQ(r.code, 0) << r.err;
    json c = r.doc()["certificates"];
    EXPECT_TRUE(c["r_matrix"]["passed"].get<bool>());
    EXPECT_TRUE(c["skew_symmetry"].get<bool>());
  }
}

TEST(Cli, LambdaScalesTheBracket) {
  std::vector<std::string> base{"bracket", "A2", "--s", "1,2", "--kind", "Gstar", "--f1", "entry(1,1,2)",
                                "--f2", "entry(2,1,3)", "--point", "X[1,0](1) s2 X[0,1](2) T(2,3)"};
  std::vector<std::string> scaled = base;
  scaled.insert(scaled.end(), {"--lambda", "3"});
  Rational one = parse_rational(call(base).doc()["value"].get<std::string>());
  Rational three = parse_rational(call(scaled).doc()["value"].get<std::string>());
  EXPECT_EQ(three * 3, one);
}

TEST(Cli, VerifyA2Coxeter) {
  Result r = call({"verify", "A2", "--s", "1,2"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = r.doc();
  EXPECT_TRUE(j["all_passed"].get<bool>());
  for (const json& s : j["suites"]) EXPECT_TRUE(s["passed"].get<bool>()) << s["name"];
  EXPECT_FALSE(j["constants"].empty());
}

TEST(Cli, ByteIdenticalAcrossRuns) {
  std::vector<std::string> args{"bracket", "A2", "--s", "1", "--kind", "reduced-direct", "--f1", "entry(1,1,2)",
                                "--f2", "entry(2,2,3)", "--seed", "7"};
  EXPECT_EQ(call(args).out, call(args).out);
  std::vector<std::string> v{"verify", "A1", "--s", "1", "--seed", "3"};
  EXPECT_EQ(call(v).out, call(v).out);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(call({}).code, 2);
  EXPECT_EQ(call({"ordering", "A2"}).code, 2);
  EXPECT_EQ(call({"ordering", "Q7", "--s", "1"}).code, 2);
  EXPECT_EQ(call({"ordering", "A2", "--s", "1,4"}).code, 2);
  EXPECT_EQ(call({"bracket", "A2", "--s", "1", "--kind", "H", "--f1", "1", "--f2", "1"}).code, 2);
  EXPECT_EQ(call({"project", "A1", "--s", "1", "--function", "entry(1,1,"}).code, 2);
  EXPECT_EQ(call({"--help"}).code, 0);

  // a torus point with a zero entry is a mathematical failure
  Result r = call({"project", "A1", "--s", "1", "--point", "T(0)", "--function", "trace(1)"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.doc()["error"]["code"], "ZeroTorusEntry");
  // f/h with a vanishing denominator
  r = call({"project", "A1", "--s", "1", "--point", "s1", "--function", "1/entry(1,1,1)"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.doc()["error"]["code"], "DivisionByZero");
}
