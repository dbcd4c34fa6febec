#include <catch2/catch_amalgamated.hpp>

#include "pencillab/corpus.hpp"
#include "pencillab/parser.hpp"
#include "pencillab/report_json.hpp"
#include "pencillab/rng.hpp"

#include <sstream>

using namespace pencillab;

namespace {

const std::vector<std::string> XY = {"x", "y"};
const std::vector<std::string> XYZ = {"x", "y", "z"};

const MPolyQ X = MPolyQ::variable(2, 0);
const MPolyQ Y = MPolyQ::variable(2, 1);

MPolyQ C(long n) { return MPolyQ::constant(2, BigRational(n)); }

RFuncQ rf(const MPolyQ& n, const MPolyQ& d) { return RFuncQ::make(n, d); }

// Random fraction with small integer coefficients; the denominator draw is
// retried until nonzero.
RFuncQ random_fraction(SplitMix64& rng, int nvars) {
  auto poly = [&](bool nonzero) {
    auto p = MPolyQ::constant(nvars, BigRational(0));
    const int terms = static_cast<int>(rng.range(1, 4));
    for (int t = 0; t < terms; ++t) {
      long c = rng.range(-9, 9);
      if (nonzero && t == 0 && c == 0) c = 1;
      if (c == 0) continue;
      auto m = MPolyQ::constant(nvars, BigRational(c));
      for (int j = 0; j < nvars; ++j)
        m = m * MPolyQ::variable(nvars, j).pow(static_cast<int>(rng.range(0, 2)));
      p = p + m;
    }
    if (nonzero && p.zero()) p = MPolyQ::constant(nvars, BigRational(1));
    return p;
  };
  for (;;) {
    MPolyQ num = poly(false);
    MPolyQ den = poly(true);
    if (den.zero()) continue;
    return RFuncQ::make(num, den);
  }
}

}  // namespace

TEST_CASE("parsing reduced fractions") {
  RFuncQ f = parse("x/y", XY);
  REQUIRE(f == rf(X, Y));
  REQUIRE(parse("1/x + 1/y", XY) == rf(X + Y, X * Y));
  REQUIRE(parse("(x^3+y^3+(1+x+y)^3)/(x*y*(1+x+y))", XY).degree() == 3);
  REQUIRE(parse("x^0", XY) == RFuncQ::constant(2, BigRational(1)));
  REQUIRE(parse("3/4", XY) == RFuncQ::constant(2, BigRational(3, 4)));
}

TEST_CASE("operator precedence and associativity") {
  REQUIRE(parse("x - y - 1", XY) == rf(X - Y - C(1), C(1)));
  REQUIRE(parse("x - (y - 1)", XY) == rf(X - Y + C(1), C(1)));
  REQUIRE(parse("2*x^2", XY) == rf(C(2) * X * X, C(1)));
  REQUIRE(parse("(2*x)^2", XY) == rf(C(4) * X * X, C(1)));
  REQUIRE(parse("-x^2", XY) == rf(-(X * X), C(1)));
  REQUIRE(parse("x/y/2", XY) == rf(X, C(2) * Y));
  REQUIRE(parse("x/(y/2)", XY) == rf(C(2) * X, Y));
  REQUIRE(parse("--x", XY) == rf(X, C(1)));
}

TEST_CASE("variable names resolve by declaration order") {
  RFuncQ f = parse("a + 2*b", {"b", "a"});
  auto A = MPolyQ::variable(2, 1), B = MPolyQ::variable(2, 0);
  REQUIRE(f == RFuncQ::make(A + C(2) * B, C(1)));
}

TEST_CASE("syntax errors carry positions") {
  REQUIRE_THROWS_AS(parse("", XY), SyntaxError);
  REQUIRE_THROWS_AS(parse("x +* y", XY), SyntaxError);
  try {
    parse("x +* y", XY);
  } catch (const SyntaxError& e) {
    REQUIRE(e.position == 3);
  }
  try {
    parse("x + q*y", XY);
    FAIL("expected UnknownVariable");
  } catch (const UnknownVariable& e) {
    REQUIRE(e.position == 4);
  }
  REQUIRE_THROWS_AS(parse("x y", XY), SyntaxError);
  REQUIRE_THROWS_AS(parse("(x", XY), SyntaxError);
  REQUIRE_THROWS_AS(parse("x^-2", XY), SyntaxError);
  REQUIRE_THROWS_AS(parse("x^2^3", XY), SyntaxError);
  REQUIRE_THROWS_AS(parse("x^5000", XY), SyntaxError);
  REQUIRE_THROWS_AS(parse("1/(x-x)", XY), ZeroDenominator);
}

TEST_CASE("printing round trips") {
  REQUIRE(rf_to_string(rf(X + Y, X * Y), XY) == "(x + y)/(x*y)");
  REQUIRE(rf_to_string(RFuncQ::constant(2, BigRational(5, 2)), XY) == "5/2");
  SplitMix64 rng(0x70617273657221ull);
  for (int it = 0; it < 200; ++it) {
    const int nvars = it % 5 == 0 ? 3 : 2;
    const auto& names = nvars == 2 ? XY : XYZ;
    RFuncQ f = random_fraction(rng, nvars);
    REQUIRE(parse(rf_to_string(f, names), names) == f);
  }
}

TEST_CASE("spectrum reports serialize to the stable shape") {
  MPolyQ s = X + Y + C(1);
  RFuncQ f = rf(X.pow(3) + Y.pow(3) + s.pow(3), X * Y * s);
  OrderedJson j = spectrum_report_json(spectrum(f), 42);
  REQUIRE(j["degree"] == 3);
  REQUIRE(j["nvars"] == 2);
  REQUIRE(j["composite"] == false);
  REQUIRE(j["rho"] == 8);
  REQUIRE(j["entries"].size() == 3);
  REQUIRE(j["entries"][0]["defining_poly"] == "λ-3");
  REQUIRE(j["entries"][0]["n"] == 3);
  REQUIRE(j["entries"][0]["conjugacy"] == 1);
  REQUIRE(j["entries"][1]["defining_poly"] == "λ^2+3*λ+9");
  REQUIRE(j["entries"][1]["conjugacy"] == 2);
  REQUIRE(j["entries"][2]["infinity"] == true);
  REQUIRE(j["entries"][2]["defining_poly"].is_null());
  REQUIRE(j["bounds"]["stein"] == "n/a");
  REQUIRE(j["bounds"]["theorem1"] == "pass");
  REQUIRE(j["bounds"]["lorenzini"] == "pass");
  REQUIRE(j["low_confidence"] == false);
  REQUIRE(j["seed"] == 42);

  // Byte determinism: same input and seed, same serialized report.
  OrderedJson k = spectrum_report_json(spectrum(f), 42);
  REQUIRE(j.dump(2) == k.dump(2));

  OrderedJson c = spectrum_report_json(spectrum(rf(X * X, Y * Y)), 7);
  REQUIRE(c["composite"] == true);
  REQUIRE(c["rho"] == "infinite");
  REQUIRE(c["bounds"]["lorenzini"] == "n/a");
}

TEST_CASE("decompositions serialize with their field") {
  auto res = decompose(rf(X * X, Y * Y));
  auto* d = std::get_if<Decomposition>(&res);
  REQUIRE(d != nullptr);
  OrderedJson j = decomposition_json(*d, XY);
  REQUIRE(j["outer_num"] == "27*t^2 + 54*t + 27");
  REQUIRE(j["outer_den"] == "t^2 - 2*t + 1");
  REQUIRE(j["inner_num"] == "x + (-54*g+5)*y");
  REQUIRE(j["inner_den"] == "x + (54*g-5)*y");
  REQUIRE(j["field"] == "g^2-5/27*g-1/1458");

  using NFE = NumberFieldElement;
  Decomposition plain{
      UniRationalFunction<NFE>::make(UnivariatePolynomial<NFE>({NFE(0L), NFE(0L), NFE(1L)}),
                                     UnivariatePolynomial<NFE>({NFE(1L)})),
      RationalFunction<NFE>::make(MultivariatePolynomial<NFE>::variable(2, 0),
                                  MultivariatePolynomial<NFE>::variable(2, 1)),
      std::nullopt};
  OrderedJson q = decomposition_json(plain, XY);
  REQUIRE(q["outer_num"] == "t^2");
  REQUIRE(q["outer_den"] == "1");
  REQUIRE(q["inner_num"] == "x");
  REQUIRE(q["inner_den"] == "y");
  REQUIRE(q["field"] == "Q");
}

TEST_CASE("corpus entries parse and validate") {
  CorpusEntry e = parse_corpus_entry(
      R"({"name":"pencil-of-lines","nvars":2,"f":"x*y","expect":{"composite":false,"rho":1,"spectrum_size":1,"bounds":{"stein":"pass"}}})");
  REQUIRE(e.name == "pencil-of-lines");
  REQUIRE(e.nvars == 2);
  REQUIRE(e.expect.composite == false);
  REQUIRE(e.expect.rho == 1);
  REQUIRE(e.expect.spectrum_size == 1);
  REQUIRE(e.expect.bounds.at("stein") == "pass");

  CorpusEntry inf = parse_corpus_entry(R"({"name":"square","nvars":2,"f":"x^2/y^2","expect":{"rho":"infinite"}})");
  REQUIRE(inf.expect.rho_infinite);

  CorpusEntry bare = parse_corpus_entry(R"js({"name":"bare","nvars":3,"f":"x/(y*z)"})js");
  REQUIRE_FALSE(bare.expect.composite.has_value());

  REQUIRE_THROWS_AS(parse_corpus_entry("not json at all"), std::runtime_error);
  REQUIRE_THROWS_AS(parse_corpus_entry(R"({"nvars":2,"f":"x"})"), std::runtime_error);
  REQUIRE_THROWS_AS(parse_corpus_entry(R"({"name":"a","nvars":1,"f":"x"})"), std::runtime_error);
  REQUIRE_THROWS_AS(parse_corpus_entry(R"({"name":"a","nvars":2,"f":"x","what":1})"), std::runtime_error);
  REQUIRE_THROWS_AS(parse_corpus_entry(R"({"name":"a","nvars":2,"f":"x","expect":{"rho":true}})"),
                    std::runtime_error);
  REQUIRE_THROWS_AS(
      parse_corpus_entry(R"({"name":"a","nvars":2,"f":"x","expect":{"bounds":{"stein":"maybe"}}})"),
      std::runtime_error);
}

TEST_CASE("corpus runs survive malformed entries") {
  std::istringstream in(
      R"({"name":"lines","nvars":2,"f":"x*y","expect":{"composite":false,"rho":1}}
{"name":"broken json
{"name":"wrong","nvars":2,"f":"x*y","expect":{"rho":5}}
{"name":"lines","nvars":2,"f":"x*y"}
{"name":"unparseable","nvars":2,"f":"x +* y"}
)");
  std::ostringstream out;
  const int code = run_corpus(in, 7, 8, out);
  REQUIRE(code == 3);
  const std::string t = out.str();
  REQUIRE(t.find("ok   lines") != std::string::npos);
  REQUIRE(t.find("ERROR line 2") != std::string::npos);
  REQUIRE(t.find("FAIL wrong") != std::string::npos);
  REQUIRE(t.find("duplicate name") != std::string::npos);
  REQUIRE(t.find("ERROR unparseable") != std::string::npos);

  std::istringstream good(R"js({"name":"quadric","nvars":3,"f":"x/(y*z)","expect":{"composite":false,"bounds":{"lorenzini":"pass","stein":"n/a"}}}
)js");
  std::ostringstream gout;
  REQUIRE(run_corpus(good, 11, 8, gout) == 0);
  REQUIRE(gout.str().find("ok   quadric") != std::string::npos);
}
