#include "doctest.h"

#include "cubereg/cycle_spec.hpp"
#include "cubereg/error.hpp"
#include "test_support.hpp"

using namespace cubereg;
using testsupport::random_admissible;
using testsupport::random_factored_rf;
using testsupport::small_gauss;
using testsupport::small_rational;

namespace {

const char* kXi = R"({
  "ambient": "pt",
  "n": 3,
  "params": { "a": "2/5" },
  "components": [
    { "coeff": "1", "kind": "curve", "coords": ["1 - a/t", "1 - t", "t"] },
    { "coeff": "-1", "kind": "curve", "coords": ["1 - (1 - a)/t", "t", "1 - t"] }
  ]
})";

Error error_of(const std::string& text) {
  try {
    build_cycle(parse_cycle_spec(text));
  } catch (const Error& e) {
    return e;
  }
  FAIL("expected an error");
  return Error(ErrorCode::ParseError, "");
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
  auto at = s.find(from);
  REQUIRE(at != std::string::npos);
  return s.replace(at, from.size(), to);
}

}  // namespace

TEST_CASE("dilogarithm spec builds xi_a") {
  Cycle z = build_cycle(parse_cycle_spec(kXi));
  CHECK(z == cycle_xi(GaussRational(Rational(2, 5))));
  CHECK(boundary(z).empty());
  Cycle other = build_cycle(parse_cycle_spec(kXi), {{"a", GaussRational(Rational(1, 2), Rational(1, 3))}});
  CHECK(other == cycle_xi(GaussRational(Rational(1, 2), Rational(1, 3))));
}

TEST_CASE("V(a) spec has boundary (1-a, a)") {
  std::string v = replace(kXi, ",\n    { \"coeff\": \"-1\", \"kind\": \"curve\", \"coords\": [\"1 - (1 - a)/t\", \"t\", \"1 - t\"] }", "");
  Cycle b = boundary(build_cycle(parse_cycle_spec(v)));
  CHECK(b.to_string() == "+(3/5, 2/5)");
}

TEST_CASE("expression errors point into the file") {
  Error e = error_of(replace(kXi, "1 - a/t", "1−a//t"));
  CHECK(e.code() == ErrorCode::ParseError);
  CHECK(e.line() == 6);
  // The offending second slash: quote at column 49, expression column 5.
  CHECK(e.column() == 54);

  Error unbound = error_of(replace(kXi, "1 - a/t", "1 - b/t"));
  CHECK(unbound.code() == ErrorCode::ParseError);
  CHECK(unbound.line() == 6);
  CHECK(unbound.column() == 54);

  Error div = error_of(replace(kXi, "1 - a/t", "1/(t - t)"));
  CHECK(div.code() == ErrorCode::ParseError);
}

TEST_CASE("schema violations") {
  Error top = error_of(replace(kXi, "\"n\": 3,", "\"n\": 3, \"colour\": \"red\","));
  CHECK(top.code() == ErrorCode::ParseError);
  CHECK(std::string(top.what()).find("unknown field 'colour'") != std::string::npos);
  CHECK(top.line() == 3);
  CHECK(top.column() == 11);

  Error comp = error_of(replace(kXi, "\"kind\": \"curve\", \"coords\": [\"1 - a", "\"kind\": \"curve\", \"weight\": 2, \"coords\": [\"1 - a"));
  CHECK(std::string(comp.what()).find("components[0]: unknown field 'weight'") != std::string::npos);

  Error json_err = error_of(replace(kXi, "\"n\": 3,", "\"n\": 3"));
  CHECK(json_err.code() == ErrorCode::ParseError);
  CHECK(json_err.line() == 4);

  CHECK(std::string(error_of(replace(kXi, "\"n\": 3,", "")).what()).find("missing field 'n'") != std::string::npos);
  CHECK(std::string(error_of(replace(kXi, "\"1 - t\", \"t\"]", "\"1 - t\"]")).what()).find("expected 3 coordinates") !=
        std::string::npos);
  CHECK(std::string(error_of(replace(kXi, "\"kind\": \"curve\"", "\"kind\": \"surface\"")).what()).find("surface") !=
        std::string::npos);
  CHECK(std::string(error_of(replace(kXi, "\"pt\"", "\"P2\"")).what()).find("P2") != std::string::npos);
  CHECK(error_of(replace(kXi, "\"kind\": \"curve\"", "\"kind\": \"vertical\"")).code() == ErrorCode::ParseError);
  CHECK(error_of(replace(kXi, "\"2/5\"", "\"2/5 + t\"")).code() == ErrorCode::ParseError);
  CHECK(error_of(replace(kXi, "\"coeff\": \"1\"", "\"coeff\": \"i\"")).code() == ErrorCode::ParseError);
  CHECK(error_of(replace(kXi, "\"n\": 3,", "\"n\": 3, \"version\": 2,")).code() == ErrorCode::ParseError);
  CHECK(error_of("[1, 2]").code() == ErrorCode::ParseError);
}

TEST_CASE("parameter overrides must be declared") {
  auto doc = parse_cycle_spec(kXi);
  try {
    build_cycle(doc, {{"b", GaussRational(1)}});
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
  }
}

TEST_CASE("P1 components, cuts and loops") {
  const char* text = R"spec({
    "ambient": "P1", "n": 2,
    "components": [
      { "coeff": "1/2", "kind": "curve", "coords": ["t - 3", "(t + i)/(t - 2)"] },
      { "coeff": "-3", "kind": "point", "coords": ["2", "-1/3"], "basepoint": "inf" },
      { "coeff": 2, "kind": "point", "coords": ["2", "5"], "basepoint": "1/2 + i" },
      { "coeff": "1", "kind": "vertical", "coords": ["t", "1 - t"], "basepoint": "-4" }
    ],
    "cuts": [0.25, -0.5],
    "loops": ["c=0+0i,r=1", "poly=0;1;i"]
  })spec";
  auto doc = parse_cycle_spec(text);
  CHECK(doc.cuts == std::vector<double>{0.25, -0.5});
  CHECK(doc.loops.size() == 2);
  Cycle z = build_cycle(doc);
  CHECK(z.terms().size() == 4);
  std::string dumped = dump_cycle_spec(z, doc.cuts, doc.loops);
  auto again = parse_cycle_spec(dumped);
  CHECK(build_cycle(again) == z);
  CHECK(again.cuts == doc.cuts);
  CHECK(again.loops == doc.loops);
  CHECK(dump_cycle_spec(build_cycle(again), again.cuts, again.loops) == dumped);
}

TEST_CASE("property: dump then parse is the identity on random cycles") {
  std::mt19937_64 rng(2718);
  int tested = 0;
  for (int attempt = 0; attempt < 1000 && tested < 60; ++attempt) {
    auto z = random_admissible(rng, 1 + attempt % 4);
    if (!z) continue;
    // Add points over P1 and vertical curves on every third cycle.
    if (tested % 3 == 2) {
      Cycle w(Ambient::P1, z->n());
      for (const auto& t : z->terms()) w.add(t.coeff, t.component);
      std::vector<GaussRational> coords;
      for (int i = 0; i < z->n(); ++i) coords.push_back(small_gauss(rng));
      w.add(small_rational(rng), BoxPoint{coords, tested % 2 ? Location::inf() : Location::at(small_gauss(rng))});
      ParamCurve fiber;
      for (int i = 0; i < z->n(); ++i) fiber.coords.push_back(random_factored_rf(rng, 2));
      w.add(small_rational(rng), VerticalCurve{Location::at(small_gauss(rng)), fiber});
      w.normalize();
      *z = w;
    }
    std::string text = dump_cycle_spec(*z);
    Cycle back = build_cycle(parse_cycle_spec(text));
    CAPTURE(text);
    CHECK(back == *z);
    CHECK(dump_cycle_spec(back) == text);
    ++tested;
  }
  CHECK(tested == 60);
}
