#include <catch2/catch_amalgamated.hpp>

#include "dgforge/io.hpp"
#include "dgforge/radical.hpp"

using namespace dgforge;
using Q = Rational;

namespace {

std::string error_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("builtins round-trip through the text format") {
  for (auto& name : builtin_names()) {
    auto a = builtin_example<Q>(name);
    auto text = emit_algebra(a);
    auto b = parse_algebra<Q>(text, name);
    CHECK(a == b);
    CHECK(emit_algebra(b) == text);
    CHECK(peek_field(text, name) == FieldSpec::rational());
  }
}

TEST_CASE("prime field algebras round-trip") {
  auto f = FieldSpec::prime_field(5);
  auto a = builtin_example<Fp>("a2_path", f);
  auto text = emit_algebra(a);
  CHECK(text.find("field Fp:5") != std::string::npos);
  REQUIRE(peek_field(text, "x") == f);
  CHECK(parse_algebra<Fp>(text, "x") == a);
  CHECK_THROWS_AS(parse_algebra<Q>(text, "x"), Error);
}

TEST_CASE("modules round-trip") {
  auto a = share(builtin_example<Q>("dual_numbers"));
  for (auto& m : simple_modules(a)) {
    auto text = emit_module(m, "builtin:dual_numbers");
    auto h = peek_module(text, "m");
    CHECK(h.algebra == "builtin:dual_numbers");
    CHECK_FALSE(h.opposite);
    CHECK(parse_module<Q>(text, "m", a) == m);
  }
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto m = random_module(a, seed);
    auto text = emit_module(m, "dual_numbers.dga", true);
    CHECK(peek_module(text, "m").opposite);
    CHECK(parse_module<Q>(text, "m", a) == m);
  }
}

TEST_CASE("hand written algebra") {
  const char* text = R"(dgforge/1
kind algebra
field Q
# exterior algebra on x with d = 0
basis e:0
basis x:1 y:2
unit e
mul x * x = 0
mul x * y = 0
mul y * x = 0
mul y * y = 0
diff x = 1/2 y   # trailing comment
)";
  auto a = parse_algebra<Q>(text, "h.dga");
  REQUIRE(a.dim() == 3);
  CHECK(a.product(a.unit(), 1) == Combination<Q>{{1, Q(1)}});
  CHECK(a.differential(1) == Combination<Q>{{2, Q(1, 2)}});
  CHECK(validate_dga(a).empty());
}

TEST_CASE("coefficients, signs and zero") {
  const char* text = R"(dgforge/1
kind algebra
basis 1:0 a:0 b:0
unit 1
mul a * a = a
mul a * b = b
mul b * a = 0
mul b * b = 2 b - 2 b
)";
  auto a = parse_algebra<Q>(text, "s");
  CHECK(a.product(1, 1) == Combination<Q>{{1, Q(1)}});
  CHECK(a.product(2, 2).empty());
  CHECK(a.product(0, 0) == Combination<Q>{{0, Q(1)}});
}

TEST_CASE("diagnostics carry line and column") {
  auto missing_unit = error_of([] { parse_algebra<Q>("dgforge/1\nkind algebra\nbasis e:0\n", "u.dga"); });
  CHECK_THAT(missing_unit, Catch::Matchers::ContainsSubstring("unit required"));
  CHECK_THAT(missing_unit, Catch::Matchers::ContainsSubstring("u.dga:"));

  auto unknown = error_of([] { parse_algebra<Q>("dgforge/1\nkind algebra\nbasis e:0\nunit e\nmul e * z = e\n", "v"); });
  CHECK_THAT(unknown, Catch::Matchers::ContainsSubstring("v:5:9: unknown basis element 'z'"));

  auto version = error_of([] { parse_algebra<Q>("dgforge/2\nkind algebra\n", "w"); });
  CHECK_THAT(version, Catch::Matchers::ContainsSubstring("w:1:1:"));

  auto degree = error_of([] { parse_algebra<Q>("dgforge/1\nkind algebra\nbasis e:0 x:two\nunit e\n", "d"); });
  CHECK_THAT(degree, Catch::Matchers::ContainsSubstring("d:3:11: bad degree 'two'"));

  auto twice = error_of([] { parse_algebra<Q>("dgforge/1\nkind algebra\nbasis e:0\nunit e\nmul e * e = e\nmul e * e = e\n", "t"); });
  CHECK_THAT(twice, Catch::Matchers::ContainsSubstring("t:6:"));
}

TEST_CASE("inhomogeneous products are reported by validation") {
  const char* text = R"(dgforge/1
kind algebra
basis 1:0 x:1 y:1
unit 1
mul x * y = x
)";
  auto a = parse_algebra<Q>(text, "bad.dga");
  auto v = validate_dga(a);
  REQUIRE_FALSE(v.empty());
  bool named = false;
  for (auto& x : v)
    if (x.axiom == "degree" && x.detail.find("x * y") != std::string::npos) named = true;
  CHECK(named);
}

TEST_CASE("digest") {
  CHECK(fnv1a64("") == "cbf29ce484222325");
  CHECK(fnv1a64("a") == "af63dc4c8601ec8c");
}
