#include <doctest.h>

#include "ringlab/ring_context.hpp"

using namespace ringlab;

TEST_CASE("ring spec grammar") {
  CHECK(parse_ring_spec("Z4").kind() == RingSpec::Kind::Zmod);
  CHECK(parse_ring_spec("Z4").modulus() == 4);

  const RingSpec nested = parse_ring_spec("T2(T2(Z2))");
  CHECK(nested.kind() == RingSpec::Kind::Triangular);
  CHECK(nested.dim() == 2);
  CHECK(nested.base().kind() == RingSpec::Kind::Triangular);
  CHECK(nested.base().base().modulus() == 2);

  // round-trip through the printer
  const RingSpec mixed = parse_ring_spec("M2(Z4)xZ3");
  CHECK(mixed.kind() == RingSpec::Kind::Product);
  CHECK(mixed.left().kind() == RingSpec::Kind::Matrix);
  CHECK(mixed.right().modulus() == 3);
  CHECK(mixed.to_string() == "M2(Z4)xZ3");
  CHECK(parse_ring_spec(mixed.to_string()) == mixed);

  // whitespace-insensitive, left-associative product
  CHECK(parse_ring_spec("  M2( Z4 ) x Z3 ") == mixed);
  const RingSpec triple = parse_ring_spec("Z2xZ3xZ5");
  CHECK(triple.left() == parse_ring_spec("Z2xZ3"));
}

TEST_CASE("ring spec errors carry positions") {
  try {
    parse_ring_spec("Zx");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 1);
  }
  CHECK_THROWS_AS(parse_ring_spec("M2(Z4"), ParseError);
  CHECK_THROWS_AS(parse_ring_spec("Z0"), ParseError);
  CHECK_THROWS_AS(parse_ring_spec("Z4)"), ParseError);
  CHECK_THROWS_AS(parse_ring_spec("Q8"), ParseError);
  CHECK_THROWS_AS(parse_ring_spec(""), ParseError);
}

TEST_CASE("order formulas and the cap") {
  CHECK(parse_ring_spec("Z6").order() == 6);
  CHECK(parse_ring_spec("M2(Z4)").order() == 256);
  CHECK(parse_ring_spec("T2(Z2)").order() == 8);
  CHECK(parse_ring_spec("T3(Z2)").order() == 64);
  CHECK(parse_ring_spec("T2(T2(Z2))").order() == 512);
  CHECK(parse_ring_spec("Z2xZ3").order() == 6);

  // beyond the cap: an error, never a truncation
  CHECK_THROWS_AS(parse_ring_spec("M3(Z9)"), OrderCapError);
  CHECK_THROWS_AS(parse_ring_spec("M4(Z256)", std::uint64_t{1} << 40), OrderCapError);
  CHECK(parse_ring_spec("M3(Z9)", std::uint64_t{1} << 40).order(std::uint64_t{1} << 40) ==
        387420489ull);
}

TEST_CASE("arithmetic matches hand computations") {
  RingContext z4(parse_ring_spec("Z4"));
  CHECK((z4.from_int(2) * z4.from_int(2)).is_zero());

  RingContext m2z2(parse_ring_spec("M2(Z2)"));
  const Element id = m2z2.one();
  m2z2.for_each([&](std::uint64_t, std::span<const std::uint32_t> leaves) {
    const Element a = m2z2.from_leaves(leaves);
    CHECK(id * a == a);
    CHECK(a * id == a);
  });

  RingContext t2z2(parse_ring_spec("T2(Z2)"));
  const Element u = t2z2.parse_element("[[1,1],[0,1]]");
  CHECK(u * u == t2z2.one());
}

TEST_CASE("enumeration is a canonical-index bijection") {
  for (const char* text : {"Z3", "T2(Z2)", "M2(Z4)", "Z2xZ3", "T2(T2(Z2))"}) {
    RingContext ctx(parse_ring_spec(text));
    std::uint64_t count = 0;
    bool indices_ok = true;
    ctx.for_each([&](std::uint64_t idx, std::span<const std::uint32_t> leaves) {
      indices_ok = indices_ok && idx == count && ctx.index_of(leaves) == idx &&
                   ctx.from_index(idx).leaves().size() == leaves.size() &&
                   ctx.from_index(idx) == ctx.from_leaves(leaves);
      ++count;
    });
    CHECK(count == ctx.order());
    CHECK(indices_ok);
  }
  CHECK(RingContext(parse_ring_spec("Z3")).order() == 3);
  CHECK(RingContext(parse_ring_spec("T2(Z2)")).order() == 8);
  CHECK(RingContext(parse_ring_spec("M2(Z4)")).order() == 256);
}

namespace {

void check_axioms_exhaustive(const RingContext& ctx) {
  std::vector<Element> all;
  all.reserve(ctx.order());
  ctx.for_each([&](std::uint64_t, std::span<const std::uint32_t> leaves) {
    all.push_back(ctx.from_leaves(leaves));
  });
  const Element zero = ctx.zero();
  const Element one = ctx.one();
  for (const Element& a : all) {
    REQUIRE(a + zero == a);
    REQUIRE(a * one == a);
    REQUIRE(one * a == a);
    REQUIRE((a + (-a)).is_zero());
    for (const Element& b : all) {
      REQUIRE(a + b == b + a);
      for (const Element& c : all) {
        REQUIRE((a + b) + c == a + (b + c));
        REQUIRE((a * b) * c == a * (b * c));
        REQUIRE(a * (b + c) == a * b + a * c);
        REQUIRE((a + b) * c == a * c + b * c);
      }
    }
  }
}

void check_axioms_sampled(const RingContext& ctx, int samples) {
  std::uint64_t state = 0x12345678u;
  auto next = [&] {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return (z ^ (z >> 31)) % ctx.order();
  };
  for (int i = 0; i < samples; ++i) {
    const Element a = ctx.from_index(next());
    const Element b = ctx.from_index(next());
    const Element c = ctx.from_index(next());
    REQUIRE((a + b) + c == a + (b + c));
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(a * (b + c) == a * b + a * c);
    REQUIRE((a + b) * c == a * c + b * c);
    REQUIRE(a + b == b + a);
  }
}

}  // namespace

TEST_CASE("ring axioms: exhaustive to order 64, sampled above") {
  for (const char* text : {"Z6", "Z2xZ3", "T2(Z2)", "M2(Z2)", "T3(Z2)"})
    check_axioms_exhaustive(RingContext(parse_ring_spec(text)));
  for (const char* text : {"M2(Z4)", "T2(T2(Z2))"})
    check_axioms_sampled(RingContext(parse_ring_spec(text)), 10000);
}

TEST_CASE("product arithmetic is componentwise") {
  RingContext prod(parse_ring_spec("Z4xZ3"));
  const RingContext& zl = prod.left_context();
  const RingContext& zr = prod.right_context();
  prod.for_each([&](std::uint64_t, std::span<const std::uint32_t> lv) {
    const Element x = prod.from_leaves(lv);
    const auto [xa, xb] = prod.split_product(x);
    const Element y = prod.from_index((x.index() * 7 + 3) % prod.order());
    const auto [ya, yb] = prod.split_product(y);
    CHECK(prod.split_product(x + y).first == zl.add(xa, ya));
    CHECK(prod.split_product(x + y).second == zr.add(xb, yb));
    CHECK(prod.split_product(x * y).first == zl.mul(xa, ya));
    CHECK(prod.split_product(x * y).second == zr.mul(xb, yb));
  });
  CHECK(prod.assemble_product(zl.from_int(1), zr.from_int(2)).to_string() == "(1,2)");
}

TEST_CASE("triangular elements stay upper triangular") {
  RingContext t3(parse_ring_spec("T3(Z2)"));
  std::uint64_t state = 7;
  for (int i = 0; i < 200; ++i) {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    const Element a = t3.from_index(state % t3.order());
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    const Element b = t3.from_index(state % t3.order());
    const Element c = a * b;
    for (std::uint32_t r = 0; r < 3; ++r)
      for (std::uint32_t cc = 0; cc < r; ++cc) CHECK(t3.entry(c, r, cc).is_zero());
  }
  // literals with a nonzero below-diagonal entry are rejected
  RingContext t2(parse_ring_spec("T2(Z2)"));
  CHECK_THROWS_AS(t2.parse_element("[[1,1],[1,1]]"), ParseError);
  CHECK(t2.parse_element("[[1,1],[0,1]]").index() == 7);
}

TEST_CASE("element literals") {
  RingContext prod(parse_ring_spec("Z2xZ3"));
  CHECK(prod.parse_element("#5") == prod.parse_element("(1,2)"));
  CHECK(prod.from_index(5).to_string() == "(1,2)");

  RingContext z4(parse_ring_spec("Z4"));
  CHECK(z4.parse_element("-1") == z4.from_int(3));
  CHECK(z4.parse_element("7") == z4.from_int(3));

  RingContext m2(parse_ring_spec("M2(Z4)"));
  CHECK(m2.parse_element("[[#1,0],[0,#3]]") == m2.parse_element("[[1,0],[0,3]]"));
  CHECK_THROWS_AS(m2.parse_element("[[1,0],[0]]"), ParseError);
  CHECK_THROWS_AS(m2.parse_element("#256"), ParseError);
  CHECK_THROWS_AS(prod.parse_element("(1)"), ParseError);

  // format / parse round trip
  for (const char* text : {"Z6", "M2(Z2)", "T2(Z4)", "Z2xZ3"}) {
    RingContext ctx(parse_ring_spec(text));
    ctx.for_each([&](std::uint64_t idx, std::span<const std::uint32_t>) {
      const Element a = ctx.from_index(idx);
      CHECK(ctx.parse_element(a.to_string()) == a);
    });
  }
}

TEST_CASE("zero ring") {
  RingContext z1(parse_ring_spec("Z1"));
  CHECK(z1.order() == 1);
  CHECK(z1.one() == z1.zero());
  CHECK((z1.one() * z1.one()).is_zero());
  CHECK(z1.characteristic() == 1);
}

TEST_CASE("operand ring mismatch") {
  RingContext z2(parse_ring_spec("Z2"));
  RingContext z3(parse_ring_spec("Z3"));
  CHECK_THROWS_AS(z2.add(z2.one(), z3.one()), RingMismatchError);
  // equal specs from distinct contexts are interoperable
  RingContext z3b(parse_ring_spec("Z3"));
  CHECK(z3.add(z3.one(), z3b.one()) == z3.from_int(2));
}

TEST_CASE("characteristic and integer scalars") {
  CHECK(RingContext(parse_ring_spec("Z4")).characteristic() == 4);
  CHECK(RingContext(parse_ring_spec("T2(Z2)")).characteristic() == 2);
  CHECK(RingContext(parse_ring_spec("Z2xZ3")).characteristic() == 6);
  CHECK(RingContext(parse_ring_spec("M2(Z4)")).characteristic() == 4);

  RingContext z6(parse_ring_spec("Z6"));
  CHECK(z6.from_int(-5) == z6.from_int(1));
  CHECK(z6.scalar_mul(7, z6.from_int(2)) == z6.from_int(2));
  CHECK(z6.pow(z6.from_int(5), 0) == z6.one());
  CHECK(z6.pow(z6.from_int(2), 10) == z6.from_int(4));
}
