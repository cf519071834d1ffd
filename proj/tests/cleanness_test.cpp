#include <doctest.h>

#include "ringlab/cleanness.hpp"

using namespace ringlab;

TEST_CASE("strongly clean witnesses") {
  RingContext z6(parse_ring_spec("Z6"));
  Classifier cls(z6);

  // units take e = 0
  const auto ru = cls.classify(z6.from_int(5), CleanProperty::StronglyClean);
  CHECK(ru.holds);
  CHECK(ru.witness->idempotent == z6.zero());

  // first witness in canonical idempotent order {0,1,3,4} for a = 2:
  // e = 1 already works since 2 - 1 = 1 is a unit
  const auto r2 = cls.classify(z6.from_int(2), CleanProperty::StronglyClean);
  CHECK(r2.holds);
  CHECK(r2.witness->idempotent == z6.from_int(1));
  CHECK(r2.witness->complement == z6.from_int(1));
  CHECK(verify_witness(*r2.witness));
}

TEST_CASE("perfectly clean witnesses") {
  // a = 0 in any ring: e = 1, complement -1
  for (const char* text : {"Z5", "M2(Z2)", "T2(Z4)"}) {
    RingContext ctx(parse_ring_spec(text));
    Classifier cls(ctx);
    const auto r = cls.classify(ctx.zero(), CleanProperty::PerfectlyClean);
    CHECK(r.holds);
    CHECK(r.witness->idempotent == ctx.one());
  }
  // the nilpotent e12 in M2(Z2) still has a perfectly clean witness
  RingContext m2(parse_ring_spec("M2(Z2)"));
  Classifier cls(m2);
  const auto r = cls.classify(m2.parse_element("[[0,1],[0,0]]"), CleanProperty::PerfectlyClean);
  CHECK(r.holds);
  CHECK(verify_witness(*r.witness));
  // every element of every small ring is perfectly clean (finite rings)
  for (const char* text : {"Z6", "Z9", "T2(Z2)", "M2(Z2)", "Z2xZ3"}) {
    RingContext ctx(parse_ring_spec(text));
    Classifier c(ctx);
    CHECK(c.ring_property(CleanProperty::PerfectlyClean).holds);
  }
}

TEST_CASE("quasipolar witnesses") {
  RingContext z4(parse_ring_spec("Z4"));
  Classifier cls(z4);
  // units take e = 0
  const auto ru = cls.classify(z4.from_int(3), CleanProperty::Quasipolar);
  CHECK(ru.holds);
  CHECK(ru.witness->idempotent == z4.zero());
  // a = 2: e = 1, a + e = 3 unit, ae = 2 qnil
  const auto r2 = cls.classify(z4.from_int(2), CleanProperty::Quasipolar);
  CHECK(r2.holds);
  CHECK(r2.witness->idempotent == z4.from_int(1));
  CHECK(r2.witness->plus_sign);
  CHECK(r2.witness->complement == z4.from_int(3));
  CHECK(verify_witness(*r2.witness));
}

TEST_CASE("J-clean family on Z3 (the asymmetric example)") {
  RingContext z3(parse_ring_spec("Z3"));
  Classifier cls(z3);
  const Element one = z3.from_int(1);
  const Element two = z3.from_int(2);

  const auto pjc1 = cls.classify(one, CleanProperty::PerfectlyJClean);
  CHECK(pjc1.holds);
  CHECK(pjc1.witness->idempotent == one);

  CHECK(!cls.classify(one, CleanProperty::JQuasipolar).holds);

  const auto jqp2 = cls.classify(two, CleanProperty::JQuasipolar);
  CHECK(jqp2.holds);
  CHECK(jqp2.witness->idempotent == one);
  CHECK(jqp2.witness->plus_sign);
  CHECK(jqp2.witness->complement.is_zero());

  CHECK(!cls.classify(two, CleanProperty::PerfectlyJClean).holds);
}

TEST_CASE("strongly nil clean") {
  RingContext z4(parse_ring_spec("Z4"));
  Classifier cls4(z4);
  const auto r3 = cls4.classify(z4.from_int(3), CleanProperty::StronglyNilClean);
  CHECK(r3.holds);
  CHECK(r3.witness->idempotent == z4.from_int(1));
  CHECK(r3.witness->complement == z4.from_int(2));

  RingContext z3(parse_ring_spec("Z3"));
  Classifier cls3(z3);
  CHECK(!cls3.classify(z3.from_int(2), CleanProperty::StronglyNilClean).holds);

  // idempotents decompose as themselves plus zero
  RingContext m2(parse_ring_spec("M2(Z2)"));
  Classifier clsm(m2);
  m2.for_each([&](std::uint64_t, std::span<const std::uint32_t> leaves) {
    const Element a = m2.from_leaves(leaves);
    if (a * a != a) return;
    const auto r = clsm.classify(a, CleanProperty::StronglyNilClean);
    REQUIRE(r.holds);
    CHECK(r.witness->idempotent == a);
    CHECK(r.witness->complement.is_zero());
  });
}

TEST_CASE("uniqueness properties count admissible idempotents") {
  RingContext z2(parse_ring_spec("Z2"));
  Classifier cls2(z2);
  const auto r0 = cls2.classify(z2.zero(), CleanProperty::UniquelyClean);
  CHECK(r0.holds);
  CHECK(r0.witness_count == 1);

  RingContext z3(parse_ring_spec("Z3"));
  Classifier cls3(z3);
  const auto r3 = cls3.classify(z3.zero(), CleanProperty::UniquelyClean);
  CHECK(r3.holds);
  CHECK(r3.witness_count == 1);
  CHECK(r3.witness->idempotent == z3.from_int(1));

  RingContext z6(parse_ring_spec("Z6"));
  Classifier cls6(z6);
  const auto r6 = cls6.classify(z6.from_int(2), CleanProperty::UniquelyClean);
  CHECK(!r6.holds);
  CHECK(r6.witness_count == 2);  // e = 1 and e = 3 both work
  const auto rs6 = cls6.classify(z6.from_int(2), CleanProperty::UniquelyStronglyClean);
  CHECK(rs6.witness_count == 2);
}

TEST_CASE("ring-level classification") {
  RingContext z2(parse_ring_spec("Z2"));
  CHECK(Classifier(z2).classify_ring().all_hold());

  RingContext z3(parse_ring_spec("Z3"));
  const PropertyReport rep = Classifier(z3).classify_ring();
  CHECK(rep[CleanProperty::PerfectlyClean].holds);
  CHECK(!rep[CleanProperty::PerfectlyJClean].holds);
  CHECK(*rep[CleanProperty::PerfectlyJClean].counterexample == "2");
  CHECK(*rep[CleanProperty::PerfectlyJClean].counterexample_index == 2);
  CHECK(!rep[CleanProperty::StronglyNilClean].holds);

  RingContext big(parse_ring_spec("T2(T2(Z2))"));
  CHECK(Classifier(big).ring_property(CleanProperty::PerfectlyJClean).holds);
}

TEST_CASE("counterexamples replay as element-level refutations") {
  for (const char* text : {"Z3", "Z6", "M2(Z2)", "Z2xZ3"}) {
    RingContext ctx(parse_ring_spec(text));
    Classifier cls(ctx);
    for (CleanProperty p : all_properties()) {
      const auto verdict = cls.ring_property(p);
      if (verdict.holds) continue;
      REQUIRE(verdict.counterexample_index.has_value());
      const Element cex = ctx.from_index(*verdict.counterexample_index);
      CHECK(!cls.classify(cex, p).holds);
      // least index: everything below it satisfies the property
      for (std::uint64_t i = 0; i < *verdict.counterexample_index; ++i)
        CHECK(cls.classify(ctx.from_index(i), p).holds);
    }
  }
}

TEST_CASE("witnesses replay from their fields alone") {
  for (const char* text : {"Z4", "Z6", "M2(Z2)", "T2(Z2)", "Z2xZ3"}) {
    RingContext ctx(parse_ring_spec(text));
    Classifier cls(ctx);
    ctx.for_each([&](std::uint64_t, std::span<const std::uint32_t> leaves) {
      const Element a = ctx.from_leaves(leaves);
      for (CleanProperty p : all_properties()) {
        const auto r = cls.classify(a, p);
        if (!r.witness) continue;
        CHECK(verify_witness(*r.witness));
        // tampering with the complement breaks replay
        CleanWitness bad = *r.witness;
        bad.complement = bad.complement + ctx.one();
        CHECK(!verify_witness(bad));
      }
    });
  }
}

TEST_CASE("implication chain per element") {
  for (const char* text : {"Z4", "Z6", "Z9", "M2(Z2)", "T2(Z2)", "Z2xZ3"}) {
    RingContext ctx(parse_ring_spec(text));
    Classifier cls(ctx);
    ctx.for_each([&](std::uint64_t, std::span<const std::uint32_t> leaves) {
      const Element a = ctx.from_leaves(leaves);
      const bool pjc = cls.classify(a, CleanProperty::PerfectlyJClean).holds;
      const bool sjc = cls.classify(a, CleanProperty::StronglyJClean).holds;
      const bool pc = cls.classify(a, CleanProperty::PerfectlyClean).holds;
      const bool sc = cls.classify(a, CleanProperty::StronglyClean).holds;
      const bool qp = cls.classify(a, CleanProperty::Quasipolar).holds;
      if (pjc) CHECK(sjc);
      if (pjc) CHECK(pc);
      if (sjc) CHECK(sc);
      if (pc) CHECK(sc);
      if (qp) CHECK(pc);
    });
  }
}

TEST_CASE("unique comm^2 idempotent under perfect J-cleanness") {
  RingContext t2(parse_ring_spec("T2(Z2)"));
  auto& st = t2.structure();
  Classifier cls(t2);
  REQUIRE(cls.ring_property(CleanProperty::PerfectlyJClean).holds);
  t2.for_each([&](std::uint64_t, std::span<const std::uint32_t> leaves) {
    const Element a = t2.from_leaves(leaves);
    int count = 0;
    for (std::uint64_t ei : st.idempotents().indices()) {
      const Element e = t2.from_index(ei);
      if (st.in_jacobson(a - e) && st.in_double_commutant(e, a)) ++count;
    }
    CHECK(count == 1);
  });
}

TEST_CASE("property names round trip") {
  for (CleanProperty p : all_properties()) {
    CHECK(property_from_name(property_name(p)) == p);
  }
  CHECK(!property_from_name("perfectly-J-clean"));  // names are lower-case
  CHECK(property_from_name("perfectly-j-clean") == CleanProperty::PerfectlyJClean);
}

TEST_CASE("corrupted classifier lies about perfect J-cleanness") {
  RingContext z2(parse_ring_spec("Z2"));
  Classifier honest(z2);
  Classifier corrupted(z2, Classifier::Corruption::DenyPerfectlyJClean);
  CHECK(honest.classify(z2.one(), CleanProperty::PerfectlyJClean).holds);
  CHECK(!corrupted.classify(z2.one(), CleanProperty::PerfectlyJClean).holds);
  // the corruption leaves the other properties alone
  CHECK(corrupted.classify(z2.one(), CleanProperty::StronglyJClean).holds);
}
