#include "ringlab/harness.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <memory>
#include <thread>

#include "ringlab/procedures.hpp"

namespace ringlab {

namespace {

struct CaseInfo {
  TheoremCaseId id;
  const char* name;
  const char* applicability;
  const char* statement;
};

constexpr std::array<CaseInfo, kTheoremCaseCount> kCases{{
    {TheoremCaseId::T2_1, "T2.1", "any ring",
     "perfectly clean <=> every a has x in comm^2(a) with x = xax and 1-x in (1-a)R and R(1-a)"},
    {TheoremCaseId::C2_2, "C2.2", "any ring",
     "perfectly clean <=> every a has a comm^2 idempotent passing both corner-unit checks"},
    {TheoremCaseId::T2_3, "T2.3", "any ring",
     "strongly nil clean <=> perfectly clean and N(R) = {x : 1-x a unit}"},
    {TheoremCaseId::C2_4, "C2.4", "any ring",
     "strongly nil clean <=> quasipolar and N(R) = {x : 1-x a unit}"},
    {TheoremCaseId::L2_5, "L2.5", "any ring",
     "perfectly clean <=> every a has a comm^2 idempotent with a-e and a+e units"},
    {TheoremCaseId::T2_6, "T2.6", "ring is Mn(R)",
     "every A in Mn(R) decomposes as 2A = U + V with U, V invertible"},
    {TheoremCaseId::C2_7, "C2.7", "2 is a unit of R",
     "quasipolar with 1/2 in R: every 2x2 matrix over R is a sum of two invertible matrices"},
    {TheoremCaseId::L3_1, "L3.1", "any ring",
     "perfect cleanness of an element is invariant under unit conjugation, witnesses map along"},
    {TheoremCaseId::T3_2, "T3.2", "ring is M2(R) with R local",
     "M2(R): perfectly clean <=> strongly clean <=> unit / 1-A unit / diagonalizable trichotomy"},
    {TheoremCaseId::C3_3, "C3.3", "ring is M2(R) with R commutative local",
     "commutative local base: same three equivalences as the matrix trichotomy"},
    {TheoremCaseId::T3_4, "T3.4", "ring is T2(R) with R local",
     "T2(R) perfectly clean <=> unique Sylvester solution for a in J, b in 1+J"},
    {TheoremCaseId::C3_6, "C3.6", "ring is T2(R) with R local",
     "T2(R) perfectly clean <=> R uniquely weakly bleached"},
    {TheoremCaseId::T4_1, "T4.1", "any ring",
     "perfectly J-clean <=> quasipolar and R/J(R) Boolean"},
    {TheoremCaseId::C4_2, "C4.2", "any ring",
     "perfectly J-clean <=> perfectly clean + Boolean mod J <=> quasipolar + strongly J-clean"},
    {TheoremCaseId::E4_3, "E4.3", "ring is T2(T2(Z2^n))",
     "T2(T2(Z2^n)) is perfectly J-clean"},
    {TheoremCaseId::P4_4, "P4.4", "any ring",
     "perfectly J-clean <=> perfectly clean and uniquely strongly clean"},
    {TheoremCaseId::C4_5, "C4.5", "any ring",
     "uniquely clean <=> abelian and perfectly J-clean"},
    {TheoremCaseId::T4_6, "T4.6", "any ring",
     "perfectly J-clean <=> each a has exactly one comm^2 idempotent with a-e in J(R)"},
    {TheoremCaseId::C4_7, "C4.7", "any ring",
     "perfectly J-clean <=> quasipolar and strongly J-clean"},
    {TheoremCaseId::P4_8, "P4.8", "any ring",
     "perfectly J-clean ring <=> every a has a comm^2 idempotent with a+e in J(R)"},
    {TheoremCaseId::E4_9, "E4.9", "ring is Z3",
     "in Z3: 1 is perfectly J-clean but not J-quasipolar; 2 is J-quasipolar but not perfectly J-clean"},
    {TheoremCaseId::L4_10, "L4.10", "any ring",
     "per element: perfectly J-clean <=> quasipolar and a - a^2 in J(R)"},
    {TheoremCaseId::T4_11, "T4.11", "ring is Tn(R) with R commutative and 2 in J(R)",
     "A perfectly J-clean in Tn(R) <=> every diagonal entry perfectly J-clean in R; lift agrees"},
    {TheoremCaseId::C4_12, "C4.12", "ring is commutative",
     "R strongly J-clean <=> Tn(R) perfectly J-clean for all (equivalently some) n"},
    {TheoremCaseId::L4_13, "L4.13", "any ring",
     "perfect J-cleanness of an element is invariant under unit conjugation, witnesses map along"},
    {TheoremCaseId::T4_14, "T4.14", "ring is M2(R) with R commutative local",
     "per matrix: perfectly J-clean <=> strongly J-clean <=> characteristic-root criterion"},
    {TheoremCaseId::C4_15, "C4.15", "ring is M2(R) with R commutative local",
     "M2(R) perfectly clean <=> every A is a unit, or I-A is a unit, or A is perfectly J-clean"},
}};

struct SplitMix64 {
  std::uint64_t s;
  explicit SplitMix64(std::uint64_t seed) : s(seed) {}
  std::uint64_t next() {
    s += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
};

std::uint64_t fnv64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

const CaseInfo& info_of(TheoremCaseId id) { return kCases[static_cast<int>(id)]; }

// Per-(ring, sweep) evaluation state shared by that ring's cases.
struct CaseEnv {
  std::shared_ptr<const RingContext> ring;
  std::shared_ptr<const Budget> budget;
  const SweepOptions& opts;
  Classifier classifier;
  std::array<std::optional<PropertyVerdict>, kCleanPropertyCount> prop_cache;

  CaseEnv(std::shared_ptr<const RingContext> r, std::shared_ptr<const Budget> b,
          const SweepOptions& o)
      : ring(std::move(r)), budget(std::move(b)), opts(o),
        classifier(*ring, o.corruption) {}

  const PropertyVerdict& property(CleanProperty p) {
    auto& slot = prop_cache[static_cast<int>(p)];
    if (!slot) slot = classifier.ring_property(p);
    return *slot;
  }
  bool ring_has(CleanProperty p) { return property(p).holds; }

  SplitMix64 rng_for(TheoremCaseId id) const {
    return SplitMix64(opts.seed ^ fnv64(ring->spec().to_string()) ^
                      (0x9e37ull * (static_cast<std::uint64_t>(id) + 1)));
  }
};

void note(VerificationReport& rep, std::string key, std::string value) {
  rep.details.emplace_back(std::move(key), std::move(value));
}

void note_bool(VerificationReport& rep, std::string key, bool v) {
  note(rep, std::move(key), v ? "true" : "false");
}

void fail_with(VerificationReport& rep, const Element& cex, std::string why) {
  rep.verdict = Verdict::Fail;
  rep.counterexample = cex.to_string();
  rep.counterexample_index = cex.index();
  note(rep, "reason", std::move(why));
}

// ---- applicability ----

bool is_t2_of_t2_of_z2n(const RingSpec& s) {
  if (s.kind() != RingSpec::Kind::Triangular || s.dim() != 2) return false;
  const RingSpec inner = s.base();
  if (inner.kind() != RingSpec::Kind::Triangular || inner.dim() != 2) return false;
  const RingSpec leaf = inner.base();
  if (leaf.kind() != RingSpec::Kind::Zmod) return false;
  const std::uint64_t m = leaf.modulus();
  return m >= 2 && (m & (m - 1)) == 0;
}

bool applicable(TheoremCaseId id, const RingContext& ctx) {
  const RingSpec& s = ctx.spec();
  switch (id) {
    case TheoremCaseId::T2_6:
      return s.kind() == RingSpec::Kind::Matrix;
    case TheoremCaseId::C2_7:
      return ctx.structure().is_unit(ctx.from_int(2));
    case TheoremCaseId::T3_2:
      return s.kind() == RingSpec::Kind::Matrix && s.dim() == 2 &&
             ctx.base_context().structure().is_local();
    case TheoremCaseId::C3_3:
      return s.kind() == RingSpec::Kind::Matrix && s.dim() == 2 &&
             s.base().is_commutative() && ctx.base_context().structure().is_local();
    case TheoremCaseId::T3_4:
    case TheoremCaseId::C3_6:
      return s.kind() == RingSpec::Kind::Triangular && s.dim() == 2 &&
             ctx.base_context().structure().is_local();
    case TheoremCaseId::E4_3:
      return is_t2_of_t2_of_z2n(s);
    case TheoremCaseId::E4_9:
      return s == RingSpec::zmod(3);
    case TheoremCaseId::T4_11:
      return s.kind() == RingSpec::Kind::Triangular && s.base().is_commutative() &&
             ctx.base_context().structure().in_jacobson(ctx.base_context().from_int(2));
    case TheoremCaseId::C4_12:
      return s.is_commutative();
    case TheoremCaseId::T4_14:
    case TheoremCaseId::C4_15:
      return s.kind() == RingSpec::Kind::Matrix && s.dim() == 2 &&
             s.base().is_commutative() && ctx.base_context().structure().is_local();
    default:
      return true;
  }
}

// ---- the case checks ----

void check_t2_1(CaseEnv& env, VerificationReport& rep) {
  const RingContext& ctx = *env.ring;
  auto& st = ctx.structure();
  const Element one = ctx.one();
  for (std::uint64_t i = 0; i < ctx.order(); ++i) {
    if ((i & 63) == 0) env.budget->check("T2.1");
    const Element a = ctx.from_index(i);
    const auto w = env.classifier.classify(a, CleanProperty::PerfectlyClean);
    if (w.holds) {
      // Constructive translation there and back; both self-verify.
      const auto pi = witness_to_pseudo_inverse(a, w.witness->idempotent);
      (void)pseudo_inverse_to_witness(a, pi.x);
    } else {
      // Refutation side: no x may satisfy the pseudo-inverse form.
      const Element one_minus_a = one - a;
      bool found = false;
      ctx.for_each([&](std::uint64_t, std::span<const std::uint32_t> leaves) {
        if (found) return;
        const Element x = ctx.from_leaves(leaves);
        if (x * a * x != x || !st.in_double_commutant(x, a)) return;
        const Element target = one - x;
        bool s_found = false, t_found = false;
        ctx.for_each([&](std::uint64_t, std::span<const std::uint32_t> c) {
          if (s_found && t_found) return;
          const Element cand = ctx.from_leaves(c);
          if (!s_found && one_minus_a * cand == target) s_found = true;
          if (!t_found && cand * one_minus_a == target) t_found = true;
        });
        if (s_found && t_found) found = true;
      });
      if (found) {
        fail_with(rep, a, "pseudo-inverse form holds but no perfectly clean witness");
        return;
      }
    }
  }
  rep.verdict = Verdict::Pass;
}

void check_c2_2(CaseEnv& env, VerificationReport& rep) {
  const RingContext& ctx = *env.ring;
  auto& st = ctx.structure();
  const Element one = ctx.one();
  for (std::uint64_t i = 0; i < ctx.order(); ++i) {
    if ((i & 63) == 0) env.budget->check("C2.2");
    const Element a = ctx.from_index(i);
    const auto w = env.classifier.classify(a, CleanProperty::PerfectlyClean);
    bool corner_exists = false;
    for (std::uint64_t ei : st.idempotents().indices()) {
      const Element e = ctx.from_index(ei);
      if (!st.in_double_commutant(e, a)) continue;
      const bool corner_ok = corner_unit_check(a, e);
      // The corner conditions must coincide with 1-e being a witness.
      const bool complement_witness = st.is_unit(a - (one - e));
      if (corner_ok != complement_witness) {
        fail_with(rep, a,
                  "corner-unit check disagrees with the complement witness at e = " +
                      e.to_string());
        return;
      }
      corner_exists = corner_exists || corner_ok;
    }
    if (corner_exists != w.holds) {
      fail_with(rep, a, "corner form and perfectly clean classification disagree");
      return;
    }
  }
  rep.verdict = Verdict::Pass;
}

ElementSet one_minus_unit_set(const RingContext& ctx) {
  auto& st = ctx.structure();
  const Element one = ctx.one();
  std::vector<bool> bits(ctx.order(), false);
  ctx.for_each([&](std::uint64_t i, std::span<const std::uint32_t> leaves) {
    const Element x = ctx.from_leaves(leaves);
    if (st.is_unit(one - x)) bits[i] = true;
  });
  return ElementSet::from_bits(ctx.order(), bits);
}

void check_nil_clean_equivalence(CaseEnv& env, VerificationReport& rep,
                                 CleanProperty companion) {
  const RingContext& ctx = *env.ring;
  auto& st = ctx.structure();
  const bool lhs = env.ring_has(CleanProperty::StronglyNilClean);
  const bool companion_holds = env.ring_has(companion);
  const ElementSet nset = one_minus_unit_set(ctx);
  const bool sets_equal = nset == st.nilpotents();
  note_bool(rep, "strongly_nil_clean", lhs);
  note_bool(rep, std::string(property_name(companion)), companion_holds);
  note_bool(rep, "nilpotents_equal_one_minus_units", sets_equal);
  const bool rhs = companion_holds && sets_equal;
  if (lhs != rhs) {
    rep.verdict = Verdict::Fail;
    note(rep, "reason", "biconditional sides disagree");
    const auto& verdict = env.property(lhs ? companion : CleanProperty::StronglyNilClean);
    if (verdict.counterexample) {
      rep.counterexample = verdict.counterexample;
      rep.counterexample_index = verdict.counterexample_index;
    }
    return;
  }
  if (lhs) {
    // Constructive half: the idempotent polynomial applies to every element.
    for (std::uint64_t i = 0; i < ctx.order(); ++i) {
      if ((i & 255) == 0) env.budget->check("nil-clean polynomial sweep");
      (void)nil_clean_idempotent(ctx.from_index(i));
    }
    note(rep, "polynomial_checked", "all elements");
  }
  rep.verdict = Verdict::Pass;
}

void check_l2_5(CaseEnv& env, VerificationReport& rep) {
  const RingContext& ctx = *env.ring;
  auto& st = ctx.structure();
  for (std::uint64_t i = 0; i < ctx.order(); ++i) {
    if ((i & 63) == 0) env.budget->check("L2.5");
    const Element a = ctx.from_index(i);
    const auto w = env.classifier.classify(a, CleanProperty::PerfectlyClean);
    if (w.holds) {
      (void)two_sided_unit_witness(a);  // self-verifying
    } else {
      for (std::uint64_t ei : st.idempotents().indices()) {
        const Element e = ctx.from_index(ei);
        if (st.is_unit(a - e) && st.is_unit(a + e) && st.in_double_commutant(e, a)) {
          fail_with(rep, a, "two-sided witness exists but element is not perfectly clean");
          return;
        }
      }
    }
  }
  rep.verdict = Verdict::Pass;
}

void check_t2_6(CaseEnv& env, VerificationReport& rep) {
  const RingContext& ctx = *env.ring;
  SumOfUnitsDecomposer dec(ctx);
  if (ctx.order() <= env.opts.matrix_exhaustive_limit) {
    note(rep, "mode", "exhaustive");
    for (std::uint64_t i = 0; i < ctx.order(); ++i) {
      if ((i & 255) == 0) env.budget->check("T2.6");
      (void)dec.decompose(ctx.from_index(i));
    }
  } else {
    note(rep, "mode", "sampled");
    SplitMix64 rng = env.rng_for(TheoremCaseId::T2_6);
    (void)dec.decompose(ctx.zero());
    (void)dec.decompose(ctx.one());
    for (int i = 0; i < 50; ++i) {
      env.budget->check("T2.6");
      (void)dec.decompose(ctx.from_index(rng.below(ctx.order())));
    }
  }
  rep.verdict = Verdict::Pass;
}

void check_c2_7(CaseEnv& env, VerificationReport& rep) {
  const RingContext& base = *env.ring;
  auto& bst = base.structure();
  const bool quasi = env.ring_has(CleanProperty::Quasipolar);
  note_bool(rep, "quasipolar", quasi);
  if (!quasi) {  // hypothesis of the statement; unreachable on finite rings
    rep.verdict = Verdict::Fail;
    note(rep, "reason", "ring is not quasipolar");
    return;
  }
  const Element half = bst.inverse(base.from_int(2)).value();
  const RingSpec m2 = RingSpec::matrix(base.spec(), 2);
  const std::uint64_t order = m2.order(kAbsoluteOrderCap);
  auto mctx = std::make_shared<const RingContext>(
      m2, std::max(env.opts.max_order, order), env.budget);
  SumOfUnitsDecomposer dec(*mctx);

  const Element half_diag = mctx->assemble_matrix(
      {half, base.zero(), base.zero(), half});
  const Element two_diag = mctx->from_int(2);
  const Element id = mctx->one();

  auto check_one = [&](const Element& a) {
    const auto d = dec.decompose(a);
    const Element u2 = half_diag * d.u;
    const Element v2 = half_diag * d.v;
    if (u2 + v2 != a) throw PostconditionError("U/2 + V/2 != A");
    const Element u2_inv = d.u_inv * two_diag;
    const Element v2_inv = d.v_inv * two_diag;
    if (u2 * u2_inv != id || u2_inv * u2 != id || v2 * v2_inv != id || v2_inv * v2 != id)
      throw PostconditionError("halved factor inverse check failed");
  };

  if (order <= env.opts.matrix_exhaustive_limit) {
    note(rep, "mode", "exhaustive");
    for (std::uint64_t i = 0; i < order; ++i) {
      if ((i & 255) == 0) env.budget->check("C2.7");
      check_one(mctx->from_index(i));
    }
  } else {
    note(rep, "mode", "sampled");
    SplitMix64 rng = env.rng_for(TheoremCaseId::C2_7);
    check_one(mctx->zero());
    check_one(mctx->one());
    for (int i = 0; i < 50; ++i) {
      env.budget->check("C2.7");
      check_one(mctx->from_index(rng.below(order)));
    }
  }
  rep.verdict = Verdict::Pass;
}

void check_conjugation(CaseEnv& env, VerificationReport& rep, TheoremCaseId id,
                       CleanProperty prop) {
  const RingContext& ctx = *env.ring;
  auto& st = ctx.structure();
  const auto& units = st.units();
  const auto& inv = st.inverse_table();
  SplitMix64 rng = env.rng_for(id);
  for (std::uint64_t trial = 0; trial < env.opts.conjugation_samples; ++trial) {
    env.budget->check("conjugation sweep");
    const std::uint64_t ui = units.indices()[rng.below(units.size())];
    const Element u = ctx.from_index(ui);
    const Element u_inv = ctx.from_index(inv[ui]);
    const Element a = ctx.from_index(rng.below(ctx.order()));
    const Element b = u * a * u_inv;
    const auto ra = env.classifier.classify(a, prop);
    const auto rb = env.classifier.classify(b, prop);
    if (ra.holds != rb.holds) {
      fail_with(rep, a, "conjugate of " + a.to_string() + " by " + u.to_string() +
                            " classifies differently");
      return;
    }
    if (ra.holds) {
      // The conjugated witness must be a witness for the conjugate.
      CleanWitness w;
      w.property = prop;
      w.element = b;
      w.idempotent = u * ra.witness->idempotent * u_inv;
      w.plus_sign = ra.witness->plus_sign;
      w.complement = w.plus_sign ? b + w.idempotent : b - w.idempotent;
      if (!verify_witness(w)) {
        fail_with(rep, a, "conjugated witness fails verification");
        return;
      }
    }
  }
  note(rep, "samples", std::to_string(env.opts.conjugation_samples));
  rep.verdict = Verdict::Pass;
}

void check_matrix_trichotomy(CaseEnv& env, VerificationReport& rep) {
  const RingContext& ctx = *env.ring;
  auto& st = ctx.structure();
  const Element id = ctx.one();
  const bool pc = env.ring_has(CleanProperty::PerfectlyClean);
  const bool sc = env.ring_has(CleanProperty::StronglyClean);
  bool tri = true;
  std::optional<Element> violator;
  for (std::uint64_t i = 0; i < ctx.order() && tri; ++i) {
    if ((i & 255) == 0) env.budget->check("matrix trichotomy");
    const Element a = ctx.from_index(i);
    if (st.is_unit(a) || st.is_unit(id - a)) continue;
    if (!diagonalizing_conjugator(a)) {
      tri = false;
      violator = a;
    }
  }
  note_bool(rep, "perfectly_clean", pc);
  note_bool(rep, "strongly_clean", sc);
  note_bool(rep, "trichotomy", tri);
  if (pc == sc && sc == tri) {
    rep.verdict = Verdict::Pass;
  } else {
    rep.verdict = Verdict::Fail;
    note(rep, "reason", "equivalences disagree");
    if (violator) {
      rep.counterexample = violator->to_string();
      rep.counterexample_index = violator->index();
    }
  }
}

void check_t3_4(CaseEnv& env, VerificationReport& rep) {
  const bool lhs = env.ring_has(CleanProperty::PerfectlyClean);
  const bool rhs = sylvester_t2_criterion(*env.ring);
  note_bool(rep, "perfectly_clean", lhs);
  note_bool(rep, "sylvester_unique", rhs);
  rep.verdict = lhs == rhs ? Verdict::Pass : Verdict::Fail;
  if (rep.verdict == Verdict::Fail) note(rep, "reason", "biconditional sides disagree");
}

void check_c3_6(CaseEnv& env, VerificationReport& rep) {
  const bool lhs = env.ring_has(CleanProperty::PerfectlyClean);
  const bool rhs = env.ring->base_context().structure().is_uniquely_weakly_bleached();
  note_bool(rep, "perfectly_clean", lhs);
  note_bool(rep, "uniquely_weakly_bleached", rhs);
  rep.verdict = lhs == rhs ? Verdict::Pass : Verdict::Fail;
  if (rep.verdict == Verdict::Fail) note(rep, "reason", "biconditional sides disagree");
}

void report_side_counterexample(CaseEnv& env, VerificationReport& rep, bool lhs,
                                CleanProperty lhs_prop) {
  const auto& verdict = env.property(lhs_prop);
  if (!lhs && verdict.counterexample) {
    rep.counterexample = verdict.counterexample;
    rep.counterexample_index = verdict.counterexample_index;
  }
}

void check_t4_1(CaseEnv& env, VerificationReport& rep) {
  const RingContext& ctx = *env.ring;
  const bool pjc = env.ring_has(CleanProperty::PerfectlyJClean);
  const bool qp = env.ring_has(CleanProperty::Quasipolar);
  const bool bmj = ctx.structure().is_boolean_mod_j();
  note_bool(rep, "perfectly_j_clean", pjc);
  note_bool(rep, "quasipolar", qp);
  note_bool(rep, "boolean_mod_j", bmj);
  if (pjc == (qp && bmj)) {
    rep.verdict = Verdict::Pass;
  } else {
    rep.verdict = Verdict::Fail;
    note(rep, "reason", "biconditional sides disagree");
    report_side_counterexample(env, rep, pjc, CleanProperty::PerfectlyJClean);
  }
}

void check_c4_2(CaseEnv& env, VerificationReport& rep) {
  const bool pjc = env.ring_has(CleanProperty::PerfectlyJClean);
  const bool v2 = env.ring_has(CleanProperty::PerfectlyClean) &&
                  env.ring->structure().is_boolean_mod_j();
  const bool v3 = env.ring_has(CleanProperty::Quasipolar) &&
                  env.ring_has(CleanProperty::StronglyJClean);
  note_bool(rep, "perfectly_j_clean", pjc);
  note_bool(rep, "perfectly_clean_and_boolean_mod_j", v2);
  note_bool(rep, "quasipolar_and_strongly_j_clean", v3);
  rep.verdict = (pjc == v2 && v2 == v3) ? Verdict::Pass : Verdict::Fail;
  if (rep.verdict == Verdict::Fail) note(rep, "reason", "equivalences disagree");
}

void check_e4_3(CaseEnv& env, VerificationReport& rep) {
  note(rep, "order", std::to_string(env.ring->order()));
  const auto& verdict = env.property(CleanProperty::PerfectlyJClean);
  if (verdict.holds) {
    rep.verdict = Verdict::Pass;
  } else {
    rep.verdict = Verdict::Fail;
    note(rep, "reason", "ring is not perfectly J-clean");
    rep.counterexample = verdict.counterexample;
    rep.counterexample_index = verdict.counterexample_index;
  }
}

void check_p4_4(CaseEnv& env, VerificationReport& rep) {
  const bool pjc = env.ring_has(CleanProperty::PerfectlyJClean);
  const bool rhs = env.ring_has(CleanProperty::PerfectlyClean) &&
                   env.ring_has(CleanProperty::UniquelyStronglyClean);
  note_bool(rep, "perfectly_j_clean", pjc);
  note_bool(rep, "perfectly_clean_and_uniquely_strongly_clean", rhs);
  rep.verdict = pjc == rhs ? Verdict::Pass : Verdict::Fail;
  if (rep.verdict == Verdict::Fail) note(rep, "reason", "biconditional sides disagree");
}

void check_c4_5(CaseEnv& env, VerificationReport& rep) {
  const bool uc = env.ring_has(CleanProperty::UniquelyClean);
  const bool rhs = env.ring->structure().is_abelian() &&
                   env.ring_has(CleanProperty::PerfectlyJClean);
  note_bool(rep, "uniquely_clean", uc);
  note_bool(rep, "abelian_and_perfectly_j_clean", rhs);
  rep.verdict = uc == rhs ? Verdict::Pass : Verdict::Fail;
  if (rep.verdict == Verdict::Fail) note(rep, "reason", "biconditional sides disagree");
}

void check_t4_6(CaseEnv& env, VerificationReport& rep) {
  const RingContext& ctx = *env.ring;
  auto& st = ctx.structure();
  const bool lhs = env.ring_has(CleanProperty::PerfectlyJClean);
  bool rhs = true;
  std::optional<Element> violator;
  for (std::uint64_t i = 0; i < ctx.order() && rhs; ++i) {
    if ((i & 255) == 0) env.budget->check("T4.6");
    const Element a = ctx.from_index(i);
    std::uint64_t count = 0;
    for (std::uint64_t ei : st.idempotents().indices()) {
      const Element e = ctx.from_index(ei);
      if (st.in_jacobson(a - e) && st.in_double_commutant(e, a)) ++count;
    }
    if (count != 1) {
      rhs = false;
      violator = a;
    }
  }
  note_bool(rep, "perfectly_j_clean", lhs);
  note_bool(rep, "unique_comm2_idempotent_everywhere", rhs);
  if (lhs == rhs) {
    rep.verdict = Verdict::Pass;
  } else {
    rep.verdict = Verdict::Fail;
    note(rep, "reason", "biconditional sides disagree");
    if (violator) {
      rep.counterexample = violator->to_string();
      rep.counterexample_index = violator->index();
    }
  }
}

void check_c4_7(CaseEnv& env, VerificationReport& rep) {
  const bool pjc = env.ring_has(CleanProperty::PerfectlyJClean);
  const bool rhs = env.ring_has(CleanProperty::Quasipolar) &&
                   env.ring_has(CleanProperty::StronglyJClean);
  note_bool(rep, "perfectly_j_clean", pjc);
  note_bool(rep, "quasipolar_and_strongly_j_clean", rhs);
  rep.verdict = pjc == rhs ? Verdict::Pass : Verdict::Fail;
  if (rep.verdict == Verdict::Fail) note(rep, "reason", "biconditional sides disagree");
}

void check_p4_8(CaseEnv& env, VerificationReport& rep) {
  const bool pjc = env.ring_has(CleanProperty::PerfectlyJClean);
  const bool jqp = env.ring_has(CleanProperty::JQuasipolar);
  note_bool(rep, "perfectly_j_clean", pjc);
  note_bool(rep, "j_quasipolar", jqp);
  rep.verdict = pjc == jqp ? Verdict::Pass : Verdict::Fail;
  if (rep.verdict == Verdict::Fail) note(rep, "reason", "ring-level biconditional fails");
}

void check_e4_9(CaseEnv& env, VerificationReport& rep) {
  const RingContext& ctx = *env.ring;
  auto& st = ctx.structure();
  const Element one = ctx.from_int(1);
  const Element two = ctx.from_int(2);

  if (st.jacobson().size() != 1 || !st.in_jacobson(ctx.zero())) {
    fail_with(rep, ctx.zero(), "J(Z3) != {0}");
    return;
  }
  const auto pjc1 = env.classifier.classify(one, CleanProperty::PerfectlyJClean);
  if (!pjc1.holds || pjc1.witness->idempotent != one) {
    fail_with(rep, one, "1 should be perfectly J-clean via e = 1");
    return;
  }
  if (env.classifier.classify(one, CleanProperty::JQuasipolar).holds) {
    fail_with(rep, one, "1 should not be J-quasipolar");
    return;
  }
  const auto jqp2 = env.classifier.classify(two, CleanProperty::JQuasipolar);
  if (!jqp2.holds || jqp2.witness->idempotent != one) {
    fail_with(rep, two, "2 should be J-quasipolar via e = 1");
    return;
  }
  if (env.classifier.classify(two, CleanProperty::PerfectlyJClean).holds) {
    fail_with(rep, two, "2 should not be perfectly J-clean");
    return;
  }
  rep.verdict = Verdict::Pass;
}

void check_l4_10(CaseEnv& env, VerificationReport& rep) {
  const RingContext& ctx = *env.ring;
  auto& st = ctx.structure();
  for (std::uint64_t i = 0; i < ctx.order(); ++i) {
    if ((i & 255) == 0) env.budget->check("L4.10");
    const Element a = ctx.from_index(i);
    const bool lhs = env.classifier.classify(a, CleanProperty::PerfectlyJClean).holds;
    const bool rhs = env.classifier.classify(a, CleanProperty::Quasipolar).holds &&
                     st.in_jacobson(a - a * a);
    if (lhs != rhs) {
      fail_with(rep, a, "per-element biconditional fails");
      return;
    }
  }
  rep.verdict = Verdict::Pass;
}

void check_t4_11(CaseEnv& env, VerificationReport& rep) {
  const RingContext& ctx = *env.ring;
  const RingContext& base = ctx.base_context();
  Classifier base_cls(base, env.opts.corruption);
  const std::uint32_t n = ctx.spec().dim();

  std::vector<char> diagonal_pjc(base.order());
  for (std::uint64_t i = 0; i < base.order(); ++i)
    diagonal_pjc[i] =
        base_cls.classify(base.from_index(i), CleanProperty::PerfectlyJClean).holds ? 1 : 0;

  for (std::uint64_t i = 0; i < ctx.order(); ++i) {
    if ((i & 63) == 0) env.budget->check("T4.11");
    const Element a = ctx.from_index(i);
    bool diag_ok = true;
    for (std::uint32_t d = 0; d < n && diag_ok; ++d)
      diag_ok = diagonal_pjc[ctx.entry(a, d, d).index()] != 0;
    const auto w = env.classifier.classify(a, CleanProperty::PerfectlyJClean);
    if (w.holds != diag_ok) {
      fail_with(rep, a, "diagonal criterion and classification disagree");
      return;
    }
    if (diag_ok) {
      const Element lifted = triangular_j_clean_lift(a);  // self-verifying
      if (lifted != w.witness->idempotent) {
        fail_with(rep, a, "lift differs from the first-witness idempotent");
        return;
      }
    }
  }
  rep.verdict = Verdict::Pass;
}

void check_c4_12(CaseEnv& env, VerificationReport& rep) {
  const RingContext& ctx = *env.ring;
  const bool lhs = env.ring_has(CleanProperty::StronglyJClean);
  note_bool(rep, "strongly_j_clean", lhs);
  int checked = 0;
  for (std::uint32_t n = 1; n <= 3; ++n) {
    const RingSpec tn = RingSpec::triangular(ctx.spec(), n);
    const std::uint64_t order = tn.order(kAbsoluteOrderCap);
    if (order > env.opts.derived_ring_limit) {
      note(rep, "T" + std::to_string(n), "skipped (order " + std::to_string(order) + ")");
      continue;
    }
    auto tctx = std::make_shared<const RingContext>(
        tn, std::max(env.opts.max_order, order), env.budget);
    Classifier tcls(*tctx, env.opts.corruption);
    const auto verdict = tcls.ring_property(CleanProperty::PerfectlyJClean);
    note_bool(rep, "T" + std::to_string(n) + "_perfectly_j_clean", verdict.holds);
    ++checked;
    if (verdict.holds != lhs) {
      rep.verdict = Verdict::Fail;
      note(rep, "reason", "T" + std::to_string(n) + "(R) disagrees with strong J-cleanness");
      rep.counterexample = verdict.counterexample;
      rep.counterexample_index = verdict.counterexample_index;
      return;
    }
  }
  if (checked < 2) {
    rep.verdict = Verdict::Skipped;
    rep.skip_reason = "derived triangular rings exceed the work limit";
    return;
  }
  rep.verdict = Verdict::Pass;
}

void check_t4_14(CaseEnv& env, VerificationReport& rep) {
  const RingContext& ctx = *env.ring;
  for (std::uint64_t i = 0; i < ctx.order(); ++i) {
    if ((i & 63) == 0) env.budget->check("T4.14");
    const Element a = ctx.from_index(i);
    const bool pjc = env.classifier.classify(a, CleanProperty::PerfectlyJClean).holds;
    const bool sjc = env.classifier.classify(a, CleanProperty::StronglyJClean).holds;
    const bool roots = char_root_criterion(a).satisfied();
    if (pjc != sjc || sjc != roots) {
      fail_with(rep, a,
                std::string("per-matrix equivalences disagree: pjc=") + (pjc ? "t" : "f") +
                    " sjc=" + (sjc ? "t" : "f") + " roots=" + (roots ? "t" : "f"));
      return;
    }
  }
  rep.verdict = Verdict::Pass;
}

void check_c4_15(CaseEnv& env, VerificationReport& rep) {
  const RingContext& ctx = *env.ring;
  auto& st = ctx.structure();
  const Element id = ctx.one();
  const bool lhs = env.ring_has(CleanProperty::PerfectlyClean);
  bool rhs = true;
  std::optional<Element> violator;
  for (std::uint64_t i = 0; i < ctx.order() && rhs; ++i) {
    if ((i & 255) == 0) env.budget->check("C4.15");
    const Element a = ctx.from_index(i);
    if (st.is_unit(a) || st.is_unit(id - a)) continue;
    if (!env.classifier.classify(a, CleanProperty::PerfectlyJClean).holds) {
      rhs = false;
      violator = a;
    }
  }
  note_bool(rep, "perfectly_clean", lhs);
  note_bool(rep, "trichotomy_with_perfectly_j_clean", rhs);
  if (lhs == rhs) {
    rep.verdict = Verdict::Pass;
  } else {
    rep.verdict = Verdict::Fail;
    note(rep, "reason", "biconditional sides disagree");
    if (violator) {
      rep.counterexample = violator->to_string();
      rep.counterexample_index = violator->index();
    }
  }
}

void dispatch(TheoremCaseId id, CaseEnv& env, VerificationReport& rep) {
  switch (id) {
    case TheoremCaseId::T2_1: return check_t2_1(env, rep);
    case TheoremCaseId::C2_2: return check_c2_2(env, rep);
    case TheoremCaseId::T2_3:
      return check_nil_clean_equivalence(env, rep, CleanProperty::PerfectlyClean);
    case TheoremCaseId::C2_4:
      return check_nil_clean_equivalence(env, rep, CleanProperty::Quasipolar);
    case TheoremCaseId::L2_5: return check_l2_5(env, rep);
    case TheoremCaseId::T2_6: return check_t2_6(env, rep);
    case TheoremCaseId::C2_7: return check_c2_7(env, rep);
    case TheoremCaseId::L3_1:
      return check_conjugation(env, rep, id, CleanProperty::PerfectlyClean);
    case TheoremCaseId::T3_2: return check_matrix_trichotomy(env, rep);
    case TheoremCaseId::C3_3: return check_matrix_trichotomy(env, rep);
    case TheoremCaseId::T3_4: return check_t3_4(env, rep);
    case TheoremCaseId::C3_6: return check_c3_6(env, rep);
    case TheoremCaseId::T4_1: return check_t4_1(env, rep);
    case TheoremCaseId::C4_2: return check_c4_2(env, rep);
    case TheoremCaseId::E4_3: return check_e4_3(env, rep);
    case TheoremCaseId::P4_4: return check_p4_4(env, rep);
    case TheoremCaseId::C4_5: return check_c4_5(env, rep);
    case TheoremCaseId::T4_6: return check_t4_6(env, rep);
    case TheoremCaseId::C4_7: return check_c4_7(env, rep);
    case TheoremCaseId::P4_8: return check_p4_8(env, rep);
    case TheoremCaseId::E4_9: return check_e4_9(env, rep);
    case TheoremCaseId::L4_10: return check_l4_10(env, rep);
    case TheoremCaseId::T4_11: return check_t4_11(env, rep);
    case TheoremCaseId::C4_12: return check_c4_12(env, rep);
    case TheoremCaseId::L4_13:
      return check_conjugation(env, rep, id, CleanProperty::PerfectlyJClean);
    case TheoremCaseId::T4_14: return check_t4_14(env, rep);
    case TheoremCaseId::C4_15: return check_c4_15(env, rep);
  }
}

VerificationReport evaluate_case(TheoremCaseId id, CaseEnv& env) {
  VerificationReport rep;
  rep.id = id;
  rep.ring = env.ring->spec().to_string();
  const auto start = std::chrono::steady_clock::now();
  try {
    if (!applicable(id, *env.ring)) {
      rep.verdict = Verdict::Skipped;
      rep.skip_reason = std::string("ring does not satisfy: ") + case_applicability(id);
    } else {
      dispatch(id, env, rep);
    }
  } catch (const BudgetError& e) {
    rep.verdict = Verdict::Skipped;
    rep.skip_reason = e.what();
  } catch (const Error& e) {
    rep.verdict = Verdict::Fail;
    note(rep, "error", e.what());
  }
  rep.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
          .count();
  return rep;
}

}  // namespace

std::span<const TheoremCaseId> all_cases() {
  static const std::array<TheoremCaseId, kTheoremCaseCount> ids = [] {
    std::array<TheoremCaseId, kTheoremCaseCount> a{};
    for (int i = 0; i < kTheoremCaseCount; ++i) a[i] = static_cast<TheoremCaseId>(i);
    return a;
  }();
  return ids;
}

const char* case_name(TheoremCaseId id) { return info_of(id).name; }
const char* case_applicability(TheoremCaseId id) { return info_of(id).applicability; }
const char* case_statement(TheoremCaseId id) { return info_of(id).statement; }

std::optional<TheoremCaseId> case_from_name(std::string_view name) {
  for (const auto& c : kCases)
    if (name == c.name) return c.id;
  return std::nullopt;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Skipped: return "skipped";
  }
  return "?";
}

std::vector<RingSpec> default_sweep_family() {
  std::vector<RingSpec> family;
  for (std::uint64_t n = 2; n <= 16; ++n) family.push_back(RingSpec::zmod(n));
  family.push_back(RingSpec::product(RingSpec::zmod(2), RingSpec::zmod(3)));
  family.push_back(RingSpec::matrix(RingSpec::zmod(2), 2));
  family.push_back(RingSpec::matrix(RingSpec::zmod(4), 2));
  family.push_back(RingSpec::triangular(RingSpec::zmod(2), 2));
  family.push_back(RingSpec::triangular(RingSpec::zmod(4), 2));
  family.push_back(RingSpec::triangular(RingSpec::zmod(2), 3));
  family.push_back(RingSpec::triangular(RingSpec::triangular(RingSpec::zmod(2), 2), 2));
  return family;
}

SweepResult run_sweep(std::span<const TheoremCaseId> cases, std::span<const RingSpec> rings,
                      const SweepOptions& opts) {
  auto budget = opts.budget_ms > 0 ? std::make_shared<const Budget>(opts.budget_ms)
                                   : Budget::unlimited();

  // One slot per (ring, case); rings run in parallel, cases within a ring
  // share the per-ring caches and run in order.
  std::vector<std::vector<VerificationReport>> per_ring(rings.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> budget_hit{false};

  auto worker = [&] {
    for (;;) {
      const std::size_t r = next.fetch_add(1);
      if (r >= rings.size()) return;
      auto& out = per_ring[r];
      out.reserve(cases.size());
      std::shared_ptr<const RingContext> ctx;
      std::string construction_error;
      try {
        budget->check("ring construction");
        ctx = std::make_shared<const RingContext>(rings[r], opts.max_order, budget);
      } catch (const Error& e) {
        construction_error = e.what();
      }
      if (!ctx) {
        for (TheoremCaseId id : cases) {
          VerificationReport rep;
          rep.id = id;
          rep.ring = rings[r].to_string();
          rep.verdict = Verdict::Skipped;
          rep.skip_reason = construction_error;
          out.push_back(std::move(rep));
        }
        if (construction_error.find("budget") != std::string::npos) budget_hit = true;
        continue;
      }
      CaseEnv env(ctx, budget, opts);
      for (TheoremCaseId id : cases) {
        out.push_back(evaluate_case(id, env));
        if (out.back().verdict == Verdict::Skipped &&
            out.back().skip_reason.find("budget") != std::string::npos)
          budget_hit = true;
      }
    }
  };

  const int threads = std::max(1, std::min<int>(opts.threads, static_cast<int>(rings.size())));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  // Merge in (case, ring) lexicographic order.
  SweepResult result;
  result.budget_exhausted = budget_hit.load();
  result.reports.reserve(rings.size() * cases.size());
  for (std::size_t c = 0; c < cases.size(); ++c)
    for (std::size_t r = 0; r < rings.size(); ++r)
      result.reports.push_back(std::move(per_ring[r][c]));
  return result;
}

VerificationReport run_case(TheoremCaseId id, const RingSpec& ring, const SweepOptions& opts) {
  const TheoremCaseId ids[] = {id};
  const RingSpec rings[] = {ring};
  SweepResult r = run_sweep(ids, rings, opts);
  return std::move(r.reports.front());
}

}  // namespace ringlab
