#include "ringlab/cleanness.hpp"

#include <chrono>
#include <cstdio>

namespace ringlab {

std::array<CleanProperty, kCleanPropertyCount> all_properties() {
  return {CleanProperty::StronglyClean,       CleanProperty::PerfectlyClean,
          CleanProperty::Quasipolar,          CleanProperty::StronglyJClean,
          CleanProperty::PerfectlyJClean,     CleanProperty::JQuasipolar,
          CleanProperty::StronglyNilClean,    CleanProperty::UniquelyStronglyClean,
          CleanProperty::UniquelyClean};
}

const char* property_name(CleanProperty p) {
  switch (p) {
    case CleanProperty::StronglyClean: return "strongly-clean";
    case CleanProperty::PerfectlyClean: return "perfectly-clean";
    case CleanProperty::Quasipolar: return "quasipolar";
    case CleanProperty::StronglyJClean: return "strongly-j-clean";
    case CleanProperty::PerfectlyJClean: return "perfectly-j-clean";
    case CleanProperty::JQuasipolar: return "j-quasipolar";
    case CleanProperty::StronglyNilClean: return "strongly-nil-clean";
    case CleanProperty::UniquelyStronglyClean: return "uniquely-strongly-clean";
    case CleanProperty::UniquelyClean: return "uniquely-clean";
  }
  return "?";
}

std::optional<CleanProperty> property_from_name(std::string_view name) {
  for (CleanProperty p : all_properties())
    if (name == property_name(p)) return p;
  return std::nullopt;
}

const char* property_commutation_level(CleanProperty p) {
  switch (p) {
    case CleanProperty::PerfectlyClean:
    case CleanProperty::Quasipolar:
    case CleanProperty::PerfectlyJClean:
    case CleanProperty::JQuasipolar:
      return "comm2";
    case CleanProperty::StronglyClean:
    case CleanProperty::StronglyJClean:
    case CleanProperty::StronglyNilClean:
    case CleanProperty::UniquelyStronglyClean:
      return "comm";
    case CleanProperty::UniquelyClean:
      return "none";
  }
  return "?";
}

bool property_counts_witnesses(CleanProperty p) {
  return p == CleanProperty::UniquelyStronglyClean || p == CleanProperty::UniquelyClean;
}

WitnessRecord to_record(const CleanWitness& w) {
  WitnessRecord r;
  r.property = w.property;
  r.ring = w.element.ring().spec().to_string();
  r.element = w.element.to_string();
  r.idempotent = w.idempotent.to_string();
  r.complement = w.complement.to_string();
  r.element_index = w.element.index();
  r.idempotent_index = w.idempotent.index();
  r.complement_index = w.complement.index();
  r.plus_sign = w.plus_sign;
  r.commutation_level = property_commutation_level(w.property);
  r.witness_count = w.witness_count;
  return r;
}

std::string witness_hash(const WitnessRecord& r) {
  std::string payload = std::string(property_name(r.property)) + "|" + r.ring + "|" +
                        r.element + "|" + r.idempotent + "|" + r.complement + "|" +
                        (r.plus_sign ? "+" : "-") + "|" + r.commutation_level;
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : payload) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

bool verify_witness(const CleanWitness& w) {
  if (!w.element.valid() || !w.idempotent.valid() || !w.complement.valid()) return false;
  const RingContext& ctx = w.element.ring();
  if (!ctx.owns(w.idempotent) || !ctx.owns(w.complement)) return false;
  auto& st = ctx.structure();
  const Element& a = w.element;
  const Element& e = w.idempotent;
  const Element& c = w.complement;

  if (e * e != e) return false;
  if (w.plus_sign ? (a + e != c) : (a - e != c)) return false;

  switch (w.property) {
    case CleanProperty::StronglyClean:
    case CleanProperty::UniquelyStronglyClean:
      return !w.plus_sign && e * a == a * e && st.is_unit(c);
    case CleanProperty::UniquelyClean:
      return !w.plus_sign && st.is_unit(c);
    case CleanProperty::PerfectlyClean:
      return !w.plus_sign && st.is_unit(c) && st.in_double_commutant(e, a);
    case CleanProperty::Quasipolar:
      return w.plus_sign && st.is_unit(c) && st.in_qnil(a * e) &&
             st.in_double_commutant(e, a);
    case CleanProperty::StronglyJClean:
      return !w.plus_sign && e * a == a * e && st.in_jacobson(c);
    case CleanProperty::PerfectlyJClean:
      return !w.plus_sign && st.in_jacobson(c) && st.in_double_commutant(e, a);
    case CleanProperty::JQuasipolar:
      return w.plus_sign && st.in_jacobson(c) && st.in_double_commutant(e, a);
    case CleanProperty::StronglyNilClean:
      return !w.plus_sign && st.nilpotents().contains(c.index()) && e * c == c * e;
  }
  return false;
}

bool Classifier::admissible(const Element& a, const Element& e, CleanProperty p,
                            CleanWitness& out) {
  auto& st = ctx_.structure();
  // Cheap membership filters run before the comm^2 scan.
  switch (p) {
    case CleanProperty::StronglyClean:
    case CleanProperty::UniquelyStronglyClean: {
      Element u = a - e;
      if (!st.is_unit(u) || e * a != a * e) return false;
      out = {p, a, e, std::move(u), false, 0};
      return true;
    }
    case CleanProperty::UniquelyClean: {
      Element u = a - e;
      if (!st.is_unit(u)) return false;
      out = {p, a, e, std::move(u), false, 0};
      return true;
    }
    case CleanProperty::PerfectlyClean: {
      Element u = a - e;
      if (!st.is_unit(u) || e * a != a * e || !st.in_double_commutant(e, a)) return false;
      out = {p, a, e, std::move(u), false, 0};
      return true;
    }
    case CleanProperty::Quasipolar: {
      Element v = a + e;
      if (!st.is_unit(v) || !st.in_qnil(a * e) || e * a != a * e ||
          !st.in_double_commutant(e, a))
        return false;
      out = {p, a, e, std::move(v), true, 0};
      return true;
    }
    case CleanProperty::StronglyJClean: {
      Element w = a - e;
      if (!st.in_jacobson(w) || e * a != a * e) return false;
      out = {p, a, e, std::move(w), false, 0};
      return true;
    }
    case CleanProperty::PerfectlyJClean: {
      Element w = a - e;
      if (!st.in_jacobson(w) || e * a != a * e || !st.in_double_commutant(e, a)) return false;
      out = {p, a, e, std::move(w), false, 0};
      return true;
    }
    case CleanProperty::JQuasipolar: {
      Element w = a + e;
      if (!st.in_jacobson(w) || e * a != a * e || !st.in_double_commutant(e, a)) return false;
      out = {p, a, e, std::move(w), true, 0};
      return true;
    }
    case CleanProperty::StronglyNilClean: {
      Element w = a - e;
      if (!st.nilpotents().contains(w.index()) || e * w != w * e) return false;
      out = {p, a, e, std::move(w), false, 0};
      return true;
    }
  }
  return false;
}

WitnessResult Classifier::classify(const Element& a, CleanProperty p) {
  ctx_.require(a, "classify");
  WitnessResult result;
  if (corruption_ == Corruption::DenyPerfectlyJClean && p == CleanProperty::PerfectlyJClean)
    return result;
  auto& st = ctx_.structure();
  const bool counting = property_counts_witnesses(p);
  CleanWitness w;
  for (std::uint64_t ei : st.idempotents().indices()) {
    const Element e = ctx_.from_index(ei);
    if (!admissible(a, e, p, w)) continue;
    if (!result.witness) result.witness = w;
    ++result.witness_count;
    if (!counting) break;  // first witness in canonical order
  }
  result.holds = counting ? result.witness_count == 1 : result.witness.has_value();
  if (result.witness) result.witness->witness_count = result.witness_count;
  if (!counting) result.witness_count = 0;
  return result;
}

PropertyVerdict Classifier::ring_property(CleanProperty p) {
  const auto start = std::chrono::steady_clock::now();
  PropertyVerdict verdict;
  verdict.holds = true;
  for (std::uint64_t i = 0; i < ctx_.order(); ++i) {
    if ((i & 255) == 0) ctx_.budget().check("ring classification");
    const Element a = ctx_.from_index(i);
    WitnessResult r = classify(a, p);
    if (i == 0 && r.witness) verdict.witness_sample = to_record(*r.witness);
    if (!r.holds) {
      verdict.holds = false;
      verdict.counterexample_index = i;
      verdict.counterexample = a.to_string();
      verdict.witness_sample.reset();
      break;
    }
  }
  verdict.elapsed_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  return verdict;
}

PropertyReport Classifier::classify_ring() {
  PropertyReport report;
  report.ring = ctx_.spec().to_string();
  report.order = ctx_.order();
  for (CleanProperty p : all_properties())
    report.results[static_cast<int>(p)] = ring_property(p);
  return report;
}

}  // namespace ringlab
