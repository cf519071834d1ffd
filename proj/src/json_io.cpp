#include "ringlab/json_io.hpp"

namespace ringlab {

Json ring_info_json(const RingContext& ctx) {
  auto& st = ctx.structure();
  Json j;
  j["ring"] = ctx.spec().to_string();
  j["order"] = ctx.order();
  j["characteristic"] = ctx.characteristic();
  j["unit_count"] = st.units().size();
  j["idempotent_count"] = st.idempotents().size();
  j["jacobson"] = st.jacobson().indices();
  Json jl = Json::array();
  for (std::uint64_t i : st.jacobson().indices()) jl.push_back(ctx.from_index(i).to_string());
  j["jacobson_elements"] = std::move(jl);
  j["is_local"] = st.is_local();
  j["is_abelian"] = st.is_abelian();
  j["is_boolean_mod_j"] = st.is_boolean_mod_j();
  return j;
}

Json witness_json(const WitnessRecord& r) {
  Json j;
  j["property"] = property_name(r.property);
  j["ring"] = r.ring;
  j["element"] = r.element;
  j["element_index"] = r.element_index;
  j["idempotent"] = r.idempotent;
  j["idempotent_index"] = r.idempotent_index;
  j["complement"] = r.complement;
  j["complement_index"] = r.complement_index;
  j["sign"] = r.plus_sign ? "plus" : "minus";
  j["commutation_level"] = r.commutation_level;
  j["witness_count"] = r.witness_count;
  j["verification_hash"] = witness_hash(r);
  return j;
}

Json property_verdict_json(const PropertyVerdict& v, bool with_timings) {
  Json j;
  j["holds"] = v.holds;
  if (v.counterexample) {
    j["counterexample"] = *v.counterexample;
    j["counterexample_index"] = *v.counterexample_index;
  }
  if (v.witness_sample) j["witness"] = witness_json(*v.witness_sample);
  if (with_timings) j["elapsed_ms"] = v.elapsed_ms;
  return j;
}

Json property_report_json(const PropertyReport& report, bool with_timings) {
  Json j;
  j["ring"] = report.ring;
  j["order"] = report.order;
  Json props;
  for (CleanProperty p : all_properties())
    props[property_name(p)] = property_verdict_json(report[p], with_timings);
  j["properties"] = std::move(props);
  return j;
}

Json element_classification_json(
    const RingContext& ctx, const Element& a,
    const std::vector<std::pair<CleanProperty, WitnessResult>>& results) {
  Json j;
  j["ring"] = ctx.spec().to_string();
  j["element"] = a.to_string();
  j["element_index"] = a.index();
  Json props;
  for (const auto& [p, r] : results) {
    Json e;
    e["holds"] = r.holds;
    if (property_counts_witnesses(p)) e["witness_count"] = r.witness_count;
    if (r.witness) e["witness"] = witness_json(to_record(*r.witness));
    props[property_name(p)] = std::move(e);
  }
  j["properties"] = std::move(props);
  return j;
}

Json verification_report_json(const VerificationReport& r, bool with_timings) {
  Json j;
  j["case"] = case_name(r.id);
  j["ring"] = r.ring;
  j["verdict"] = verdict_name(r.verdict);
  if (r.verdict == Verdict::Skipped) j["skip_reason"] = r.skip_reason;
  if (r.counterexample) {
    j["counterexample"] = *r.counterexample;
    if (r.counterexample_index) j["counterexample_index"] = *r.counterexample_index;
  }
  if (!r.details.empty()) {
    Json d;
    for (const auto& [k, v] : r.details) d[k] = v;
    j["details"] = std::move(d);
  }
  if (with_timings) j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

Json sweep_json(const SweepResult& result, bool with_timings) {
  Json j;
  Json reports = Json::array();
  int pass = 0, fail = 0, skipped = 0;
  for (const auto& r : result.reports) {
    reports.push_back(verification_report_json(r, with_timings));
    switch (r.verdict) {
      case Verdict::Pass: ++pass; break;
      case Verdict::Fail: ++fail; break;
      case Verdict::Skipped: ++skipped; break;
    }
  }
  j["reports"] = std::move(reports);
  j["summary"] = Json{{"pass", pass}, {"fail", fail}, {"skipped", skipped}};
  j["budget_exhausted"] = result.budget_exhausted;
  return j;
}

Json decomposition_json(const SumOfUnitsDecomposition& d) {
  const RingContext& ctx = d.a.ring();
  Json j;
  j["ring"] = ctx.spec().to_string();
  j["matrix"] = d.a.to_string();
  j["u"] = d.u.to_string();
  j["v"] = d.v.to_string();
  j["u_inverse"] = d.u_inv.to_string();
  j["v_inverse"] = d.v_inv.to_string();
  j["verified"] = true;  // construction throws on any failed check
  return j;
}

Json sylvester_json(const SylvesterSolution& s) {
  const RingContext& ctx = s.a.ring();
  Json j;
  j["ring"] = ctx.spec().to_string();
  j["a"] = s.a.to_string();
  j["b"] = s.b.to_string();
  j["v"] = s.v.to_string();
  Json sols = Json::array();
  Json idx = Json::array();
  for (const Element& x : s.solutions) {
    sols.push_back(x.to_string());
    idx.push_back(x.index());
  }
  j["solutions"] = std::move(sols);
  j["solution_indices"] = std::move(idx);
  j["unique"] = s.solutions.size() == 1;
  return j;
}

Json lift_json(const RingContext& ctx, const Element& a, const Element& e) {
  Json j;
  j["ring"] = ctx.spec().to_string();
  j["matrix"] = a.to_string();
  j["idempotent"] = e.to_string();
  j["difference"] = (a - e).to_string();
  j["verified"] = true;
  return j;
}

Json roots_json(const RingContext& ctx, const Element& a, const RootCriterion& rc) {
  Json j;
  j["ring"] = ctx.spec().to_string();
  j["matrix"] = a.to_string();
  switch (rc.cls) {
    case RootClassification::InRadical: j["classification"] = "in-radical"; break;
    case RootClassification::ComplementInRadical:
      j["classification"] = "complement-in-radical";
      break;
    case RootClassification::RootsFound: j["classification"] = "roots-found"; break;
    case RootClassification::NoDecomposition: j["classification"] = "none"; break;
  }
  if (rc.radical_root) j["radical_root"] = rc.radical_root->to_string();
  if (rc.unit_root) j["unit_root"] = rc.unit_root->to_string();
  return j;
}

Json similar_json(const RingContext& ctx, const Element& a, const std::optional<Element>& u) {
  Json j;
  j["ring"] = ctx.spec().to_string();
  j["matrix"] = a.to_string();
  j["found"] = u.has_value();
  if (u) {
    j["conjugator"] = u->to_string();
    auto& st = ctx.structure();
    const Element ui = st.inverse(*u).value();
    j["diagonal"] = (*u * a * ui).to_string();
  }
  return j;
}

}  // namespace ringlab
