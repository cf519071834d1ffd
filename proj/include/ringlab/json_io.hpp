#pragma once

#include <json.hpp>

#include "ringlab/cleanness.hpp"
#include "ringlab/harness.hpp"
#include "ringlab/procedures.hpp"

namespace ringlab {

using Json = nlohmann::ordered_json;

// Deterministic serializers: fixed key order, no volatile fields unless
// timings are requested. Sets serialize as arrays of canonical indices.

Json ring_info_json(const RingContext& ctx);
Json witness_json(const WitnessRecord& record);
Json property_verdict_json(const PropertyVerdict& verdict, bool with_timings);
Json property_report_json(const PropertyReport& report, bool with_timings);
Json element_classification_json(const RingContext& ctx, const Element& a,
                                 const std::vector<std::pair<CleanProperty, WitnessResult>>& rs);
Json verification_report_json(const VerificationReport& report, bool with_timings);
Json sweep_json(const SweepResult& result, bool with_timings);
Json decomposition_json(const SumOfUnitsDecomposition& d);
Json sylvester_json(const SylvesterSolution& s);
Json lift_json(const RingContext& ctx, const Element& a, const Element& e);
Json roots_json(const RingContext& ctx, const Element& a, const RootCriterion& rc);
Json similar_json(const RingContext& ctx, const Element& a, const std::optional<Element>& u);

}  // namespace ringlab
