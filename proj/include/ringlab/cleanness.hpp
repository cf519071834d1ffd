#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "ringlab/ring_context.hpp"
#include "ringlab/structure.hpp"

namespace ringlab {

/// The decomposition properties decided per element. Each takes an
/// idempotent e and constrains where a - e (or a + e) lands and how far
/// the commutation requirement reaches (none, comm(a), comm^2(a)).
enum class CleanProperty : int {
  StronglyClean = 0,        // e in comm(a),   a - e a unit
  PerfectlyClean,           // e in comm^2(a), a - e a unit
  Quasipolar,               // e in comm^2(a), a + e a unit, ae qnil
  StronglyJClean,           // e in comm(a),   a - e in J(R)
  PerfectlyJClean,          // e in comm^2(a), a - e in J(R)
  JQuasipolar,              // e in comm^2(a), a + e in J(R)
  StronglyNilClean,         // a = e + w, w nilpotent, ew = we
  UniquelyStronglyClean,    // exactly one e in comm(a) with a - e a unit
  UniquelyClean,            // exactly one idempotent e with a - e a unit
};

inline constexpr int kCleanPropertyCount = 9;

std::array<CleanProperty, kCleanPropertyCount> all_properties();
const char* property_name(CleanProperty p);  // kebab-case
std::optional<CleanProperty> property_from_name(std::string_view name);
/// "comm", "comm2" or "none".
const char* property_commutation_level(CleanProperty p);
/// True for the two uniqueness properties (witness_count is meaningful).
bool property_counts_witnesses(CleanProperty p);

/// An idempotent-plus-complement certificate for one property of one
/// element, re-verifiable from its fields alone (verify_witness).
struct CleanWitness {
  CleanProperty property{};
  Element element;
  Element idempotent;
  Element complement;      // a - e, or a + e when plus_sign is set
  bool plus_sign = false;  // complement = element + idempotent
  std::uint64_t witness_count = 0;  // admissible idempotents (uniqueness only)
};

/// Context-independent snapshot of a witness (safe to keep in reports).
struct WitnessRecord {
  CleanProperty property{};
  std::string ring;
  std::string element, idempotent, complement;
  std::uint64_t element_index = 0, idempotent_index = 0, complement_index = 0;
  bool plus_sign = false;
  std::string commutation_level;
  std::uint64_t witness_count = 0;
};

WitnessRecord to_record(const CleanWitness& w);

/// Stable content hash over the record fields (FNV-1a), hex encoded.
std::string witness_hash(const WitnessRecord& r);

/// Re-check every condition of the witness from its fields: idempotency,
/// the recorded commutation level, the sum identity and the membership of
/// the complement. Exhaustive and exact.
bool verify_witness(const CleanWitness& w);

struct WitnessResult {
  bool holds = false;
  std::optional<CleanWitness> witness;  // first admissible, if any exists
  std::uint64_t witness_count = 0;      // uniqueness properties only
};

struct PropertyVerdict {
  bool holds = false;
  std::optional<std::uint64_t> counterexample_index;
  std::optional<std::string> counterexample;
  std::optional<WitnessRecord> witness_sample;
  double elapsed_ms = 0.0;
};

struct PropertyReport {
  std::string ring;
  std::uint64_t order = 0;
  std::array<PropertyVerdict, kCleanPropertyCount> results;
  const PropertyVerdict& operator[](CleanProperty p) const {
    return results[static_cast<int>(p)];
  }
  bool all_hold() const {
    for (const auto& r : results)
      if (!r.holds) return false;
    return true;
  }
};

/// Element- and ring-level decision procedures. Witness searches iterate
/// the idempotents in canonical order, so the first witness is
/// reproducible; refutations are exhaustive over all idempotents.
class Classifier {
 public:
  /// Test-only fault injection for harness soundness checks: the corrupted
  /// classifier refutes perfectly-J-clean everywhere.
  enum class Corruption { None, DenyPerfectlyJClean };

  explicit Classifier(const RingContext& ctx, Corruption corruption = Corruption::None)
      : ctx_(ctx), corruption_(corruption) {}

  const RingContext& ring() const { return ctx_; }

  WitnessResult classify(const Element& a, CleanProperty p);
  /// Ring-level: holds iff every element has a witness; the first failing
  /// element in canonical order is the counterexample.
  PropertyVerdict ring_property(CleanProperty p);
  PropertyReport classify_ring();

 private:
  bool admissible(const Element& a, const Element& e, CleanProperty p, CleanWitness& out);

  const RingContext& ctx_;
  Corruption corruption_;
};

}  // namespace ringlab
