#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ringlab/cleanness.hpp"
#include "ringlab/ring_spec.hpp"

namespace ringlab {

/// One re-verifiable statement, identified by its catalogue label. Each
/// case carries an applicability predicate (a case never runs on a ring
/// failing it; skipped is not passed) and a check procedure that evaluates
/// both sides of the stated equivalence or implication.
enum class TheoremCaseId : int {
  T2_1 = 0, C2_2, T2_3, C2_4, L2_5, T2_6, C2_7,
  L3_1, T3_2, C3_3, T3_4, C3_6,
  T4_1, C4_2, E4_3, P4_4, C4_5, T4_6, C4_7, P4_8, E4_9,
  L4_10, T4_11, C4_12, L4_13, T4_14, C4_15,
};

inline constexpr int kTheoremCaseCount = 27;

std::span<const TheoremCaseId> all_cases();
const char* case_name(TheoremCaseId id);                       // "T2.1", "E4.9", ...
std::optional<TheoremCaseId> case_from_name(std::string_view); // accepts "T2.1"
/// Human-readable applicability predicate, quoted verbatim in skip reasons.
const char* case_applicability(TheoremCaseId id);
/// One-line statement of what the case checks.
const char* case_statement(TheoremCaseId id);

enum class Verdict { Pass, Fail, Skipped };
const char* verdict_name(Verdict v);

struct VerificationReport {
  TheoremCaseId id{};
  std::string ring;
  Verdict verdict = Verdict::Skipped;
  std::string skip_reason;  // populated on Skipped
  std::optional<std::string> counterexample;
  std::optional<std::uint64_t> counterexample_index;
  /// Ordered key/value facts about the evaluation (side booleans, modes,
  /// counts); serialized into the JSON report.
  std::vector<std::pair<std::string, std::string>> details;
  double elapsed_ms = 0.0;
};

struct SweepOptions {
  std::uint64_t max_order = kDefaultOrderCap;
  std::uint64_t seed = 12345;
  int threads = 1;
  std::uint64_t budget_ms = 0;  // 0 = unlimited
  /// Fault injection for soundness tests; see Classifier::Corruption.
  Classifier::Corruption corruption = Classifier::Corruption::None;
  /// Seeded (unit, element) pairs per ring for the conjugation cases.
  std::uint64_t conjugation_samples = 100;
  /// Matrix rings at most this large are decomposed exhaustively; larger
  /// ones get seeded samples.
  std::uint64_t matrix_exhaustive_limit = 8192;
  /// Largest internally built T_n(R) / M_2(R) order for derived checks.
  std::uint64_t derived_ring_limit = 4096;
};

struct SweepResult {
  std::vector<VerificationReport> reports;  // (case, ring) lexicographic
  bool budget_exhausted = false;

  bool any_fail() const {
    for (const auto& r : reports)
      if (r.verdict == Verdict::Fail) return true;
    return false;
  }
};

/// The default verification family: Z2..Z16, Z2xZ3, M2(Z2), M2(Z4),
/// T2(Z2), T2(Z4), T3(Z2), T2(T2(Z2)).
std::vector<RingSpec> default_sweep_family();

SweepResult run_sweep(std::span<const TheoremCaseId> cases, std::span<const RingSpec> rings,
                      const SweepOptions& opts = {});
VerificationReport run_case(TheoremCaseId id, const RingSpec& ring,
                            const SweepOptions& opts = {});

}  // namespace ringlab
