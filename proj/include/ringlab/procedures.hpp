#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ringlab/cleanness.hpp"
#include "ringlab/ring_context.hpp"

namespace ringlab {

// All procedures here are executable constructions: each verifies its own
// postconditions before returning and throws PostconditionError on an
// internal failure, as opposed to PreconditionError for bad inputs.

/// From a perfectly-clean witness idempotent e of a (with u = a - e a
/// unit), the commuting pseudo-inverse x = u^-1 (1 - e): x lies in
/// comm^2(a), satisfies x = xax, and 1 - x = (1-a)s = t(1-a).
struct CommutingPseudoInverse {
  Element x, s, t;
};
CommutingPseudoInverse witness_to_pseudo_inverse(const Element& a, const Element& e);

/// Reverse direction: from x with x in comm^2(a), x = xax and
/// 1 - x in (1-a)R intersect R(1-a), recover the witness idempotent
/// e = 1 - ax with a - e invertible.
Element pseudo_inverse_to_witness(const Element& a, const Element& x);

/// Corner-unit test: eae invertible in eRe and (1-e)(1-a)(1-e) invertible
/// in (1-e)R(1-e). Requires e idempotent in comm^2(a).
bool corner_unit_check(const Element& a, const Element& e);

/// The integer polynomial f(t) = sum_{i=0..n} C(2n, i) t^(2n-i) (1-t)^i,
/// expanded with exact big-integer coefficients and also reduced modulo a
/// ring characteristic for evaluation.
struct IdempotentPolynomial {
  std::uint32_t n = 0;
  std::vector<std::string> coefficients;   // exact decimal, degree 0 .. 2n
  std::vector<std::uint64_t> reduced;      // modulo `characteristic`
  std::uint64_t characteristic = 1;
};
IdempotentPolynomial nil_clean_polynomial(std::uint32_t n, std::uint64_t characteristic);

/// Evaluate f at a (least n with (a - a^2)^n = 0): yields an idempotent in
/// comm^2(a) with a - f(a) nilpotent. Requires a - a^2 nilpotent.
Element nil_clean_idempotent(const Element& a);

/// An idempotent e in comm^2(a) with both a - e and a + e invertible,
/// obtained from a perfectly-clean witness of a^2.
Element two_sided_unit_witness(const Element& a);

/// 2A = U + V with U, V invertible, over a matrix ring. The inverses are
/// explicit and checked by multiplication.
struct SumOfUnitsDecomposition {
  Element a, u, v, u_inv, v_inv;
};

/// Reusable decomposer; memoizes the base-ring witnesses across calls.
class SumOfUnitsDecomposer {
 public:
  explicit SumOfUnitsDecomposer(const RingContext& matrix_ring);
  SumOfUnitsDecomposition decompose(const Element& a);

 private:
  const RingContext& ctx_;
  std::unordered_map<std::uint64_t, Element> witness_memo_;
};

SumOfUnitsDecomposition double_sum_of_units(const Element& a);

/// All x with ax - xb = v, by exhaustive scan.
struct SylvesterSolution {
  Element a, b, v;
  std::vector<Element> solutions;
};
SylvesterSolution sylvester_solve(const Element& a, const Element& b, const Element& v);

/// For T2(R) with R local: every a in J(R), b in 1+J(R), v admits exactly
/// one solution x of ax - xb = v.
bool sylvester_t2_criterion(const RingContext& t2_ring);

/// For A in Tn(R), R commutative with 2 in J(R) and every diagonal entry
/// perfectly J-clean: the induced idempotent E in comm^2(A) with
/// A - E in J(Tn(R)), built by the diagonal-witness induction.
Element triangular_j_clean_lift(const Element& a);

/// The characteristic-root trichotomy for A in M2(R), R commutative local.
enum class RootClassification {
  InRadical,            // A in J(M2(R))
  ComplementInRadical,  // I - A in J(M2(R))
  RootsFound,           // x^2 - tr(A) x + det(A) has roots in J and 1+J
  NoDecomposition,
};
struct RootCriterion {
  RootClassification cls = RootClassification::NoDecomposition;
  std::optional<Element> radical_root, unit_root;  // base-ring roots
  bool satisfied() const { return cls != RootClassification::NoDecomposition; }
};
RootCriterion char_root_criterion(const Element& a);

/// A conjugator u in GL(M) with u a u^-1 diagonal, or nullopt when none
/// exists (exhaustive over the unit group). Requires a finite local base.
std::optional<Element> diagonalizing_conjugator(const Element& a);

}  // namespace ringlab
