#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "ringlab/element_set.hpp"
#include "ringlab/ring_context.hpp"

namespace ringlab {

/// A materialized commutant comm(a): sorted canonical indices plus the
/// concatenated leaf vectors, so scans need no per-element decoding.
struct CommSet {
  std::vector<std::uint64_t> indices;
  std::vector<std::uint32_t> flat;  // indices.size() * leaf_count residues
  std::size_t size() const noexcept { return indices.size(); }
};

/// The Peirce corner eRe of an idempotent e: a ring in its own right with
/// identity e, carried as a subset of the parent ring.
class CornerRing {
 public:
  CornerRing(const RingContext& parent, Element e, ElementSet carrier)
      : parent_(&parent), e_(std::move(e)), carrier_(std::move(carrier)) {}

  const RingContext& parent() const { return *parent_; }
  const Element& idempotent() const { return e_; }
  const ElementSet& carrier() const { return carrier_; }
  bool contains(const Element& x) const { return carrier_.contains(x.index()); }

  /// True iff some y in the corner satisfies xy = yx = e.
  bool is_unit_in_corner(const Element& x) const;

 private:
  const RingContext* parent_;
  Element e_;
  ElementSet carrier_;
};

/// Exact structural sets of a finite ring, each computed at most once.
/// Population is race-safe; queries afterwards are read-only.
class StructureCache {
 public:
  explicit StructureCache(const RingContext& ctx) : ctx_(ctx) {}

  const ElementSet& units();
  const ElementSet& idempotents();
  const ElementSet& nilpotents();
  const ElementSet& jacobson();
  const ElementSet& qnil();
  const ElementSet& center();

  bool is_unit(const Element& a);
  bool in_jacobson(const Element& a);
  bool in_qnil(const Element& a);
  std::optional<Element> inverse(const Element& a);
  /// Inverse canonical index per unit index; kNoInverse for non-units.
  const std::vector<std::uint64_t>& inverse_table();
  static constexpr std::uint64_t kNoInverse = ~std::uint64_t{0};

  /// Least n >= 1 with a^n = 0, or nullopt when a is not nilpotent.
  std::optional<std::uint32_t> nilpotency_index(const Element& a);

  // ---- commutants ----
  /// Memoized materialization of comm(a).
  std::shared_ptr<const CommSet> commutant_of(const Element& a);
  ElementSet commutant(const Element& a);
  /// comm^2(a) = elements commuting with everything in comm(a). The pruned
  /// path filters against a greedily found generating subset of comm(a)
  /// first, then fully verifies every survivor.
  ElementSet double_commutant(const Element& a, bool generator_pruning = false);
  bool in_double_commutant(const Element& x, const Element& a);

  CornerRing corner(const Element& e);

  // ---- ring-level predicates ----
  bool is_local();
  bool is_abelian();
  bool is_boolean_mod_j();
  /// For every a in J(R), b in 1+J(R): x -> ax - xb and x -> bx - xa are
  /// bijections of R (checked by image counting; on finite sets injective,
  /// surjective and bijective coincide).
  bool is_uniquely_weakly_bleached();

 private:
  void compute_units();
  void compute_idempotents();
  void compute_nilpotents();
  void compute_jacobson();
  void compute_qnil();
  void compute_center();

  const RingContext& ctx_;

  std::once_flag units_once_, idem_once_, nilp_once_, jac_once_, qnil_once_, center_once_;
  std::once_flag local_once_, abelian_once_, bmj_once_, uwb_once_;
  ElementSet units_, idem_, nilp_, jac_, qnil_, center_;
  std::vector<std::uint64_t> inv_;
  bool local_ = false, abelian_ = false, bmj_ = false, uwb_ = false;

  std::mutex comm_mu_;
  std::unordered_map<std::uint64_t, std::shared_ptr<const CommSet>> comm_memo_;
  std::size_t comm_memo_entries_ = 0;
  static constexpr std::size_t kCommMemoBudget = 4u << 20;  // total memoized indices
};

}  // namespace ringlab
