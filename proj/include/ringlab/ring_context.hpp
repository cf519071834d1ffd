#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ringlab/budget.hpp"
#include "ringlab/element.hpp"
#include "ringlab/ring_spec.hpp"

namespace ringlab {

class StructureCache;

/// Reusable multiplication scratch. One per thread of hot loops; the
/// Element-level operators keep a thread-local one internally.
struct Scratch {
  std::vector<std::uint32_t> buf;
};

/// A finite ring ready for computation: fixed element layout, exact
/// structural arithmetic (no stored multiplication tables), canonical
/// enumeration, and a lazily populated structure cache.
/// Immutable after construction; safe to share across threads.
class RingContext {
 public:
  explicit RingContext(RingSpec spec, std::uint64_t cap = kDefaultOrderCap,
                       std::shared_ptr<const Budget> budget = Budget::unlimited());
  ~RingContext();
  RingContext(const RingContext&) = delete;
  RingContext& operator=(const RingContext&) = delete;

  const RingSpec& spec() const noexcept { return spec_; }
  std::uint64_t order() const noexcept { return order_; }
  std::uint64_t order_cap() const noexcept { return cap_; }
  const Budget& budget() const noexcept { return *budget_; }
  std::size_t leaf_count() const noexcept { return leaf_mod_.size(); }
  /// Additive order of 1.
  std::uint64_t characteristic() const noexcept { return characteristic_; }

  // ---- element construction ----
  Element zero() const;
  Element one() const;
  Element from_index(std::uint64_t idx) const;
  Element from_leaves(std::span<const std::uint32_t> leaves) const;
  /// c * 1 with c reduced exactly (negative values allowed).
  Element from_int(std::int64_t c) const;
  std::uint64_t index_of(std::span<const std::uint32_t> leaves) const;

  // ---- arithmetic ----
  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element neg(const Element& a) const;
  Element mul(const Element& a, const Element& b) const;
  Element scalar_mul(std::int64_t c, const Element& a) const;
  Element pow(const Element& a, std::uint64_t e) const;

  // Raw kernels over leaf spans. dst must not alias a or b for mul_raw.
  void add_raw(std::span<std::uint32_t> dst, std::span<const std::uint32_t> a,
               std::span<const std::uint32_t> b) const;
  void sub_raw(std::span<std::uint32_t> dst, std::span<const std::uint32_t> a,
               std::span<const std::uint32_t> b) const;
  void neg_raw(std::span<std::uint32_t> dst, std::span<const std::uint32_t> a) const;
  void mul_raw(std::span<std::uint32_t> dst, std::span<const std::uint32_t> a,
               std::span<const std::uint32_t> b, Scratch& scratch) const;
  void one_raw(std::span<std::uint32_t> dst) const;
  void decode_raw(std::uint64_t idx, std::span<std::uint32_t> dst) const;

  // ---- enumeration (canonical-index order) ----
  template <class F>
  void for_each(F&& f) const {  // f(uint64_t idx, span<const uint32_t>)
    std::vector<std::uint32_t> v(leaf_count(), 0);
    for (std::uint64_t idx = 0;;) {
      f(idx, std::span<const std::uint32_t>(v));
      if (++idx == order_) break;
      for (std::size_t i = 0;; ++i) {
        if (++v[i] < leaf_mod_[i]) break;
        v[i] = 0;
      }
    }
  }

  template <class F>
  bool for_each_until(F&& f) const {  // f returns false to stop; result: completed?
    std::vector<std::uint32_t> v(leaf_count(), 0);
    for (std::uint64_t idx = 0;;) {
      if (!f(idx, std::span<const std::uint32_t>(v))) return false;
      if (++idx == order_) break;
      for (std::size_t i = 0;; ++i) {
        if (++v[i] < leaf_mod_[i]) break;
        v[i] = 0;
      }
    }
    return true;
  }

  // ---- structural decomposition ----
  /// Matrix/Triangular rings: the base-ring context. Product: left/right.
  const RingContext& base_context() const;
  const RingContext& left_context() const;
  const RingContext& right_context() const;

  /// Entry (r, c) of a matrix or triangular element, as a base-ring
  /// element. Below-diagonal triangular entries read as zero.
  Element entry(const Element& a, std::uint32_t r, std::uint32_t c) const;
  /// Assemble from a full row-major k*k grid of base elements. For
  /// triangular rings the below-diagonal entries must be zero.
  Element assemble_matrix(const std::vector<Element>& row_major) const;
  std::pair<Element, Element> split_product(const Element& a) const;
  Element assemble_product(const Element& l, const Element& r) const;

  // ---- literals ----
  /// Parse an element literal: decimal residue (Zmod), "[[..],[..]]"
  /// row-major grid (matrix/triangular), "(a,b)" (product), or "#k"
  /// canonical index, usable at any nesting level.
  Element parse_element(std::string_view text) const;
  std::string format(const Element& a) const;

  /// Lazily created structural sets (units, J(R), qnil, ...).
  StructureCache& structure() const;

  /// True when `a` belongs to this ring (same context or equal spec).
  bool owns(const Element& a) const;
  /// Throws RingMismatchError unless owns(a).
  void require(const Element& a, const char* where) const;

  // Shape introspection (used by the element literal parser).
  std::uint32_t shape_root() const;
  RingSpec::Kind shape_kind(std::uint32_t id) const;
  std::uint32_t shape_mod(std::uint32_t id) const;
  std::uint32_t shape_dim(std::uint32_t id) const;
  std::uint32_t shape_child(std::uint32_t id) const;
  std::uint32_t shape_child2(std::uint32_t id) const;
  std::uint32_t shape_width(std::uint32_t id) const;
  /// Decode a canonical index of the subring at `id` into its leaf run.
  /// Returns false when idx is out of range.
  bool shape_decode(std::uint32_t id, std::uint64_t idx, std::uint32_t* dst) const;

 private:
  struct ShapeNode;
  std::uint32_t root() const;
  std::uint32_t build_shape(const RingSpec& s);
  std::uint32_t assign_scratch(std::uint32_t id, std::uint32_t base);
  void mul_node(std::uint32_t node, std::uint32_t* dst, const std::uint32_t* a,
                const std::uint32_t* b, std::uint32_t* scratch) const;
  void one_node(std::uint32_t node, std::uint32_t* dst) const;
  void format_node(std::uint32_t id, const std::uint32_t* src, std::string& out) const;

  RingSpec spec_;
  std::uint64_t cap_;
  std::uint64_t order_;
  std::shared_ptr<const Budget> budget_;
  std::vector<ShapeNode> nodes_;
  std::vector<std::uint32_t> leaf_mod_;
  std::vector<std::uint32_t> flat_mods_;  // per-node moduli runs
  std::vector<std::uint64_t> place_;
  std::uint32_t scratch_size_ = 0;
  std::vector<std::uint32_t> one_;
  std::uint64_t characteristic_ = 1;
  std::shared_ptr<const RingContext> base_ctx_;
  std::shared_ptr<const RingContext> left_ctx_;
  std::shared_ptr<const RingContext> right_ctx_;
  mutable std::unique_ptr<StructureCache> structure_;
  mutable std::once_flag structure_once_;
};

}  // namespace ringlab
