#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ringlab {

class RingContext;

/// One ring element, stored as the flat vector of its Zmod leaf residues
/// in recursive layout order. Immutable value; arithmetic goes through the
/// owning RingContext (or the operators below, which dispatch to it).
/// Elements never outlive their context.
class Element {
 public:
  Element() = default;

  bool valid() const noexcept { return ctx_ != nullptr; }
  const RingContext& ring() const { return *ctx_; }

  /// Canonical index: mixed-radix over the nested structure, least
  /// significant component first. A bijection [0, order) <-> elements.
  std::uint64_t index() const;

  std::span<const std::uint32_t> leaves() const noexcept { return v_; }

  Element operator+(const Element& o) const;
  Element operator-(const Element& o) const;
  Element operator-() const;
  Element operator*(const Element& o) const;

  bool operator==(const Element& o) const { return v_ == o.v_; }
  bool operator!=(const Element& o) const { return v_ != o.v_; }

  bool is_zero() const;
  bool is_one() const;

  /// Literal form (decimal residue / row-major grid / pair).
  std::string to_string() const;

 private:
  friend class RingContext;
  Element(const RingContext* ctx, std::vector<std::uint32_t> v)
      : ctx_(ctx), v_(std::move(v)) {}

  const RingContext* ctx_ = nullptr;
  std::vector<std::uint32_t> v_;
};

}  // namespace ringlab
