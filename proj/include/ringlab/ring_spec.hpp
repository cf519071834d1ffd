#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "ringlab/errors.hpp"

namespace ringlab {

/// Default cap on the order of a constructed ring. Construction past the
/// cap is an error, never a truncation.
inline constexpr std::uint64_t kDefaultOrderCap = std::uint64_t{1} << 16;

/// Hard upper bound on any cap; keeps canonical indices inside uint64.
inline constexpr std::uint64_t kAbsoluteOrderCap = std::uint64_t{1} << 62;

/// Compositional description of a finite ring:
///   Zmod(n)            integers modulo n (n >= 1; Z1 is the zero ring)
///   Matrix(S, k)       k x k matrices over S
///   Triangular(S, k)   upper triangular k x k matrices over S
///   Product(A, B)      direct product A x B
///
/// Immutable value type; cheap to copy (shared AST nodes).
class RingSpec {
 public:
  enum class Kind { Zmod, Matrix, Triangular, Product };

  static RingSpec zmod(std::uint64_t n);
  static RingSpec matrix(RingSpec base, std::uint32_t k);
  static RingSpec triangular(RingSpec base, std::uint32_t k);
  static RingSpec product(RingSpec left, RingSpec right);

  Kind kind() const noexcept;
  /// Zmod only.
  std::uint64_t modulus() const;
  /// Matrix / Triangular only.
  std::uint32_t dim() const;
  RingSpec base() const;
  /// Product only.
  RingSpec left() const;
  RingSpec right() const;

  /// Number of elements. Throws OrderCapError when it exceeds `cap`.
  std::uint64_t order(std::uint64_t cap = kDefaultOrderCap) const;

  /// Canonical textual form, parseable by parse_ring_spec.
  std::string to_string() const;

  /// Structural equality.
  bool operator==(const RingSpec& other) const;
  bool operator!=(const RingSpec& other) const { return !(*this == other); }

  bool is_commutative() const;

 private:
  struct Node;
  explicit RingSpec(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Parse the ring-spec grammar (whitespace-insensitive ASCII):
///   spec := term ( "x" term )*        -- left-associative product
///   term := "Z" nat | ("M"|"T") nat "(" spec ")"
/// Throws ParseError on malformed input and OrderCapError when the
/// described ring would exceed `cap`.
RingSpec parse_ring_spec(std::string_view text, std::uint64_t cap = kDefaultOrderCap);

}  // namespace ringlab
