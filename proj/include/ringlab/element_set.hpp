#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace ringlab {

/// A subset of a finite ring, held both as a sorted canonical-index array
/// (reproducible iteration) and as a bitset keyed by canonical index
/// (O(1) membership).
class ElementSet {
 public:
  ElementSet() = default;

  ElementSet(std::uint64_t universe, std::vector<std::uint64_t> sorted_indices)
      : universe_(universe), indices_(std::move(sorted_indices)), bits_(universe, false) {
    for (std::uint64_t i : indices_) bits_[i] = true;
  }

  static ElementSet from_bits(std::uint64_t universe, const std::vector<bool>& bits) {
    std::vector<std::uint64_t> idx;
    for (std::uint64_t i = 0; i < universe; ++i)
      if (bits[i]) idx.push_back(i);
    return ElementSet(universe, std::move(idx));
  }

  bool contains(std::uint64_t idx) const { return idx < bits_.size() && bits_[idx]; }
  const std::vector<std::uint64_t>& indices() const noexcept { return indices_; }
  std::size_t size() const noexcept { return indices_.size(); }
  std::uint64_t universe() const noexcept { return universe_; }

  bool is_subset_of(const ElementSet& o) const {
    for (std::uint64_t i : indices_)
      if (!o.contains(i)) return false;
    return true;
  }

  bool operator==(const ElementSet& o) const { return indices_ == o.indices_; }
  bool operator!=(const ElementSet& o) const { return indices_ != o.indices_; }

 private:
  std::uint64_t universe_ = 0;
  std::vector<std::uint64_t> indices_;
  std::vector<bool> bits_;
};

}  // namespace ringlab
