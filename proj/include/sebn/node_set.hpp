#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

#include "sebn/errors.hpp"

namespace sebn {

/// Set of node indices (0-based) packed into a bitmask. Exact search is
/// limited to 26 nodes, which is also the width used here.
class NodeSet {
 public:
  static constexpr int kMaxNodes = 26;

  constexpr NodeSet() = default;
  constexpr explicit NodeSet(std::uint32_t bits) : bits_(bits) {}

  static NodeSet full(int n) {
    if (n < 0 || n > kMaxNodes) throw ContractViolation("NodeSet::full: node count out of range");
    return NodeSet((1u << n) - 1u);
  }

  static NodeSet of(std::initializer_list<int> nodes) {
    NodeSet s;
    for (int v : nodes) s = s.with(v);
    return s;
  }

  static NodeSet of(const std::vector<int>& nodes) {
    NodeSet s;
    for (int v : nodes) s = s.with(v);
    return s;
  }

  constexpr bool contains(int v) const { return v >= 0 && v < kMaxNodes && ((bits_ >> v) & 1u); }

  NodeSet with(int v) const {
    check(v);
    return NodeSet(bits_ | (1u << v));
  }

  NodeSet without(int v) const {
    check(v);
    return NodeSet(bits_ & ~(1u << v));
  }

  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint32_t bits() const { return bits_; }

  constexpr bool is_subset_of(NodeSet other) const { return (bits_ & ~other.bits_) == 0; }

  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (std::uint32_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  constexpr auto operator<=>(const NodeSet&) const = default;

 private:
  static void check(int v) {
    if (v < 0 || v >= kMaxNodes) throw ContractViolation("NodeSet: node index out of range");
  }

  std::uint32_t bits_ = 0;
};

}  // namespace sebn

template <>
struct std::hash<sebn::NodeSet> {
  std::size_t operator()(const sebn::NodeSet& s) const noexcept { return std::hash<std::uint32_t>{}(s.bits()); }
};
