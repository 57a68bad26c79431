#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>

namespace ssmatch {

/// Handle of a process in a Graph: its vertex index 0..n-1.
///
/// The identifier used by the rule guards is a separate per-vertex value
/// (Graph::ident) so that instances whose identifiers are only unique
/// within distance 2 can be represented.
struct NodeId {
  std::uint32_t value = 0;

  constexpr NodeId() = default;
  constexpr explicit NodeId(std::uint32_t v) : value(v) {}

  constexpr std::size_t index() const { return value; }

  friend constexpr auto operator<=>(NodeId, NodeId) = default;
  friend std::ostream& operator<<(std::ostream& os, NodeId id) { return os << id.value; }
};

}  // namespace ssmatch

template <>
struct std::hash<ssmatch::NodeId> {
  std::size_t operator()(ssmatch::NodeId id) const noexcept { return std::hash<std::uint32_t>{}(id.value); }
};
