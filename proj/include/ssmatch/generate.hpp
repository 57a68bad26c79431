#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "ssmatch/graph.hpp"

namespace ssmatch {

enum class GraphKind { path, cycle, complete, random_gnm, star };

GraphKind parse_graph_kind(std::string_view name);
std::string_view to_string(GraphKind kind);

/// Connected graph of the requested family with identifiers 0..n-1.
/// Deterministic in (kind, n, m, seed). Throws GraphError on
/// inconsistent parameters.
Graph generate(GraphKind kind, std::size_t n, std::optional<std::size_t> m = std::nullopt,
               std::uint64_t seed = 0);

}  // namespace ssmatch
