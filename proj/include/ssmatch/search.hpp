#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ssmatch/engine.hpp"

namespace ssmatch {

struct SearchOptions {
  bool branch_marriage = false;
  /// Maximum number of distinct configurations to visit.
  std::size_t budget = 1'000'000;
  Variant variant = Variant::standard;
};

struct SearchResult {
  bool complete = true;
  bool branch_marriage = false;
  std::size_t explored_states = 0;
  std::size_t initial_configurations = 0;
  std::size_t stable_leaves = 0;
  std::size_t worst_steps = 0;
  std::size_t bound = 0;
  bool livelock = false;
  bool all_leaves_maximal = true;
  std::string failure;

  /// The longest schedule found (or the schedule reaching a livelock).
  Configuration witness_initial;
  std::vector<Selection> witness_schedule;

  bool bound_exceeded() const { return worst_steps > bound; }
  bool ok() const { return complete && !livelock && !bound_exceeded() && all_leaves_maximal; }
};

/// Longest path to stability over every daemon choice (every nonempty
/// subset of enabled processes) and, with branch_marriage, every Marriage
/// suitor. With c0 unset, every well-formed configuration is a root.
/// Depth-first with memoization on the configuration; a revisited
/// configuration on the current path is a livelock.
SearchResult exhaustive_search(const Graph& g, const std::optional<Configuration>& c0, const SearchOptions& opts = {});

/// prod over i of 2 * (deg(i) + 1).
double configuration_count(const Graph& g);
void for_each_configuration(const Graph& g, const std::function<void(const Configuration&)>& fn);

/// The witness, re-executed as a trace.
Trace witness_trace(std::shared_ptr<const Graph> g, const SearchResult& r, Variant v = Variant::standard);

/// Every labeled connected simple graph on n nodes (n <= 5).
std::vector<Graph> connected_graphs(std::size_t n);

}  // namespace ssmatch
