#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "ssmatch/graph.hpp"
#include "ssmatch/protocol.hpp"

namespace ssmatch {

/// No process can execute a move.
bool is_stable(const Configuration& c, const Graph& g, Variant v = Variant::standard);

struct Matching {
  std::vector<Edge> edges;  // sorted, u < v
  friend bool operator==(const Matching&, const Matching&) = default;
};

class InvalidMatching : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Mutually pointing adjacent pairs.
Matching extract_matching(const Configuration& c, const Graph& g);

/// Throws InvalidMatching unless every edge is in g and no two edges
/// share an endpoint.
void validate_matching(const Matching& mt, const Graph& g);

struct MaximalityVerdict {
  std::optional<Edge> augmenting;  // an edge addable to the matching
  bool ok() const { return !augmenting.has_value(); }
};

/// Brute-force scan over E for an edge with both endpoints unmatched.
/// Independent of the protocol predicates.
MaximalityVerdict check_maximal(const Matching& mt, const Graph& g);

}  // namespace ssmatch
