#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ssmatch/node_id.hpp"

namespace ssmatch {

using Identifier = std::int64_t;

/// An undirected edge with u < v.
struct Edge {
  NodeId u;
  NodeId v;
  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Immutable simple undirected graph.
///
/// Every vertex carries an identifier used for the protocol's ordering
/// guards. Identifiers default to the vertex index. Neighbor lists are
/// sorted ascending by identifier (ties by index), so iteration order is
/// reproducible everywhere downstream.
class Graph {
 public:
  /// Throws GraphError on self-loops, duplicate edges or out-of-range ends.
  Graph(std::size_t n, std::span<const Edge> edges, std::vector<Identifier> identifiers = {});

  std::size_t node_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  /// Edges sorted lexicographically.
  const std::vector<Edge>& edges() const { return edges_; }

  /// N(i), sorted by identifier. Throws GraphError for unknown nodes.
  std::span<const NodeId> neighbors(NodeId i) const {
    check(i);
    return adjacency_[i.index()];
  }

  std::size_t degree(NodeId i) const { return neighbors(i).size(); }

  Identifier ident(NodeId i) const { return identifiers_[i.index()]; }
  const std::vector<Identifier>& identifiers() const { return identifiers_; }
  bool has_default_identifiers() const;

  bool contains(NodeId i) const { return i.index() < adjacency_.size(); }
  bool adjacent(NodeId a, NodeId b) const;

  /// Position of b in neighbors(a), or -1.
  int neighbor_slot(NodeId a, NodeId b) const;

  bool connected() const;
  /// Connected components, each sorted by node index, ordered by smallest member.
  std::vector<std::vector<NodeId>> components() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.edges_ == b.edges_ && a.identifiers_ == b.identifiers_ && a.node_count() == b.node_count();
  }

 private:
  void check(NodeId i) const {
    if (!contains(i)) throw GraphError("node not in graph: " + std::to_string(i.value));
  }

  std::vector<std::vector<NodeId>> adjacency_;
  std::vector<Edge> edges_;
  std::vector<Identifier> identifiers_;
};

/// Pairs of distinct nodes within hop distance 2 that share an identifier.
struct Distance2Verdict {
  std::vector<std::pair<NodeId, NodeId>> violations;
  bool ok() const { return violations.empty(); }
};

Distance2Verdict check_distance2_unique(const Graph& g);

/// Graph text format: first line n, then one "u v" line per edge (u < v);
/// lines starting with '#' are comments. A "#!ids a b c ..." line assigns
/// identifiers to vertices 0..n-1 in order.
Graph read_graph(std::string_view text);
std::string write_graph(const Graph& g);

/// 64-bit FNV-1a of the canonical graph text, as 16 hex digits.
std::string graph_hash(const Graph& g);

}  // namespace ssmatch
