#include "ssmatch/matching.hpp"

#include <algorithm>
#include <string>

namespace ssmatch {

bool is_stable(const Configuration& c, const Graph& g, Variant v) {
  for (std::size_t k = 0; k < g.node_count(); ++k) {
    if (enabled_rule(c, g, NodeId(static_cast<std::uint32_t>(k)), v)) return false;
  }
  return true;
}

Matching extract_matching(const Configuration& c, const Graph& g) {
  Matching mt;
  for (const Edge& e : g.edges()) {
    if (c[e.u].p == e.v && c[e.v].p == e.u) mt.edges.push_back(e);
  }
  return mt;
}

void validate_matching(const Matching& mt, const Graph& g) {
  std::vector<bool> used(g.node_count(), false);
  for (const Edge& e : mt.edges) {
    if (!g.contains(e.u) || !g.contains(e.v) || !g.adjacent(e.u, e.v)) {
      throw InvalidMatching("edge " + std::to_string(e.u.value) + " " + std::to_string(e.v.value) + " not in graph");
    }
    for (NodeId x : {e.u, e.v}) {
      if (used[x.index()]) throw InvalidMatching("node " + std::to_string(x.value) + " is matched twice");
      used[x.index()] = true;
    }
  }
}

MaximalityVerdict check_maximal(const Matching& mt, const Graph& g) {
  validate_matching(mt, g);
  std::vector<bool> matched(g.node_count(), false);
  for (const Edge& e : mt.edges) matched[e.u.index()] = matched[e.v.index()] = true;
  for (const Edge& e : g.edges()) {
    if (!matched[e.u.index()] && !matched[e.v.index()]) return MaximalityVerdict{e};
  }
  return {};
}

}  // namespace ssmatch
