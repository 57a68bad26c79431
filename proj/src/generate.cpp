#include "ssmatch/generate.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "ssmatch/rng.hpp"

namespace ssmatch {

GraphKind parse_graph_kind(std::string_view name) {
  if (name == "path") return GraphKind::path;
  if (name == "cycle") return GraphKind::cycle;
  if (name == "complete") return GraphKind::complete;
  if (name == "random_gnm") return GraphKind::random_gnm;
  if (name == "star") return GraphKind::star;
  throw GraphError("unknown graph kind '" + std::string(name) + "'");
}

std::string_view to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::path: return "path";
    case GraphKind::cycle: return "cycle";
    case GraphKind::complete: return "complete";
    case GraphKind::random_gnm: return "random_gnm";
    case GraphKind::star: return "star";
  }
  return "?";
}

namespace {

NodeId node(std::size_t i) { return NodeId(static_cast<std::uint32_t>(i)); }

// Random spanning tree plus uniformly chosen extra edges.
std::vector<Edge> random_connected_edges(std::size_t n, std::size_t m, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  rng.shuffle(order);

  auto key = [n](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    return static_cast<std::uint64_t>(a) * n + b;
  };

  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> present;
  for (std::size_t k = 1; k < n; ++k) {
    const std::size_t a = order[k];
    const std::size_t b = order[rng.below(k)];
    edges.push_back(Edge{node(std::min(a, b)), node(std::max(a, b))});
    present.insert(key(a, b));
  }

  const std::size_t extra = m - (n - 1);
  const std::size_t max_edges = n * (n - 1) / 2;
  if (extra == 0) return edges;

  if (2 * m >= max_edges || max_edges <= 4096) {
    std::vector<Edge> pool;
    pool.reserve(max_edges - (n - 1));
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        if (!present.contains(key(a, b))) pool.push_back(Edge{node(a), node(b)});
      }
    }
    for (std::size_t k = 0; k < extra; ++k) {
      std::swap(pool[k], pool[k + rng.below(pool.size() - k)]);
      edges.push_back(pool[k]);
    }
  } else {
    while (edges.size() < m) {
      const std::size_t a = rng.below(n);
      const std::size_t b = rng.below(n);
      if (a == b || !present.insert(key(a, b)).second) continue;
      edges.push_back(Edge{node(std::min(a, b)), node(std::max(a, b))});
    }
  }
  return edges;
}

}  // namespace

Graph generate(GraphKind kind, std::size_t n, std::optional<std::size_t> m, std::uint64_t seed) {
  if (n == 0) throw GraphError("n must be at least 1");
  const std::size_t max_edges = n * (n - 1) / 2;
  std::vector<Edge> edges;

  switch (kind) {
    case GraphKind::path:
      for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back(Edge{node(i), node(i + 1)});
      break;
    case GraphKind::cycle:
      if (n < 3) throw GraphError("cycle needs n >= 3");
      for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back(Edge{node(i), node(i + 1)});
      edges.push_back(Edge{node(0), node(n - 1)});
      break;
    case GraphKind::complete:
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) edges.push_back(Edge{node(a), node(b)});
      }
      break;
    case GraphKind::star:
      for (std::size_t i = 1; i < n; ++i) edges.push_back(Edge{node(0), node(i)});
      break;
    case GraphKind::random_gnm:
      if (!m) throw GraphError("random_gnm requires m");
      if (*m > max_edges) {
        throw GraphError("m = " + std::to_string(*m) + " exceeds n(n-1)/2 = " + std::to_string(max_edges));
      }
      if (*m + 1 < n) throw GraphError("m < n-1: random_gnm cannot be connected");
      edges = random_connected_edges(n, *m, seed);
      break;
  }
  if (kind != GraphKind::random_gnm && m && *m != edges.size()) {
    throw GraphError(std::string(to_string(kind)) + " on " + std::to_string(n) + " nodes has " +
                     std::to_string(edges.size()) + " edges, not " + std::to_string(*m));
  }
  return Graph(n, edges);
}

}  // namespace ssmatch
