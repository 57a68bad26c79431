#include "ssmatch/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <optional>
#include <queue>
#include <set>
#include <sstream>

namespace ssmatch {

Graph::Graph(std::size_t n, std::span<const Edge> edges, std::vector<Identifier> identifiers)
    : adjacency_(n), identifiers_(std::move(identifiers)) {
  if (identifiers_.empty()) {
    identifiers_.resize(n);
    for (std::size_t i = 0; i < n; ++i) identifiers_[i] = static_cast<Identifier>(i);
  }
  if (identifiers_.size() != n) throw GraphError("identifier count does not match node count");

  edges_.reserve(edges.size());
  for (Edge e : edges) {
    if (e.u == e.v) throw GraphError("self-loop at node " + std::to_string(e.u.value));
    if (e.u.index() >= n || e.v.index() >= n) throw GraphError("edge endpoint out of range");
    if (e.v < e.u) std::swap(e.u, e.v);
    edges_.push_back(e);
  }
  std::sort(edges_.begin(), edges_.end());
  if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end()) {
    throw GraphError("duplicate edge " + std::to_string(dup->u.value) + " " + std::to_string(dup->v.value));
  }
  for (const Edge& e : edges_) {
    adjacency_[e.u.index()].push_back(e.v);
    adjacency_[e.v.index()].push_back(e.u);
  }
  for (auto& row : adjacency_) {
    std::sort(row.begin(), row.end(), [this](NodeId a, NodeId b) {
      const Identifier ia = identifiers_[a.index()];
      const Identifier ib = identifiers_[b.index()];
      return ia != ib ? ia < ib : a < b;
    });
  }
}

bool Graph::has_default_identifiers() const {
  for (std::size_t i = 0; i < identifiers_.size(); ++i) {
    if (identifiers_[i] != static_cast<Identifier>(i)) return false;
  }
  return true;
}

bool Graph::adjacent(NodeId a, NodeId b) const { return neighbor_slot(a, b) >= 0; }

int Graph::neighbor_slot(NodeId a, NodeId b) const {
  const auto row = neighbors(a);
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (row[k] == b) return static_cast<int>(k);
  }
  return -1;
}

std::vector<std::vector<NodeId>> Graph::components() const {
  std::vector<std::vector<NodeId>> out;
  std::vector<bool> seen(node_count(), false);
  for (std::size_t s = 0; s < node_count(); ++s) {
    if (seen[s]) continue;
    std::vector<NodeId> comp;
    std::queue<NodeId> frontier;
    frontier.push(NodeId(static_cast<std::uint32_t>(s)));
    seen[s] = true;
    while (!frontier.empty()) {
      const NodeId u = frontier.front();
      frontier.pop();
      comp.push_back(u);
      for (NodeId v : adjacency_[u.index()]) {
        if (!seen[v.index()]) {
          seen[v.index()] = true;
          frontier.push(v);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

bool Graph::connected() const { return components().size() <= 1; }

Distance2Verdict check_distance2_unique(const Graph& g) {
  std::set<std::pair<NodeId, NodeId>> found;
  for (std::size_t s = 0; s < g.node_count(); ++s) {
    const NodeId u(static_cast<std::uint32_t>(s));
    std::set<NodeId> ball;
    for (NodeId v : g.neighbors(u)) {
      ball.insert(v);
      for (NodeId w : g.neighbors(v)) ball.insert(w);
    }
    ball.erase(u);
    for (NodeId v : ball) {
      if (u < v && g.ident(u) == g.ident(v)) found.emplace(u, v);
    }
  }
  return Distance2Verdict{{found.begin(), found.end()}};
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view tok, std::size_t line) {
  T value{};
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line, "expected a decimal integer, got '" + std::string(tok) + "'");
  }
  return value;
}

}  // namespace

Graph read_graph(std::string_view text) {
  std::optional<std::size_t> n;
  std::vector<Edge> edges;
  std::vector<Identifier> ids;
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const auto line = trim(raw);
    if (line.empty()) continue;
    if (line.starts_with("#!ids")) {
      if (!n) throw ParseError(line_no, "identifier line before node count");
      if (!ids.empty()) throw ParseError(line_no, "repeated identifier line");
      for (auto tok : split_ws(line.substr(5))) ids.push_back(parse_number<Identifier>(tok, line_no));
      if (ids.size() != *n) throw ParseError(line_no, "identifier line must list exactly n identifiers");
      continue;
    }
    if (line.front() == '#') continue;

    const auto toks = split_ws(line);
    if (!n) {
      if (toks.size() != 1) throw ParseError(line_no, "first line must be the node count");
      n = parse_number<std::size_t>(toks[0], line_no);
      if (*n == 0) throw ParseError(line_no, "graph must have at least one node");
      continue;
    }
    if (toks.size() != 2) throw ParseError(line_no, "edge line must be 'u v'");
    auto u = parse_number<std::uint32_t>(toks[0], line_no);
    auto v = parse_number<std::uint32_t>(toks[1], line_no);
    if (u == v) throw ParseError(line_no, "self-loop at node " + std::to_string(u));
    if (u >= *n || v >= *n) throw ParseError(line_no, "node id out of range");
    if (u > v) std::swap(u, v);
    if (!seen.emplace(u, v).second) {
      throw ParseError(line_no, "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    }
    edges.push_back(Edge{NodeId(u), NodeId(v)});
  }
  if (!n) throw ParseError(std::max<std::size_t>(line_no, 1), "missing node count");
  return Graph(*n, edges, std::move(ids));
}

std::string write_graph(const Graph& g) {
  std::ostringstream os;
  os << g.node_count() << '\n';
  if (!g.has_default_identifiers()) {
    os << "#!ids";
    for (Identifier id : g.identifiers()) os << ' ' << id;
    os << '\n';
  }
  for (const Edge& e : g.edges()) os << e.u.value << ' ' << e.v.value << '\n';
  return os.str();
}

std::string graph_hash(const Graph& g) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : write_graph(g)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace ssmatch
