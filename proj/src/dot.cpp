#include "ssmatch/dot.hpp"

#include <sstream>

namespace ssmatch {

std::string export_dot(const Configuration& c, const Graph& g) {
  std::ostringstream os;
  os << "digraph matching {\n";
  os << "  node [shape=circle];\n";
  for (std::size_t k = 0; k < g.node_count(); ++k) {
    const NodeId i(static_cast<std::uint32_t>(k));
    os << "  n" << k << " [label=\"" << k << "\\nid=" << g.ident(i) << "\\nm=" << (c[i].m ? 't' : 'f') << "\"];\n";
  }
  for (const Edge& e : g.edges()) {
    const bool matched = c[e.u].p == e.v && c[e.v].p == e.u;
    os << "  n" << e.u << " -> n" << e.v;
    if (matched) {
      os << " [dir=none, color=\"black:invis:black\", penwidth=2];\n";
    } else {
      os << " [dir=none, color=gray];\n";
    }
  }
  for (std::size_t k = 0; k < g.node_count(); ++k) {
    const NodeId i(static_cast<std::uint32_t>(k));
    const auto& p = c[i].p;
    if (!p || c[*p].p == i) continue;
    os << "  n" << k << " -> n" << p->value << " [color=blue, constraint=false];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace ssmatch
