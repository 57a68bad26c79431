#pragma once

#include <string>

#include "ssmatch/protocol.hpp"

namespace ssmatch {

/// Graphviz document: matched edges drawn with a doubled pen, other
/// edges gray, unreciprocated pointers as directed arcs, node labels
/// carrying id and m.
std::string export_dot(const Configuration& c, const Graph& g);

}  // namespace ssmatch
