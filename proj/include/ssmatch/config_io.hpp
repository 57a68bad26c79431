#pragma once

#include <string>
#include <string_view>

#include "ssmatch/protocol.hpp"

namespace ssmatch {

/// One line per node: "id p m", p a node id or "-", m "t" or "f".
/// '#' starts a comment line. Out-of-neighborhood pointers are
/// normalized away; each node must appear exactly once.
Configuration read_configuration(std::string_view text, const Graph& g);
RawConfiguration read_raw_configuration(std::string_view text, std::size_t n);
std::string write_configuration(const Configuration& c);

}  // namespace ssmatch
