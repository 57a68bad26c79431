#pragma once

#include <string>
#include <string_view>

#include "ssmatch/engine.hpp"

namespace ssmatch {

/// Line-delimited JSON: a header record (graph hash, policy, seed, n, m,
/// plus the graph text and initial configuration needed to audit the
/// trace standalone), one record per step, and a footer with the
/// counters and final configuration. Output is byte-identical for equal
/// traces.
std::string write_trace(const Trace& t);

/// Throws ParseError on malformed records and CorruptTrace when the
/// header's graph hash does not match its graph.
Trace read_trace(std::string_view text);

}  // namespace ssmatch
