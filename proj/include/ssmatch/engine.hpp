#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ssmatch/graph.hpp"
#include "ssmatch/protocol.hpp"
#include "ssmatch/scheduler.hpp"

namespace ssmatch {

struct Move {
  NodeId node;
  Rule rule;
  /// Set when a Marriage move picked a suitor explicitly.
  std::optional<NodeId> marriage_choice;
  friend bool operator==(const Move&, const Move&) = default;
};

struct StepRecord {
  std::size_t index = 0;
  std::size_t round_index = 0;
  std::vector<Move> moves;  // ascending by node
  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

enum class Termination : std::uint8_t { stable, step_cap, schedule_end };
std::string_view to_string(Termination t);

struct Trace {
  std::shared_ptr<const Graph> graph;
  Variant variant = Variant::standard;
  std::string policy;
  std::uint64_t seed = 0;
  std::size_t max_steps = 0;
  Configuration initial;
  std::vector<StepRecord> steps;
  Configuration final_config;
  Termination termination = Termination::stable;

  bool stable() const { return termination == Termination::stable; }
};

struct StepOptions {
  Variant variant = Variant::standard;
  std::span<const std::pair<NodeId, NodeId>> marriage_choices = {};
};

struct StepResult {
  Configuration next;
  StepRecord record;
};

/// One composite-atomicity step: every chosen process evaluates its guard
/// and command against c and all writes land together. Throws
/// ContractViolation if chosen is empty, repeats a node or names a
/// disabled process.
StepResult apply_step(const Configuration& c, const Graph& g, std::span<const NodeId> chosen,
                      const StepOptions& opts = {});

/// 3n + 2m.
std::size_t step_bound(const Graph& g);
/// 2n + 1.
std::size_t round_bound(const Graph& g);

struct RunOptions {
  /// 0 selects step_bound(g) + 1.
  std::size_t max_steps = 0;
  Variant variant = Variant::standard;
};

Trace run(std::shared_ptr<const Graph> g, Configuration c0, Daemon& daemon, std::uint64_t seed = 0,
          const RunOptions& opts = {});
Trace run(std::shared_ptr<const Graph> g, Configuration c0, const PolicySpec& policy, std::uint64_t seed,
          const RunOptions& opts = {});

class CorruptTrace : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Configurations c_0..c_k visited by the trace, recomputed by applying
/// each step's commands to the previous configuration. Commands are applied
/// even when their guard does not hold (so forged traces can be audited);
/// throws CorruptTrace if a command has no defined effect, a node is
/// out of range, or the result differs from the recorded final
/// configuration.
std::vector<Configuration> replay(const Trace& t);

std::vector<Selection> schedule_of(const Trace& t);

struct TraceMetrics {
  std::size_t steps = 0;
  std::size_t moves = 0;
  std::size_t rounds = 0;
  std::array<std::size_t, 4> rule_moves{};
  std::vector<std::size_t> update_moves;       // per node
  std::vector<std::size_t> edge_move_steps;    // per edge, indexed like Graph::edges()
};

TraceMetrics compute_metrics(const Trace& t);
TraceMetrics compute_metrics(const Trace& t, std::span<const Configuration> configs);

/// Index into g.edges() of edge {a, b}, or -1.
long edge_index(const Graph& g, NodeId a, NodeId b);

/// The neighbor an i,j-move relates to: target of a Marriage/Seduction,
/// old pointer of an Abandonment; Update has none.
std::optional<NodeId> move_partner(const Configuration& before, const Configuration& after, const Move& mv);

}  // namespace ssmatch
