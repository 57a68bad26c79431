#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ssmatch/graph.hpp"
#include "ssmatch/protocol.hpp"
#include "ssmatch/rounds.hpp"

namespace ssmatch {

enum class PolicyKind : std::uint8_t {
  sequential_random,
  sequential_adversarial_heuristic,
  synchronous,
  distributed_random,
  distributed_adversarial_heuristic,
  distributed_fair,
};

/// Named adversarial strategies.
///
///   min-id      sequential: lowest identifier; distributed: every enabled
///               process whose identifier is below all enabled neighbors'.
///   max-id      mirror image of min-id (alias: fig1).
///   max-degree  sequential: highest degree; distributed: all enabled
///               processes of maximum degree.
///   starve-one  never schedule the target (default node 0) while any other
///               process is enabled; others as min-id (sequential) or all
///               (distributed).
enum class Strategy : std::uint8_t { min_id, max_id, max_degree, starve_one };

struct PolicySpec {
  PolicyKind kind = PolicyKind::sequential_random;
  Strategy strategy = Strategy::min_id;
  NodeId starve_target{0};
  /// distributed_fair: steps into a round after which every pending
  /// process is forced into the selection.
  std::size_t patience = 2;

  friend bool operator==(const PolicySpec&, const PolicySpec&) = default;
};

/// "kind[:param]" with param = strategy[=node] for adversarial kinds and
/// patience=K for distributed_fair. Throws std::invalid_argument.
PolicySpec parse_policy(std::string_view text);
std::string to_string(const PolicySpec& p);
std::string_view to_string(PolicyKind k);

bool is_sequential(PolicyKind k);
/// Policies under which the round bounds are claimed (fair or synchronous).
bool is_fair(PolicyKind k);

std::vector<PolicySpec> all_policies();
std::string policy_help();

struct SchedulingContext {
  const Graph& graph;
  const Configuration& config;
  std::span<const NodeId> enabled;  // ascending by index, nonempty
  std::size_t step;
  const RoundTracker& rounds;
};

struct Selection {
  std::vector<NodeId> nodes;
  /// Explicit Marriage suitor choices (node, suitor); default is the
  /// largest-identifier suitor.
  std::vector<std::pair<NodeId, NodeId>> marriage_choices;
};

class Daemon {
 public:
  virtual ~Daemon() = default;
  /// Nonempty subset of ctx.enabled. An empty selection ends the run
  /// (used only by schedule replay).
  virtual Selection select(const SchedulingContext& ctx) = 0;
  virtual std::string name() const = 0;
};

std::unique_ptr<Daemon> make_daemon(const PolicySpec& spec, std::uint64_t seed);

/// Replays recorded selections one per step.
class ScheduleDaemon final : public Daemon {
 public:
  explicit ScheduleDaemon(std::vector<Selection> schedule, std::string label = "replay")
      : schedule_(std::move(schedule)), label_(std::move(label)) {}
  Selection select(const SchedulingContext& ctx) override;
  std::string name() const override { return label_; }

 private:
  std::vector<Selection> schedule_;
  std::string label_;
};

}  // namespace ssmatch
