#pragma once

#include <span>
#include <vector>

#include "ssmatch/node_id.hpp"

namespace ssmatch {

struct Trace;
class Configuration;

/// Online round accounting.
///
/// A round starts at a configuration with eligible set E and closes at the
/// first step after which every member of E has either moved during the
/// round or been disabled in some configuration since the round began.
/// The closing step belongs to the round it closes; the next round starts
/// at the configuration that step produced.
class RoundTracker {
 public:
  RoundTracker() = default;
  explicit RoundTracker(const std::vector<bool>& eligible_at_start);

  /// Returns the round index the step belongs to.
  std::size_t record_step(std::span<const NodeId> moved, const std::vector<bool>& enabled_after);

  std::size_t current_round() const { return current_; }
  std::size_t steps_in_current_round() const { return steps_in_round_; }
  /// Closed rounds plus the open one if it contains at least one step.
  std::size_t rounds() const { return current_ + (steps_in_round_ > 0 ? 1 : 0); }

  /// Members of the current round's eligible set still owed a move.
  const std::vector<bool>& pending() const { return pending_; }
  std::size_t pending_count() const { return pending_count_; }

 private:
  void open(const std::vector<bool>& eligible);

  std::vector<bool> pending_;
  std::size_t pending_count_ = 0;
  std::size_t current_ = 0;
  std::size_t steps_in_round_ = 0;
};

struct RoundCount {
  std::size_t rounds = 0;
  std::vector<std::size_t> round_index;  // per step
};

/// Recomputes round boundaries by replaying the trace.
RoundCount count_rounds(const Trace& t);
/// Same, over configurations already produced by replay(t).
RoundCount count_rounds(const Trace& t, std::span<const Configuration> configs);

}  // namespace ssmatch
