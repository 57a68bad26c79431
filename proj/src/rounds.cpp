#include "ssmatch/rounds.hpp"

#include "ssmatch/engine.hpp"

namespace ssmatch {

RoundTracker::RoundTracker(const std::vector<bool>& eligible_at_start) { open(eligible_at_start); }

void RoundTracker::open(const std::vector<bool>& eligible) {
  pending_ = eligible;
  pending_count_ = 0;
  for (bool b : pending_) pending_count_ += b ? 1 : 0;
  steps_in_round_ = 0;
}

std::size_t RoundTracker::record_step(std::span<const NodeId> moved, const std::vector<bool>& enabled_after) {
  const std::size_t index = current_;
  for (NodeId v : moved) {
    if (v.index() < pending_.size() && pending_[v.index()]) {
      pending_[v.index()] = false;
      --pending_count_;
    }
  }
  for (std::size_t k = 0; k < pending_.size(); ++k) {
    if (pending_[k] && !enabled_after[k]) {
      pending_[k] = false;
      --pending_count_;
    }
  }
  ++steps_in_round_;
  if (pending_count_ == 0) {
    ++current_;
    open(enabled_after);
  }
  return index;
}

namespace {

std::vector<bool> enabled_mask(const Configuration& c, const Graph& g, Variant v) {
  std::vector<bool> mask(g.node_count());
  for (std::size_t k = 0; k < mask.size(); ++k) {
    mask[k] = enabled_rule(c, g, NodeId(static_cast<std::uint32_t>(k)), v).has_value();
  }
  return mask;
}

}  // namespace

RoundCount count_rounds(const Trace& t) {
  if (t.steps.empty()) return {};
  const auto configs = replay(t);
  return count_rounds(t, configs);
}

RoundCount count_rounds(const Trace& t, std::span<const Configuration> configs) {
  RoundCount out;
  if (t.steps.empty()) return out;
  RoundTracker tracker(enabled_mask(configs.front(), *t.graph, t.variant));
  std::vector<NodeId> moved;
  for (std::size_t s = 0; s < t.steps.size(); ++s) {
    moved.clear();
    for (const Move& mv : t.steps[s].moves) moved.push_back(mv.node);
    out.round_index.push_back(tracker.record_step(moved, enabled_mask(configs[s + 1], *t.graph, t.variant)));
  }
  out.rounds = tracker.rounds();
  return out;
}

}  // namespace ssmatch
