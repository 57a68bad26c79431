#include "ssmatch/engine.hpp"

#include <algorithm>

namespace ssmatch {

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::stable: return "stable";
    case Termination::step_cap: return "step_cap";
    case Termination::schedule_end: return "schedule_end";
  }
  return "?";
}

std::size_t step_bound(const Graph& g) { return 3 * g.node_count() + 2 * g.edge_count(); }
std::size_t round_bound(const Graph& g) { return 2 * g.node_count() + 1; }

StepResult apply_step(const Configuration& c, const Graph& g, std::span<const NodeId> chosen,
                      const StepOptions& opts) {
  if (chosen.empty()) throw ContractViolation("step with no chosen process");
  std::vector<NodeId> nodes(chosen.begin(), chosen.end());
  std::sort(nodes.begin(), nodes.end());
  if (std::adjacent_find(nodes.begin(), nodes.end()) != nodes.end()) {
    throw ContractViolation("process chosen twice in one step");
  }
  for (const auto& [who, suitor] : opts.marriage_choices) {
    if (!std::binary_search(nodes.begin(), nodes.end(), who)) {
      throw ContractViolation("marriage choice for unchosen node " + std::to_string(who.value));
    }
    (void)suitor;
  }

  StepResult out{c, {}};
  for (NodeId i : nodes) {
    if (!g.contains(i)) throw ContractViolation("node not in graph: " + std::to_string(i.value));
    const auto rule = enabled_rule(c, g, i, opts.variant);
    if (!rule) throw ContractViolation("node " + std::to_string(i.value) + " is not enabled");
    std::optional<NodeId> choice;
    for (const auto& [who, suitor] : opts.marriage_choices) {
      if (who == i) choice = suitor;
    }
    out.next[i] = command_target(c, g, i, *rule, choice, opts.variant);
    out.record.moves.push_back(Move{i, *rule, choice});
  }
  return out;
}

Trace run(std::shared_ptr<const Graph> g, Configuration c0, Daemon& daemon, std::uint64_t seed,
          const RunOptions& opts) {
  if (!well_formed(c0, *g)) throw ContractViolation("initial configuration is not well-formed");
  const Graph& graph = *g;
  const std::size_t n = graph.node_count();

  Trace t;
  t.graph = g;
  t.variant = opts.variant;
  t.policy = daemon.name();
  t.seed = seed;
  t.max_steps = opts.max_steps ? opts.max_steps : step_bound(graph) + 1;
  t.initial = c0;

  Configuration c = std::move(c0);
  std::vector<bool> enabled(n);
  for (std::size_t k = 0; k < n; ++k) {
    enabled[k] = enabled_rule(c, graph, NodeId(static_cast<std::uint32_t>(k)), opts.variant).has_value();
  }
  RoundTracker rounds(enabled);
  std::vector<NodeId> enabled_list;
  std::vector<bool> dirty(n, false);

  for (;;) {
    enabled_list.clear();
    for (std::size_t k = 0; k < n; ++k) {
      if (enabled[k]) enabled_list.push_back(NodeId(static_cast<std::uint32_t>(k)));
    }
    if (enabled_list.empty()) {
      t.termination = Termination::stable;
      break;
    }
    if (t.steps.size() >= t.max_steps) {
      t.termination = Termination::step_cap;
      break;
    }
    const SchedulingContext ctx{graph, c, enabled_list, t.steps.size(), rounds};
    Selection sel = daemon.select(ctx);
    if (sel.nodes.empty()) {
      t.termination = Termination::schedule_end;
      break;
    }
    StepResult r = apply_step(c, graph, sel.nodes, StepOptions{opts.variant, sel.marriage_choices});
    c = std::move(r.next);

    std::vector<NodeId> touched;
    for (const Move& mv : r.record.moves) {
      if (!dirty[mv.node.index()]) touched.push_back(mv.node);
      dirty[mv.node.index()] = true;
      for (NodeId w : graph.neighbors(mv.node)) {
        if (!dirty[w.index()]) touched.push_back(w);
        dirty[w.index()] = true;
      }
    }
    for (NodeId v : touched) {
      enabled[v.index()] = enabled_rule(c, graph, v, opts.variant).has_value();
      dirty[v.index()] = false;
    }

    std::vector<NodeId> moved;
    for (const Move& mv : r.record.moves) moved.push_back(mv.node);
    r.record.index = t.steps.size();
    r.record.round_index = rounds.record_step(moved, enabled);
    t.steps.push_back(std::move(r.record));
  }
  t.final_config = std::move(c);
  return t;
}

Trace run(std::shared_ptr<const Graph> g, Configuration c0, const PolicySpec& policy, std::uint64_t seed,
          const RunOptions& opts) {
  auto daemon = make_daemon(policy, seed);
  return run(std::move(g), std::move(c0), *daemon, seed, opts);
}

std::vector<Configuration> replay(const Trace& t) {
  if (!t.graph) throw CorruptTrace("corrupt trace: no graph");
  const Graph& g = *t.graph;
  if (!well_formed(t.initial, g)) throw CorruptTrace("corrupt trace: initial configuration is not well-formed");

  std::vector<Configuration> configs;
  configs.reserve(t.steps.size() + 1);
  configs.push_back(t.initial);
  for (std::size_t s = 0; s < t.steps.size(); ++s) {
    const Configuration& before = configs.back();
    Configuration after = before;
    const auto& moves = t.steps[s].moves;
    if (moves.empty()) throw CorruptTrace("corrupt trace: step " + std::to_string(s) + " has no moves");
    for (std::size_t k = 0; k < moves.size(); ++k) {
      const Move& mv = moves[k];
      if (!g.contains(mv.node)) throw CorruptTrace("corrupt trace: step " + std::to_string(s) + " names unknown node");
      if (k > 0 && !(moves[k - 1].node < mv.node)) {
        throw CorruptTrace("corrupt trace: step " + std::to_string(s) + " moves not strictly ascending by node");
      }
      const auto next = apply_command_unchecked(before, g, mv.node, mv.rule, mv.marriage_choice, t.variant);
      if (!next) {
        throw CorruptTrace("corrupt trace: step " + std::to_string(s) + ": " + std::string(to_string(mv.rule)) +
                           " by node " + std::to_string(mv.node.value) + " has no effect");
      }
      after[mv.node] = *next;
    }
    configs.push_back(std::move(after));
  }
  if (configs.back() != t.final_config) {
    throw CorruptTrace("corrupt trace: replay does not reproduce the recorded final configuration");
  }
  return configs;
}

std::vector<Selection> schedule_of(const Trace& t) {
  std::vector<Selection> out;
  out.reserve(t.steps.size());
  for (const StepRecord& s : t.steps) {
    Selection sel;
    for (const Move& mv : s.moves) {
      sel.nodes.push_back(mv.node);
      if (mv.marriage_choice) sel.marriage_choices.emplace_back(mv.node, *mv.marriage_choice);
    }
    out.push_back(std::move(sel));
  }
  return out;
}

long edge_index(const Graph& g, NodeId a, NodeId b) {
  const Edge e = a < b ? Edge{a, b} : Edge{b, a};
  const auto& edges = g.edges();
  const auto it = std::lower_bound(edges.begin(), edges.end(), e);
  return it != edges.end() && *it == e ? static_cast<long>(it - edges.begin()) : -1;
}

std::optional<NodeId> move_partner(const Configuration& before, const Configuration& after, const Move& mv) {
  switch (mv.rule) {
    case Rule::Marriage:
    case Rule::Seduction: return after[mv.node].p;
    case Rule::Abandonment: return before[mv.node].p;
    case Rule::Update: return std::nullopt;
  }
  return std::nullopt;
}

TraceMetrics compute_metrics(const Trace& t) { return compute_metrics(t, replay(t)); }

TraceMetrics compute_metrics(const Trace& t, std::span<const Configuration> configs) {
  const Graph& g = *t.graph;
  TraceMetrics m;
  m.steps = t.steps.size();
  m.update_moves.assign(g.node_count(), 0);
  m.edge_move_steps.assign(g.edge_count(), 0);
  std::vector<long> touched;
  for (std::size_t s = 0; s < t.steps.size(); ++s) {
    touched.clear();
    for (const Move& mv : t.steps[s].moves) {
      ++m.moves;
      ++m.rule_moves[static_cast<std::size_t>(mv.rule)];
      if (mv.rule == Rule::Update) ++m.update_moves[mv.node.index()];
      if (auto partner = move_partner(configs[s], configs[s + 1], mv)) {
        const long e = edge_index(g, mv.node, *partner);
        if (e >= 0) touched.push_back(e);
      }
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (long e : touched) ++m.edge_move_steps[static_cast<std::size_t>(e)];
  }
  m.rounds = count_rounds(t, configs).rounds;
  return m;
}

}  // namespace ssmatch
