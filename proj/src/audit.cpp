#include "ssmatch/audit.hpp"

#include <algorithm>
#include <bit>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "ssmatch/config_io.hpp"
#include "ssmatch/matching.hpp"

namespace ssmatch {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::not_applicable: return "n/a";
  }
  return "?";
}

bool AuditReport::passed() const {
  return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.verdict == Verdict::fail; });
}

const CheckResult& AuditReport::check(std::string_view name) const {
  for (const CheckResult& c : checks) {
    if (c.name == name) return c;
  }
  throw std::out_of_range("no audit check named " + std::string(name));
}

const std::vector<std::string>& audit_check_names() {
  static const std::vector<std::string> names = {
      "stabilized",         "stable_is_maximal",     "m_flag_consistency",
      "step_bound",         "round_bound",           "marriage_persistence",
      "update_limit",       "married_quiescence",    "edge_move_limit",
      "guard_exclusivity",  "move_legality",         "active_component_shrink",
      "active_component_shrink_strict",
  };
  return names;
}

namespace {

NodeId node(std::size_t k) { return NodeId(static_cast<std::uint32_t>(k)); }

std::string str(const std::ostringstream& os) { return os.str(); }

struct Auditor {
  const Trace& t;
  const Graph& g;
  const std::vector<Configuration>& configs;

  CheckResult make(std::string name) const { return CheckResult{std::move(name), Verdict::pass, {}, {}, {}, {}, {}}; }

  void fail(CheckResult& c, std::size_t config_index, std::optional<std::size_t> step, std::string detail) const {
    if (c.verdict == Verdict::fail) return;
    c.verdict = Verdict::fail;
    c.config_index = config_index;
    c.step_index = step;
    c.detail = std::move(detail);
    c.snapshot = write_configuration(configs[config_index]);
  }

  std::vector<bool> active(const Configuration& c) const {
    std::vector<bool> out(g.node_count());
    for (std::size_t k = 0; k < out.size(); ++k) {
      const auto cls = classify(c, g, node(k));
      out[k] = cls != PredicateClass::PRmarried && cls != PredicateClass::PRdead;
    }
    return out;
  }

  std::vector<std::vector<NodeId>> active_components(const std::vector<bool>& act) const {
    std::vector<std::vector<NodeId>> comps;
    std::vector<bool> seen(g.node_count(), false);
    for (std::size_t s = 0; s < act.size(); ++s) {
      if (!act[s] || seen[s]) continue;
      std::vector<NodeId> comp;
      std::queue<NodeId> q;
      q.push(node(s));
      seen[s] = true;
      while (!q.empty()) {
        const NodeId u = q.front();
        q.pop();
        comp.push_back(u);
        for (NodeId v : g.neighbors(u)) {
          if (act[v.index()] && !seen[v.index()]) {
            seen[v.index()] = true;
            q.push(v);
          }
        }
      }
      std::sort(comp.begin(), comp.end());
      comps.push_back(std::move(comp));
    }
    return comps;
  }
};

}  // namespace

AuditReport audit_trace(const Trace& t) {
  const auto configs = replay(t);
  const Graph& g = *t.graph;
  const std::size_t n = g.node_count();
  const std::size_t steps = t.steps.size();
  const Auditor a{t, g, configs};
  const Configuration& final_config = configs.back();

  AuditReport r;
  r.graph_hash = graph_hash(g);
  r.n = n;
  r.m = g.edge_count();
  r.policy = t.policy;
  r.seed = t.seed;
  r.connected = g.connected();
  const auto d2 = check_distance2_unique(g);
  r.distance2_unique = d2.ok();

  bool fair = false;
  try {
    fair = is_fair(parse_policy(t.policy).kind);
  } catch (const std::invalid_argument&) {
  }

  const auto metrics = compute_metrics(t, configs);
  const auto rounds = count_rounds(t, configs);
  const bool stable_final = is_stable(final_config, g, t.variant);

  {
    auto c = a.make("stabilized");
    std::ostringstream os;
    os << "steps=" << steps << " termination=" << to_string(t.termination);
    c.counters = str(os);
    if (!stable_final) {
      a.fail(c, steps, std::nullopt, "final configuration is not stable");
    } else if (t.termination != Termination::stable && t.termination != Termination::schedule_end) {
      a.fail(c, steps, std::nullopt, "run hit the step cap");
    }
    r.checks.push_back(std::move(c));
  }

  {
    auto c = a.make("stable_is_maximal");
    if (!stable_final) {
      c.verdict = Verdict::not_applicable;
    } else {
      const Matching mt = extract_matching(final_config, g);
      const auto verdict = check_maximal(mt, g);
      std::size_t married = 0, dead = 0;
      std::optional<NodeId> other;
      for (std::size_t k = 0; k < n; ++k) {
        const auto cls = classify(final_config, g, node(k));
        if (cls == PredicateClass::PRmarried) {
          ++married;
        } else if (cls == PredicateClass::PRdead) {
          ++dead;
        } else if (!other) {
          other = node(k);
        }
      }
      std::ostringstream os;
      os << "matching=" << mt.edges.size() << " married=" << married << " dead=" << dead;
      c.counters = str(os);
      if (!verdict.ok()) {
        std::ostringstream d;
        d << "augmenting edge " << verdict.augmenting->u << " " << verdict.augmenting->v;
        if (!other) d << " although every node is PRmarried or PRdead";
        a.fail(c, steps, std::nullopt, d.str());
      } else if (other) {
        a.fail(c, steps, std::nullopt,
               "node " + std::to_string(other->value) + " is " +
                   std::string(to_string(classify(final_config, g, *other))) + " in a stable configuration");
      }
    }
    r.checks.push_back(std::move(c));
  }

  {
    auto c = a.make("m_flag_consistency");
    if (!stable_final) {
      c.verdict = Verdict::not_applicable;
    } else {
      for (std::size_t k = 0; k < n; ++k) {
        if (final_config[node(k)].m != pr_married(final_config, g, node(k))) {
          a.fail(c, steps, std::nullopt, "m of node " + std::to_string(k) + " disagrees with PRmarried");
          break;
        }
      }
    }
    r.checks.push_back(std::move(c));
  }

  {
    auto c = a.make("step_bound");
    const std::size_t bound = step_bound(g);
    c.counters = "steps=" + std::to_string(steps) + " bound=" + std::to_string(bound);
    if (steps > bound) a.fail(c, bound, bound, "step " + std::to_string(bound) + " exceeds 3n+2m");
    r.checks.push_back(std::move(c));
  }

  {
    auto c = a.make("round_bound");
    const std::size_t bound = round_bound(g);
    c.counters = "rounds=" + std::to_string(rounds.rounds) + " bound=" + std::to_string(bound);
    if (!fair) {
      c.verdict = Verdict::not_applicable;
    } else if (rounds.rounds > bound) {
      const auto it = std::find_if(rounds.round_index.begin(), rounds.round_index.end(),
                                   [bound](std::size_t ri) { return ri >= bound; });
      const auto s = static_cast<std::size_t>(it - rounds.round_index.begin());
      a.fail(c, s, s, "round " + std::to_string(bound + 1) + " begins at step " + std::to_string(s));
    }
    r.checks.push_back(std::move(c));
  }

  {
    auto c = a.make("marriage_persistence");
    std::size_t pairs_seen = 0;
    for (std::size_t s = 0; s < steps && c.verdict == Verdict::pass; ++s) {
      const Configuration& before = configs[s];
      const Configuration& after = configs[s + 1];
      for (std::size_t k = 0; k < n; ++k) {
        const NodeId i = node(k);
        if (!pr_married(before, g, i)) continue;
        ++pairs_seen;
        if (after[i].p != before[i].p || !pr_married(after, g, i)) {
          a.fail(c, s, s,
                 "node " + std::to_string(k) + " married to " + std::to_string(before[i].p->value) +
                     " is no longer married after step " + std::to_string(s));
          break;
        }
      }
    }
    c.counters = "married_node_configs=" + std::to_string(pairs_seen);
    r.checks.push_back(std::move(c));
  }

  {
    auto c = a.make("update_limit");
    std::vector<std::size_t> count(n, 0);
    for (std::size_t s = 0; s < steps; ++s) {
      for (const Move& mv : t.steps[s].moves) {
        if (mv.rule == Rule::Update && ++count[mv.node.index()] == 3) {
          a.fail(c, s, s, "node " + std::to_string(mv.node.value) + " executes a third Update at step " +
                              std::to_string(s));
        }
      }
    }
    const std::size_t worst = n ? *std::max_element(count.begin(), count.end()) : 0;
    c.counters = "max_updates=" + std::to_string(worst) + " limit=2";
    r.checks.push_back(std::move(c));
  }

  {
    auto c = a.make("married_quiescence");
    std::vector<bool> settled(n, false);
    for (std::size_t s = 0; s < steps; ++s) {
      for (const Move& mv : t.steps[s].moves) {
        if (settled[mv.node.index()]) {
          a.fail(c, s, s,
                 "node " + std::to_string(mv.node.value) + " moves at step " + std::to_string(s) +
                     " after setting m = true");
        }
      }
      for (const Move& mv : t.steps[s].moves) {
        if (mv.rule == Rule::Update && configs[s + 1][mv.node].m) settled[mv.node.index()] = true;
      }
    }
    r.checks.push_back(std::move(c));
  }

  {
    auto c = a.make("edge_move_limit");
    std::vector<std::size_t> count(g.edge_count(), 0);
    std::vector<std::size_t> triple_edges_at(n, 0);
    std::size_t triples = 0;
    std::vector<long> touched;
    for (std::size_t s = 0; s < steps; ++s) {
      touched.clear();
      for (const Move& mv : t.steps[s].moves) {
        if (auto partner = move_partner(configs[s], configs[s + 1], mv)) {
          const long e = edge_index(g, mv.node, *partner);
          if (e >= 0) touched.push_back(e);
        }
      }
      std::sort(touched.begin(), touched.end());
      touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
      for (long ei : touched) {
        const Edge e = g.edges()[static_cast<std::size_t>(ei)];
        const std::size_t k = ++count[static_cast<std::size_t>(ei)];
        const std::string name = "edge (" + std::to_string(e.u.value) + "," + std::to_string(e.v.value) + ")";
        if (k == 3) {
          ++triples;
          const bool u_points = t.initial[e.u].p == e.v;
          const bool v_points = t.initial[e.v].p == e.u;
          // Chargeable to the endpoint whose initial pointer named the
          // other; a process has one pointer, so at most n such edges.
          if (u_points == v_points) {
            a.fail(c, s, s, name + " reaches three move steps without exactly one endpoint pointing initially");
          }
          // Several neighbors may point at the same process initially, so
          // incidence per process is reported, not enforced.
          for (NodeId x : {e.u, e.v}) ++triple_edges_at[x.index()];
        } else if (k == 4) {
          a.fail(c, s, s, name + " reaches a fourth step with an i,j-move at step " + std::to_string(s));
        }
      }
    }
    const std::size_t worst = count.empty() ? 0 : *std::max_element(count.begin(), count.end());
    const std::size_t per_node =
        triple_edges_at.empty() ? 0 : *std::max_element(triple_edges_at.begin(), triple_edges_at.end());
    c.counters = "max_edge_steps=" + std::to_string(worst) + " limit=3 edges_at_3=" + std::to_string(triples) +
                 " max_edges_at_3_per_node=" + std::to_string(per_node);
    r.checks.push_back(std::move(c));
  }

  {
    auto c = a.make("guard_exclusivity");
    for (std::size_t s = 0; s < configs.size() && c.verdict == Verdict::pass; ++s) {
      for (std::size_t k = 0; k < n; ++k) {
        if (std::popcount(enabled_rule_mask(configs[s], g, node(k), t.variant)) > 1) {
          a.fail(c, s, std::nullopt, "node " + std::to_string(k) + " has two enabled rules");
          break;
        }
      }
    }
    c.counters = "configurations=" + std::to_string(configs.size());
    r.checks.push_back(std::move(c));
  }

  {
    auto c = a.make("move_legality");
    for (std::size_t s = 0; s < steps && c.verdict == Verdict::pass; ++s) {
      for (const Move& mv : t.steps[s].moves) {
        const auto rule = enabled_rule(configs[s], g, mv.node, t.variant);
        if (rule != mv.rule) {
          a.fail(c, s, s,
                 std::string(to_string(mv.rule)) + " by node " + std::to_string(mv.node.value) +
                     " is not enabled at step " + std::to_string(s));
          break;
        }
        if (mv.marriage_choice) {
          const auto suitors = marriage_suitors(configs[s], g, mv.node);
          if (std::find(suitors.begin(), suitors.end(), *mv.marriage_choice) == suitors.end()) {
            a.fail(c, s, s, "marriage choice of node " + std::to_string(mv.node.value) + " is not a suitor");
            break;
          }
        }
      }
    }
    c.counters = "moves=" + std::to_string(metrics.moves);
    r.checks.push_back(std::move(c));
  }

  // Round-start configuration indices, plus the final configuration when
  // it is stable (the start of an empty round).
  std::vector<std::size_t> boundaries;
  for (std::size_t s = 0; s < rounds.round_index.size(); ++s) {
    if (s == 0 || rounds.round_index[s] != rounds.round_index[s - 1]) boundaries.push_back(s);
  }
  if (stable_final) boundaries.push_back(steps);

  for (const auto& [name, threshold] : {std::pair<std::string, std::size_t>{"active_component_shrink", 2},
                                        std::pair<std::string, std::size_t>{"active_component_shrink_strict", 3}}) {
    auto c = a.make(name);
    if (!fair) {
      c.verdict = Verdict::not_applicable;
      r.checks.push_back(std::move(c));
      continue;
    }
    std::size_t windows = 0;
    std::vector<std::vector<bool>> act(boundaries.size());
    for (std::size_t b = 0; b < boundaries.size(); ++b) act[b] = a.active(configs[boundaries[b]]);
    for (std::size_t b = 0; b < boundaries.size() && c.verdict == Verdict::pass; ++b) {
      std::optional<std::size_t> target;
      if (b + 4 < boundaries.size()) {
        target = b + 4;
      } else if (stable_final) {
        target = boundaries.size() - 1;
      }
      if (!target) continue;
      for (const auto& comp : a.active_components(act[b])) {
        if (comp.size() < threshold) continue;
        ++windows;
        std::size_t still = 0;
        for (NodeId v : comp) still += act[*target][v.index()] ? 1 : 0;
        if (still + 2 > comp.size()) {
          std::ostringstream d;
          d << "active component of size " << comp.size() << " containing node " << comp.front() << " at round "
            << b << " still has " << still << " active nodes four rounds later";
          a.fail(c, boundaries[b], std::nullopt, d.str());
          break;
        }
      }
    }
    c.counters = "windows=" + std::to_string(windows) + " min_size=" + std::to_string(threshold);
    r.checks.push_back(std::move(c));
  }

  if (!r.connected) {
    const auto comps = g.components();
    r.notes.push_back("disconnected graph: " + std::to_string(comps.size()) + " components; bounds audited globally");
    std::vector<std::size_t> comp_of(n);
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
      for (NodeId v : comps[ci]) comp_of[v.index()] = ci;
    }
    std::vector<std::size_t> comp_steps(comps.size(), 0), comp_edges(comps.size(), 0);
    for (const Edge& e : g.edges()) ++comp_edges[comp_of[e.u.index()]];
    for (const StepRecord& s : t.steps) {
      std::vector<bool> hit(comps.size(), false);
      for (const Move& mv : s.moves) hit[comp_of[mv.node.index()]] = true;
      for (std::size_t ci = 0; ci < comps.size(); ++ci) comp_steps[ci] += hit[ci] ? 1 : 0;
    }
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
      std::ostringstream os;
      os << "component " << comps[ci].front() << ": n=" << comps[ci].size() << " m=" << comp_edges[ci]
         << " steps=" << comp_steps[ci] << " bound=" << 3 * comps[ci].size() + 2 * comp_edges[ci];
      r.notes.push_back(os.str());
    }
  }
  if (!r.distance2_unique) {
    std::ostringstream os;
    os << "identifiers not unique within distance 2:";
    for (const auto& [u, v] : d2.violations) os << " (" << u << "," << v << ")";
    r.notes.push_back(os.str());
  }
  return r;
}

std::string write_report(const AuditReport& r) {
  std::ostringstream os;
  os << "audit: " << (r.passed() ? "PASS" : "FAIL") << '\n';
  os << "graph: n=" << r.n << " m=" << r.m << " hash=" << r.graph_hash << " connected=" << (r.connected ? "yes" : "no")
     << " distance2_unique=" << (r.distance2_unique ? "yes" : "no") << '\n';
  os << "policy: " << r.policy << " seed=" << r.seed << '\n';
  for (const std::string& note : r.notes) os << "note: " << note << '\n';
  for (const CheckResult& c : r.checks) {
    os << c.name << ": " << to_string(c.verdict) << ": " << c.counters << '\n';
    if (c.verdict != Verdict::fail) continue;
    os << "  detail: " << c.detail << '\n';
    if (c.step_index) os << "  step: " << *c.step_index << '\n';
    if (c.config_index) os << "  configuration: " << *c.config_index << '\n';
    std::istringstream snap(c.snapshot);
    for (std::string line; std::getline(snap, line);) os << "    " << line << '\n';
  }
  return os.str();
}

}  // namespace ssmatch
