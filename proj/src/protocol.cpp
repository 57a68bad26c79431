#include "ssmatch/protocol.hpp"

#include <algorithm>
#include <string>

#include "ssmatch/rng.hpp"

namespace ssmatch {

std::string_view to_string(Rule r) {
  switch (r) {
    case Rule::Update: return "Update";
    case Rule::Marriage: return "Marriage";
    case Rule::Seduction: return "Seduction";
    case Rule::Abandonment: return "Abandonment";
  }
  return "?";
}

Rule parse_rule(std::string_view name) {
  for (Rule r : kAllRules) {
    if (to_string(r) == name) return r;
  }
  throw std::invalid_argument("unknown rule '" + std::string(name) + "'");
}

std::string_view to_string(PredicateClass c) {
  switch (c) {
    case PredicateClass::PRmarried: return "PRmarried";
    case PredicateClass::PRwaiting: return "PRwaiting";
    case PredicateClass::PRcondemned: return "PRcondemned";
    case PredicateClass::PRdead: return "PRdead";
    case PredicateClass::PRfree: return "PRfree";
  }
  return "?";
}

std::string_view to_string(Variant v) {
  return v == Variant::standard ? "standard" : "unordered_seduction";
}

Variant parse_variant(std::string_view name) {
  if (name == "standard") return Variant::standard;
  if (name == "unordered_seduction") return Variant::unordered_seduction;
  throw std::invalid_argument("unknown protocol variant '" + std::string(name) + "'");
}

bool pr_married(const Configuration& c, const Graph& g, NodeId i) {
  (void)g;
  const auto& pi = c[i].p;
  return pi && c[*pi].p == i;
}

PredicateClass classify(const Configuration& c, const Graph& g, NodeId i) {
  if (const auto& pi = c[i].p) {
    if (c[*pi].p == i) return PredicateClass::PRmarried;
    return pr_married(c, g, *pi) ? PredicateClass::PRcondemned : PredicateClass::PRwaiting;
  }
  for (NodeId j : g.neighbors(i)) {
    if (!pr_married(c, g, j)) return PredicateClass::PRfree;
  }
  return PredicateClass::PRdead;
}

namespace {

bool pointed_at_by_neighbor(const Configuration& c, const Graph& g, NodeId i) {
  for (NodeId j : g.neighbors(i)) {
    if (c[j].p == i) return true;
  }
  return false;
}

}  // namespace

std::optional<NodeId> seduction_target(const Configuration& c, const Graph& g, NodeId i, Variant v) {
  const auto row = g.neighbors(i);
  for (auto it = row.rbegin(); it != row.rend(); ++it) {
    const NodeId j = *it;
    const bool larger = g.ident(j) > g.ident(i);
    if (!c[j].p && !c[j].m && (larger || v == Variant::unordered_seduction)) return j;
  }
  return std::nullopt;
}

bool guard_holds(const Configuration& c, const Graph& g, NodeId i, Rule r, Variant v) {
  const ProcessState& s = c[i];
  const bool married = pr_married(c, g, i);
  if (r == Rule::Update) return s.m != married;
  if (s.m != married) return false;

  switch (r) {
    case Rule::Marriage:
      return !s.p && pointed_at_by_neighbor(c, g, i);
    case Rule::Seduction:
      return !s.p && !pointed_at_by_neighbor(c, g, i) && seduction_target(c, g, i, v).has_value();
    case Rule::Abandonment: {
      if (!s.p) return false;
      const NodeId j = *s.p;
      return c[j].p != i && (c[j].m || g.ident(j) <= g.ident(i));
    }
    case Rule::Update:
      break;
  }
  return false;
}

unsigned enabled_rule_mask(const Configuration& c, const Graph& g, NodeId i, Variant v) {
  unsigned mask = 0;
  for (std::size_t k = 0; k < kAllRules.size(); ++k) {
    if (guard_holds(c, g, i, kAllRules[k], v)) mask |= 1u << k;
  }
  return mask;
}

std::optional<Rule> enabled_rule(const Configuration& c, const Graph& g, NodeId i, Variant v) {
  for (Rule r : kAllRules) {
    if (guard_holds(c, g, i, r, v)) return r;
  }
  return std::nullopt;
}

std::vector<NodeId> marriage_suitors(const Configuration& c, const Graph& g, NodeId i) {
  std::vector<NodeId> out;
  for (NodeId j : g.neighbors(i)) {
    if (c[j].p == i) out.push_back(j);
  }
  return out;
}

std::optional<ProcessState> apply_command_unchecked(const Configuration& c, const Graph& g, NodeId i, Rule r,
                                                    std::optional<NodeId> marriage_choice, Variant v) {
  ProcessState next = c[i];
  switch (r) {
    case Rule::Update:
      next.m = pr_married(c, g, i);
      return next;
    case Rule::Marriage: {
      const auto suitors = marriage_suitors(c, g, i);
      if (suitors.empty()) return std::nullopt;
      if (marriage_choice) {
        if (std::find(suitors.begin(), suitors.end(), *marriage_choice) == suitors.end()) return std::nullopt;
        next.p = *marriage_choice;
      } else {
        next.p = suitors.back();
      }
      return next;
    }
    case Rule::Seduction: {
      const auto target = seduction_target(c, g, i, v);
      if (!target) return std::nullopt;
      next.p = *target;
      return next;
    }
    case Rule::Abandonment:
      if (!next.p) return std::nullopt;
      next.p.reset();
      return next;
  }
  return std::nullopt;
}

ProcessState command_target(const Configuration& c, const Graph& g, NodeId i, Rule r,
                            std::optional<NodeId> marriage_choice, Variant v) {
  if (enabled_rule(c, g, i, v) != r) {
    throw ContractViolation("rule " + std::string(to_string(r)) + " is not enabled at node " +
                            std::to_string(i.value));
  }
  if (marriage_choice && r != Rule::Marriage) {
    throw ContractViolation("marriage choice given for a non-Marriage move");
  }
  auto next = apply_command_unchecked(c, g, i, r, marriage_choice, v);
  if (!next) {
    throw ContractViolation("node " + std::to_string(marriage_choice->value) + " is not a suitor of node " +
                            std::to_string(i.value));
  }
  return *next;
}

Configuration normalize(const RawConfiguration& raw, const Graph& g) {
  Configuration c(g.node_count());
  for (std::size_t k = 0; k < g.node_count() && k < raw.size(); ++k) {
    const NodeId i(static_cast<std::uint32_t>(k));
    const RawProcessState& r = raw[k];
    ProcessState& s = c[i];
    s.m = r.m != 0;
    if (r.p && *r.p >= 0 && static_cast<std::uint64_t>(*r.p) < g.node_count()) {
      const NodeId target(static_cast<std::uint32_t>(*r.p));
      if (g.adjacent(i, target)) s.p = target;
    }
  }
  return c;
}

bool well_formed(const Configuration& c, const Graph& g) {
  if (c.size() != g.node_count()) return false;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const NodeId i(static_cast<std::uint32_t>(k));
    if (c[i].p && (!g.contains(*c[i].p) || !g.adjacent(i, *c[i].p))) return false;
  }
  return true;
}

Configuration all_null(const Graph& g) { return Configuration(g.node_count()); }

Configuration random_configuration(const Graph& g, std::uint64_t seed) {
  Rng rng(seed);
  Configuration c(g.node_count());
  for (std::size_t k = 0; k < g.node_count(); ++k) {
    const NodeId i(static_cast<std::uint32_t>(k));
    const auto row = g.neighbors(i);
    const auto pick = rng.below(row.size() + 1);
    if (pick > 0) c[i].p = row[pick - 1];
    c[i].m = rng.coin();
  }
  return c;
}

}  // namespace ssmatch
