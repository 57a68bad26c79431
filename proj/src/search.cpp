#include "ssmatch/search.hpp"

#include <algorithm>
#include <unordered_map>

#include "ssmatch/matching.hpp"

namespace ssmatch {

namespace {

NodeId node(std::size_t k) { return NodeId(static_cast<std::uint32_t>(k)); }

std::string encode(const Configuration& c, const Graph& g) {
  std::string key(c.size(), '\0');
  for (std::size_t k = 0; k < c.size(); ++k) {
    const auto& s = c[node(k)];
    const int slot = s.p ? g.neighbor_slot(node(k), *s.p) + 1 : 0;
    key[k] = static_cast<char>(slot * 2 + (s.m ? 1 : 0));
  }
  return key;
}

std::vector<Selection> transitions(const Configuration& c, const Graph& g, const SearchOptions& opts) {
  std::vector<NodeId> enabled;
  std::vector<std::vector<NodeId>> suitors;
  for (std::size_t k = 0; k < g.node_count(); ++k) {
    const auto rule = enabled_rule(c, g, node(k), opts.variant);
    if (!rule) continue;
    enabled.push_back(node(k));
    suitors.push_back(opts.branch_marriage && *rule == Rule::Marriage ? marriage_suitors(c, g, node(k))
                                                                       : std::vector<NodeId>{});
  }
  if (enabled.size() > 20) throw std::length_error("too many enabled processes for exhaustive search");

  std::vector<Selection> out;
  const std::uint32_t subsets = 1u << enabled.size();
  for (std::uint32_t mask = 1; mask < subsets; ++mask) {
    Selection base;
    std::vector<std::size_t> branching;
    for (std::size_t b = 0; b < enabled.size(); ++b) {
      if (!(mask & (1u << b))) continue;
      base.nodes.push_back(enabled[b]);
      if (suitors[b].size() > 1) branching.push_back(b);
    }
    if (branching.empty()) {
      out.push_back(std::move(base));
      continue;
    }
    std::vector<std::size_t> digit(branching.size(), 0);
    for (;;) {
      Selection sel = base;
      for (std::size_t d = 0; d < branching.size(); ++d) {
        const std::size_t b = branching[d];
        sel.marriage_choices.emplace_back(enabled[b], suitors[b][digit[d]]);
      }
      out.push_back(std::move(sel));
      std::size_t d = 0;
      while (d < digit.size() && ++digit[d] == suitors[branching[d]].size()) digit[d++] = 0;
      if (d == digit.size()) break;
    }
  }
  return out;
}

class Searcher {
 public:
  Searcher(const Graph& g, const SearchOptions& opts, SearchResult& res) : g_(g), opts_(opts), res_(res) {}

  /// Longest number of steps from c to a stable configuration.
  std::uint32_t explore(const Configuration& c) {
    std::string key = encode(c, g_);
    if (auto it = index_.find(key); it != index_.end()) {
      const Entry& e = entries_[it->second];
      if (e.on_stack) {
        res_.livelock = true;
        res_.failure = "livelock: a schedule revisits a configuration";
        res_.witness_schedule = stack_;
        aborted_ = true;
      }
      return e.longest;
    }
    if (entries_.size() >= opts_.budget) {
      res_.complete = false;
      aborted_ = true;
      return 0;
    }
    const std::uint32_t id = static_cast<std::uint32_t>(entries_.size());
    index_.emplace(std::move(key), id);
    entries_.push_back(Entry{0, 0, true});

    const auto trans = transitions(c, g_, opts_);
    if (trans.empty()) {
      check_leaf(c);
      entries_[id].on_stack = false;
      return 0;
    }
    std::uint32_t best = 0, best_choice = 0;
    for (std::uint32_t t = 0; t < trans.size(); ++t) {
      const auto next = apply_step(c, g_, trans[t].nodes, StepOptions{opts_.variant, trans[t].marriage_choices}).next;
      stack_.push_back(trans[t]);
      const std::uint32_t len = explore(next) + 1;
      stack_.pop_back();
      if (aborted_) return 0;
      if (len > best) {
        best = len;
        best_choice = t;
      }
    }
    entries_[id] = Entry{best, best_choice, false};
    return best;
  }

  bool aborted() const { return aborted_; }
  std::size_t explored() const { return entries_.size(); }

  std::vector<Selection> worst_path(Configuration c) const {
    std::vector<Selection> path;
    for (;;) {
      const auto it = index_.find(encode(c, g_));
      if (it == index_.end()) break;
      const auto trans = transitions(c, g_, opts_);
      if (trans.empty()) break;
      const Selection& sel = trans[entries_[it->second].best];
      c = apply_step(c, g_, sel.nodes, StepOptions{opts_.variant, sel.marriage_choices}).next;
      path.push_back(sel);
    }
    return path;
  }

 private:
  struct Entry {
    std::uint32_t longest;
    std::uint32_t best;
    bool on_stack;
  };

  void check_leaf(const Configuration& c) {
    ++res_.stable_leaves;
    const auto verdict = check_maximal(extract_matching(c, g_), g_);
    bool classes_ok = true;
    for (std::size_t k = 0; k < g_.node_count(); ++k) {
      const auto cls = classify(c, g_, node(k));
      if (cls != PredicateClass::PRmarried && cls != PredicateClass::PRdead) classes_ok = false;
    }
    if ((!verdict.ok() || !classes_ok) && res_.all_leaves_maximal) {
      res_.all_leaves_maximal = false;
      res_.failure = verdict.ok() ? "stable leaf with a process neither PRmarried nor PRdead"
                                  : "stable leaf is not a maximal matching";
    }
  }

  const Graph& g_;
  const SearchOptions& opts_;
  SearchResult& res_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::vector<Entry> entries_;
  std::vector<Selection> stack_;
  bool aborted_ = false;
};

}  // namespace

double configuration_count(const Graph& g) {
  double total = 1;
  for (std::size_t k = 0; k < g.node_count(); ++k) total *= 2.0 * static_cast<double>(g.degree(node(k)) + 1);
  return total;
}

void for_each_configuration(const Graph& g, const std::function<void(const Configuration&)>& fn) {
  const std::size_t n = g.node_count();
  std::vector<std::size_t> digit(n, 0);
  Configuration c(n);
  for (;;) {
    for (std::size_t k = 0; k < n; ++k) {
      const auto row = g.neighbors(node(k));
      const std::size_t slot = digit[k] / 2;
      c[node(k)].p = slot == 0 ? std::nullopt : std::optional<NodeId>(row[slot - 1]);
      c[node(k)].m = digit[k] % 2 == 1;
    }
    fn(c);
    std::size_t k = 0;
    while (k < n && ++digit[k] == 2 * (g.degree(node(k)) + 1)) digit[k++] = 0;
    if (k == n) break;
  }
}

SearchResult exhaustive_search(const Graph& g, const std::optional<Configuration>& c0, const SearchOptions& opts) {
  if (opts.budget == 0) throw std::invalid_argument("search budget must be positive");
  SearchResult res;
  res.branch_marriage = opts.branch_marriage;
  res.bound = step_bound(g);
  Searcher searcher(g, opts, res);

  std::optional<Configuration> worst_root;
  auto visit = [&](const Configuration& root) {
    if (searcher.aborted()) return;
    ++res.initial_configurations;
    const std::uint32_t len = searcher.explore(root);
    if (searcher.aborted()) {
      if (res.livelock) res.witness_initial = root;
      return;
    }
    if (!worst_root || len > res.worst_steps) {
      res.worst_steps = len;
      worst_root = root;
    }
  };

  if (c0) {
    if (!well_formed(*c0, g)) throw ContractViolation("initial configuration is not well-formed");
    visit(*c0);
  } else {
    for_each_configuration(g, visit);
  }
  res.explored_states = searcher.explored();
  if (!res.livelock && worst_root) {
    res.witness_initial = *worst_root;
    res.witness_schedule = searcher.worst_path(*worst_root);
  }
  if (res.bound_exceeded() && res.failure.empty()) res.failure = "schedule longer than 3n+2m steps";
  return res;
}

Trace witness_trace(std::shared_ptr<const Graph> g, const SearchResult& r, Variant v) {
  ScheduleDaemon daemon(r.witness_schedule, "search-witness");
  RunOptions opts;
  opts.variant = v;
  opts.max_steps = std::max(step_bound(*g), r.witness_schedule.size()) + 1;
  return run(std::move(g), r.witness_initial, daemon, 0, opts);
}

std::vector<Graph> connected_graphs(std::size_t n) {
  if (n == 0 || n > 5) throw std::invalid_argument("connected_graphs supports 1 <= n <= 5");
  std::vector<Edge> all;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) all.push_back(Edge{node(a), node(b)});
  }
  std::vector<Graph> out;
  for (std::uint32_t mask = 0; mask < (1u << all.size()); ++mask) {
    std::vector<Edge> edges;
    for (std::size_t k = 0; k < all.size(); ++k) {
      if (mask & (1u << k)) edges.push_back(all[k]);
    }
    Graph g(n, edges);
    if (g.connected()) out.push_back(std::move(g));
  }
  return out;
}

}  // namespace ssmatch
