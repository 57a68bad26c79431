#include "ssmatch/scheduler.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include "ssmatch/rng.hpp"

namespace ssmatch {

std::string_view to_string(PolicyKind k) {
  switch (k) {
    case PolicyKind::sequential_random: return "sequential_random";
    case PolicyKind::sequential_adversarial_heuristic: return "sequential_adversarial_heuristic";
    case PolicyKind::synchronous: return "synchronous";
    case PolicyKind::distributed_random: return "distributed_random";
    case PolicyKind::distributed_adversarial_heuristic: return "distributed_adversarial_heuristic";
    case PolicyKind::distributed_fair: return "distributed_fair";
  }
  return "?";
}

namespace {

constexpr PolicyKind kKinds[] = {
    PolicyKind::sequential_random,  PolicyKind::sequential_adversarial_heuristic,
    PolicyKind::synchronous,        PolicyKind::distributed_random,
    PolicyKind::distributed_adversarial_heuristic, PolicyKind::distributed_fair,
};

std::string_view strategy_name(Strategy s) {
  switch (s) {
    case Strategy::min_id: return "min-id";
    case Strategy::max_id: return "max-id";
    case Strategy::max_degree: return "max-degree";
    case Strategy::starve_one: return "starve-one";
  }
  return "?";
}

bool is_adversarial(PolicyKind k) {
  return k == PolicyKind::sequential_adversarial_heuristic || k == PolicyKind::distributed_adversarial_heuristic;
}

std::size_t parse_count(std::string_view s, std::string_view what) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("bad " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

bool is_sequential(PolicyKind k) {
  return k == PolicyKind::sequential_random || k == PolicyKind::sequential_adversarial_heuristic;
}

bool is_fair(PolicyKind k) { return k == PolicyKind::synchronous || k == PolicyKind::distributed_fair; }

PolicySpec parse_policy(std::string_view text) {
  const auto colon = text.find(':');
  const auto kind_name = text.substr(0, colon);
  const std::string_view param = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);

  PolicySpec spec;
  const auto* it = std::find_if(std::begin(kKinds), std::end(kKinds),
                                [&](PolicyKind k) { return to_string(k) == kind_name; });
  if (it == std::end(kKinds)) throw std::invalid_argument("unknown policy '" + std::string(kind_name) + "'");
  spec.kind = *it;

  if (is_adversarial(spec.kind)) {
    const auto eq = param.find('=');
    const auto name = param.substr(0, eq);
    if (name.empty() || name == "min-id") {
      spec.strategy = Strategy::min_id;
    } else if (name == "max-id" || name == "fig1") {
      spec.strategy = Strategy::max_id;
    } else if (name == "max-degree") {
      spec.strategy = Strategy::max_degree;
    } else if (name == "starve-one") {
      spec.strategy = Strategy::starve_one;
    } else {
      throw std::invalid_argument("unknown strategy '" + std::string(name) + "'");
    }
    if (eq != std::string_view::npos) {
      if (spec.strategy != Strategy::starve_one) throw std::invalid_argument("only starve-one takes a node");
      spec.starve_target = NodeId(static_cast<std::uint32_t>(parse_count(param.substr(eq + 1), "node")));
    }
  } else if (spec.kind == PolicyKind::distributed_fair) {
    if (!param.empty()) {
      if (!param.starts_with("patience=")) throw std::invalid_argument("distributed_fair takes patience=K");
      spec.patience = parse_count(param.substr(9), "patience");
    }
  } else if (!param.empty()) {
    throw std::invalid_argument("policy " + std::string(kind_name) + " takes no parameter");
  }
  return spec;
}

std::string to_string(const PolicySpec& p) {
  std::string out(to_string(p.kind));
  if (is_adversarial(p.kind)) {
    out += ':';
    out += strategy_name(p.strategy);
    if (p.strategy == Strategy::starve_one) out += "=" + std::to_string(p.starve_target.value);
  } else if (p.kind == PolicyKind::distributed_fair) {
    out += ":patience=" + std::to_string(p.patience);
  }
  return out;
}

std::vector<PolicySpec> all_policies() {
  std::vector<PolicySpec> out;
  for (PolicyKind k : kKinds) {
    if (is_adversarial(k)) {
      for (Strategy s : {Strategy::min_id, Strategy::max_id, Strategy::max_degree, Strategy::starve_one}) {
        out.push_back(PolicySpec{k, s, NodeId(0), 2});
      }
    } else {
      out.push_back(PolicySpec{k, Strategy::min_id, NodeId(0), 2});
    }
  }
  return out;
}

std::string policy_help() {
  return "Policies (kind[:param]):\n"
         "  sequential_random                      one uniformly random enabled process\n"
         "  sequential_adversarial_heuristic:S     one process chosen by strategy S\n"
         "  synchronous                            every enabled process\n"
         "  distributed_random                     each enabled process with probability 1/2\n"
         "  distributed_adversarial_heuristic:S    a subset chosen by strategy S\n"
         "  distributed_fair[:patience=K]          random subset; after K steps in a round every\n"
         "                                         process still owed a move is forced in (K=2)\n"
         "Strategies S:\n"
         "  min-id       lowest identifier / all local identifier minima among enabled\n"
         "  max-id       highest identifier / all local maxima (alias: fig1)\n"
         "  max-degree   highest degree / all enabled processes of maximum degree\n"
         "  starve-one[=N]  never schedule node N (default 0) while another process is enabled\n";
}

namespace {

bool ident_less(const Graph& g, NodeId a, NodeId b) {
  return g.ident(a) != g.ident(b) ? g.ident(a) < g.ident(b) : a < b;
}

class SequentialRandom final : public Daemon {
 public:
  explicit SequentialRandom(std::uint64_t seed) : rng_(seed) {}
  Selection select(const SchedulingContext& ctx) override {
    return {{ctx.enabled[rng_.below(ctx.enabled.size())]}, {}};
  }
  std::string name() const override { return to_string(PolicySpec{PolicyKind::sequential_random}); }

 private:
  Rng rng_;
};

class Synchronous final : public Daemon {
 public:
  Selection select(const SchedulingContext& ctx) override { return {{ctx.enabled.begin(), ctx.enabled.end()}, {}}; }
  std::string name() const override { return "synchronous"; }
};

class DistributedRandom : public Daemon {
 public:
  explicit DistributedRandom(std::uint64_t seed) : rng_(seed) {}
  Selection select(const SchedulingContext& ctx) override { return {draw(ctx.enabled), {}}; }
  std::string name() const override { return "distributed_random"; }

 protected:
  std::vector<NodeId> draw(std::span<const NodeId> enabled) {
    std::vector<NodeId> out;
    while (out.empty()) {
      for (NodeId v : enabled) {
        if (rng_.coin()) out.push_back(v);
      }
    }
    return out;
  }

 private:
  Rng rng_;
};

class DistributedFair final : public DistributedRandom {
 public:
  DistributedFair(std::uint64_t seed, std::size_t patience) : DistributedRandom(seed), patience_(patience) {}
  Selection select(const SchedulingContext& ctx) override {
    auto nodes = draw(ctx.enabled);
    if (ctx.rounds.steps_in_current_round() >= patience_) {
      const auto& pending = ctx.rounds.pending();
      for (NodeId v : ctx.enabled) {
        if (v.index() < pending.size() && pending[v.index()]) nodes.push_back(v);
      }
      std::sort(nodes.begin(), nodes.end());
      nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    }
    return {std::move(nodes), {}};
  }
  std::string name() const override {
    return to_string(PolicySpec{PolicyKind::distributed_fair, Strategy::min_id, NodeId(0), patience_});
  }

 private:
  std::size_t patience_;
};

class Adversarial final : public Daemon {
 public:
  explicit Adversarial(PolicySpec spec) : spec_(spec) {}

  Selection select(const SchedulingContext& ctx) override {
    const Graph& g = ctx.graph;
    const bool sequential = spec_.kind == PolicyKind::sequential_adversarial_heuristic;
    std::vector<NodeId> out;

    switch (spec_.strategy) {
      case Strategy::min_id:
      case Strategy::max_id: {
        const bool want_min = spec_.strategy == Strategy::min_id;
        auto better = [&](NodeId a, NodeId b) { return want_min ? ident_less(g, a, b) : ident_less(g, b, a); };
        if (sequential) {
          out.push_back(*std::min_element(ctx.enabled.begin(), ctx.enabled.end(), better));
          break;
        }
        std::vector<bool> on(g.node_count(), false);
        for (NodeId v : ctx.enabled) on[v.index()] = true;
        for (NodeId v : ctx.enabled) {
          bool extreme = true;
          for (NodeId w : g.neighbors(v)) {
            if (on[w.index()] && better(w, v)) {
              extreme = false;
              break;
            }
          }
          if (extreme) out.push_back(v);
        }
        break;
      }
      case Strategy::max_degree: {
        std::size_t best = 0;
        for (NodeId v : ctx.enabled) best = std::max(best, g.degree(v));
        for (NodeId v : ctx.enabled) {
          if (g.degree(v) == best) {
            out.push_back(v);
            if (sequential) break;
          }
        }
        break;
      }
      case Strategy::starve_one: {
        for (NodeId v : ctx.enabled) {
          if (v != spec_.starve_target) out.push_back(v);
        }
        if (out.empty()) {
          out.push_back(spec_.starve_target);
        } else if (sequential) {
          out = {*std::min_element(out.begin(), out.end(), [&](NodeId a, NodeId b) { return ident_less(g, a, b); })};
        }
        break;
      }
    }
    std::sort(out.begin(), out.end());
    return {std::move(out), {}};
  }

  std::string name() const override { return to_string(spec_); }

 private:
  PolicySpec spec_;
};

}  // namespace

std::unique_ptr<Daemon> make_daemon(const PolicySpec& spec, std::uint64_t seed) {
  switch (spec.kind) {
    case PolicyKind::sequential_random: return std::make_unique<SequentialRandom>(seed);
    case PolicyKind::synchronous: return std::make_unique<Synchronous>();
    case PolicyKind::distributed_random: return std::make_unique<DistributedRandom>(seed);
    case PolicyKind::distributed_fair: return std::make_unique<DistributedFair>(seed, spec.patience);
    case PolicyKind::sequential_adversarial_heuristic:
    case PolicyKind::distributed_adversarial_heuristic: return std::make_unique<Adversarial>(spec);
  }
  throw std::invalid_argument("unknown policy kind");
}

Selection ScheduleDaemon::select(const SchedulingContext& ctx) {
  if (ctx.step >= schedule_.size()) return {};
  return schedule_[ctx.step];
}

}  // namespace ssmatch
