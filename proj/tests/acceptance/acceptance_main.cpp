// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 when
// any criterion fails.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "ssmatch/audit.hpp"
#include "ssmatch/config_io.hpp"
#include "ssmatch/engine.hpp"
#include "ssmatch/experiment.hpp"
#include "ssmatch/generate.hpp"
#include "ssmatch/matching.hpp"
#include "ssmatch/rng.hpp"
#include "ssmatch/rounds.hpp"
#include "ssmatch/scheduler.hpp"
#include "ssmatch/search.hpp"
#include "ssmatch/trace_io.hpp"
#include "test_support.hpp"

namespace {

using namespace ssmatch;
using ssmatch::testing::forge;
using ssmatch::testing::moves_of;
using ssmatch::testing::N;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

struct Outcome {
  bool pass = true;
  std::string detail;
  // First counterexample only.
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

int failures = 0;

void report(int id, const std::string& title, const Outcome& o) {
  std::printf("criterion %d: %s - %s%s%s\n", id, o.pass ? "PASS" : "FAIL", title.c_str(), o.detail.empty() ? "" : ": ",
              o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

// --- shared run matrix (criteria 1, 2, 3, 5) ---

struct MatrixRun {
  std::string label;
  Trace trace;
};

std::vector<std::shared_ptr<const Graph>> matrix_graphs() {
  const std::vector<std::size_t> sizes = {1, 2, 3, 4, 5, 6, 8, 10, 13, 17, 25, 35, 50, 70, 100, 130, 165, 200};
  std::vector<std::shared_ptr<const Graph>> out;
  Rng rng(20261014);
  for (GraphKind kind :
       {GraphKind::path, GraphKind::cycle, GraphKind::complete, GraphKind::star, GraphKind::random_gnm}) {
    for (std::size_t n : sizes) {
      if (kind == GraphKind::cycle && n < 3) continue;
      std::optional<std::size_t> m;
      if (kind == GraphKind::random_gnm) {
        const std::size_t max_m = n * (n - 1) / 2;
        m = std::min(max_m, n - 1 + static_cast<std::size_t>(rng.below(2 * n + 1)));
      }
      out.push_back(std::make_shared<const Graph>(generate(kind, n, m, rng.next())));
    }
  }
  return out;
}

std::vector<MatrixRun> run_matrix() {
  std::vector<MatrixRun> runs;
  const auto graphs = matrix_graphs();
  const auto policies = all_policies();
  std::uint64_t seed = 1;
  for (const auto& g : graphs) {
    for (const PolicySpec& p : policies) {
      ++seed;
      Configuration c0 = random_configuration(*g, mix_seed(seed, 0x696e6974));
      std::ostringstream label;
      label << "n=" << g->node_count() << " m=" << g->edge_count() << " policy=" << to_string(p) << " seed=" << seed;
      runs.push_back({label.str(), run(g, std::move(c0), p, seed)});
    }
  }
  return runs;
}

// --- criteria ---

Outcome stabilization(const std::vector<MatrixRun>& runs, double elapsed) {
  Outcome o;
  for (const auto& r : runs) {
    const Graph& g = *r.trace.graph;
    if (!r.trace.stable() || !is_stable(r.trace.final_config, g)) {
      o.fail("not stable: " + r.label);
      continue;
    }
    const auto verdict = check_maximal(extract_matching(r.trace.final_config, g), g);
    if (!verdict.ok()) o.fail("not maximal: " + r.label);
  }
  if (runs.size() < 1000) o.fail("only " + std::to_string(runs.size()) + " runs");
  if (elapsed >= 60.0) o.fail("matrix took " + std::to_string(elapsed) + " s (limit 60 s)");
  if (o.pass) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%zu runs, %.1f s", runs.size(), elapsed);
    o.detail = buf;
  }
  return o;
}

Outcome step_bounds(const std::vector<MatrixRun>& runs) {
  Outcome o;
  std::size_t worst_pct = 0;
  for (const auto& r : runs) {
    const std::size_t bound = step_bound(*r.trace.graph);
    if (r.trace.steps.size() > bound) {
      o.fail(std::to_string(r.trace.steps.size()) + " > " + std::to_string(bound) + ": " + r.label);
    }
    if (bound) worst_pct = std::max(worst_pct, 100 * r.trace.steps.size() / bound);
  }
  if (o.pass) o.detail = "max steps/bound " + std::to_string(worst_pct) + "%";
  return o;
}

Outcome round_bounds(const std::vector<MatrixRun>& runs) {
  Outcome o;
  std::size_t checked = 0, worst = 0;
  for (const auto& r : runs) {
    if (!is_fair(parse_policy(r.trace.policy).kind)) continue;
    ++checked;
    const std::size_t rounds = count_rounds(r.trace).rounds;
    const std::size_t bound = round_bound(*r.trace.graph);
    worst = std::max(worst, rounds);
    if (rounds > bound) o.fail(std::to_string(rounds) + " > " + std::to_string(bound) + ": " + r.label);
  }
  if (checked == 0) o.fail("no fair traces");
  if (o.pass) o.detail = std::to_string(checked) + " fair traces, max rounds " + std::to_string(worst);
  return o;
}

Outcome exhaustive() {
  Outcome o;
  const auto t0 = Clock::now();
  std::size_t graphs = 0, roots = 0, states = 0, worst_ratio_num = 0, worst_ratio_den = 1;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const Graph& g : connected_graphs(n)) {
      ++graphs;
      SearchOptions opts;
      opts.branch_marriage = true;
      opts.budget = 50'000'000;
      const SearchResult r = exhaustive_search(g, std::nullopt, opts);
      roots += r.initial_configurations;
      states += r.explored_states;
      const std::string where = "graph " + graph_hash(g) + " (n=" + std::to_string(n) + ")";
      if (!r.complete) o.fail("incomplete: " + where);
      if (r.livelock) o.fail("livelock: " + where);
      if (r.bound_exceeded()) o.fail(std::to_string(r.worst_steps) + " > " + std::to_string(r.bound) + ": " + where);
      if (!r.all_leaves_maximal) o.fail("non-maximal leaf: " + where + " " + r.failure);
      if (r.worst_steps * worst_ratio_den > worst_ratio_num * r.bound) {
        worst_ratio_num = r.worst_steps;
        worst_ratio_den = r.bound;
      }
    }
  }
  const double elapsed = seconds_since(t0);
  if (elapsed >= 600.0) o.fail("search took " + std::to_string(elapsed) + " s (limit 600 s)");
  if (o.pass) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu graphs, %zu roots, %zu states, tightest worst/bound %zu/%zu, %.1f s", graphs,
                  roots, states, worst_ratio_num, worst_ratio_den, elapsed);
    o.detail = buf;
  }
  return o;
}

Trace fig1_trace() {
  auto g = std::make_shared<const Graph>(read_graph(slurp(ssmatch::testing::fixture("fig1.g"))));
  Configuration c0 = read_configuration(slurp(ssmatch::testing::fixture("fig1.cfg")), *g);
  return run(g, c0, parse_policy("sequential_adversarial_heuristic:fig1"), 0);
}

// Each negative control must fail the named check at the expected step.
void negative_controls(Outcome& o) {
  auto expect = [&](const std::string& what, const Trace& t, const std::string& check,
                    std::optional<std::size_t> step) {
    const AuditReport r = audit_trace(t);
    const CheckResult& c = r.check(check);
    if (c.verdict != Verdict::fail) {
      o.fail("control '" + what + "' not caught by " + check);
    } else if (c.step_index != step) {
      o.fail("control '" + what + "' localized at step " + (c.step_index ? std::to_string(*c.step_index) : "-"));
    }
  };

  const Trace fig1 = fig1_trace();
  {
    auto steps = moves_of(fig1);
    steps.insert(steps.begin() + 2, {Move{N(0), Rule::Update, {}}});
    steps.insert(steps.begin() + 2, {Move{N(0), Rule::Update, {}}});
    expect("third Update", forge(fig1, steps), "update_limit", 3);
  }
  {
    auto steps = moves_of(fig1);
    steps.push_back({Move{N(1), Rule::Abandonment, {}}});
    expect("divorce", forge(fig1, steps), "marriage_persistence", 4);
    expect("divorce", forge(fig1, steps), "move_legality", 4);
  }
  {
    auto g = std::make_shared<const Graph>(generate(GraphKind::path, 2));
    Trace base = run(g, all_null(*g), parse_policy("sequential_random"), 0);
    std::vector<std::vector<Move>> steps;
    for (int k = 0; k < 2; ++k) {
      steps.push_back({Move{N(0), Rule::Seduction, {}}});
      steps.push_back({Move{N(0), Rule::Abandonment, {}}});
    }
    expect("edge churn", forge(base, steps), "edge_move_limit", 2);
  }
  {
    auto steps = moves_of(fig1);
    steps.pop_back();
    expect("truncated", forge(fig1, steps), "stabilized", std::nullopt);
  }
  {
    Trace t = fig1;
    t.final_config[N(2)].m = true;
    bool caught = false;
    try {
      (void)audit_trace(read_trace(write_trace(t)));
    } catch (const CorruptTrace&) {
      caught = true;
    }
    if (!caught) o.fail("tampered final configuration not rejected");
  }
}

Outcome invariants(const std::vector<MatrixRun>& runs) {
  Outcome o;
  for (const auto& r : runs) {
    const AuditReport rep = audit_trace(r.trace);
    if (!rep.passed()) {
      std::string failed;
      for (const auto& c : rep.checks) {
        if (c.verdict == Verdict::fail) failed += " " + c.name;
      }
      o.fail("audit failed (" + failed.substr(1) + "): " + r.label);
    }
  }
  negative_controls(o);
  if (o.pass) o.detail = std::to_string(runs.size()) + " traces audited, 6 forged controls localized";
  return o;
}

Outcome golden() {
  Outcome o;
  const Trace t = fig1_trace();
  const std::vector<std::pair<std::uint32_t, Rule>> want = {
      {0, Rule::Marriage}, {0, Rule::Update}, {1, Rule::Update}, {2, Rule::Abandonment}};
  if (t.steps.size() != want.size()) {
    o.fail("expected 4 steps, got " + std::to_string(t.steps.size()));
    return o;
  }
  for (std::size_t s = 0; s < want.size(); ++s) {
    const auto& mv = t.steps[s].moves;
    if (mv.size() != 1 || mv[0].node.value != want[s].first || mv[0].rule != want[s].second) {
      o.fail("step " + std::to_string(s) + " differs");
    }
  }
  const auto cs = replay(t);
  // After Marriage: i points at its larger suitor j.
  if (cs[1][N(0)].p != N(1)) o.fail("Marriage did not pick the larger suitor");
  // After both Updates: spouses flagged, k still points at i.
  if (!cs[3][N(0)].m || !cs[3][N(1)].m || cs[3][N(2)].p != N(0)) o.fail("state after the Updates differs");
  Configuration d(3);
  d[N(0)] = {N(1), true};
  d[N(1)] = {N(0), true};
  d[N(2)] = {std::nullopt, false};
  if (!(t.final_config == d)) o.fail("final configuration differs from the expected one: " + write_configuration(t.final_config));
  if (!t.stable()) o.fail("not stable");
  if (o.pass) o.detail = "Marriage(i->j), Update(i), Update(j), Abandonment(k)";
  return o;
}

Outcome determinism() {
  Outcome o;
  std::size_t traces = 0;
  for (GraphKind kind : {GraphKind::random_gnm, GraphKind::cycle, GraphKind::complete}) {
    const std::size_t n = 40;
    std::optional<std::size_t> m;
    if (kind == GraphKind::random_gnm) m = 90;
    for (const PolicySpec& p : all_policies()) {
      for (std::uint64_t seed : {3ull, 1234567ull}) {
        auto once = [&] {
          auto g = std::make_shared<const Graph>(generate(kind, n, m, seed));
          return write_trace(run(g, random_configuration(*g, seed), p, seed));
        };
        ++traces;
        if (once() != once()) o.fail("trace differs: " + std::string(to_string(kind)) + " " + to_string(p));
      }
    }
  }
  ExperimentSpec spec;
  spec.graphs = {GraphSource{std::nullopt, GraphKind::random_gnm, 30, 60, 5},
                 GraphSource{std::nullopt, GraphKind::star, 12, std::nullopt, 0}};
  spec.init.kind = InitSource::Kind::random;
  spec.policies = all_policies();
  spec.seeds = {1, 2, 3};
  spec.repetitions = 2;
  spec.threads = 1;
  const std::string a = summary_table(run_experiment(spec));
  spec.threads = 4;
  const std::string b = summary_table(run_experiment(spec));
  const std::string c = summary_table(run_experiment(parse_experiment(write_experiment(spec))));
  if (a != b) o.fail("summary depends on thread count");
  if (a != c) o.fail("summary differs after spec round trip");
  if (o.pass) o.detail = std::to_string(traces) + " trace pairs and 3 experiment reruns identical";
  return o;
}

Outcome broken_variant() {
  Outcome o;
  std::string evidence;
  for (const char* name : {"triangle.g", "c4.g"}) {
    auto g = std::make_shared<const Graph>(read_graph(slurp(ssmatch::testing::fixture(name))));
    SearchOptions opts;
    opts.variant = Variant::unordered_seduction;
    const SearchResult broken = exhaustive_search(*g, all_null(*g), opts);
    const SearchResult sound = exhaustive_search(*g, all_null(*g));
    if (!sound.ok()) o.fail(std::string("standard rules fail on ") + name);
    if (!broken.livelock && !broken.bound_exceeded()) {
      o.fail(std::string("broken variant not detected by search on ") + name);
      continue;
    }
    // Turn the search witness into a capped trace and audit it.
    const Trace w = witness_trace(g, broken, Variant::unordered_seduction);
    const auto cs = replay(w);
    std::size_t start = 0;
    while (start + 1 < cs.size() && !(cs[start] == cs.back())) ++start;
    if (start + 1 >= cs.size()) {
      o.fail(std::string("witness on ") + name + " does not close a cycle");
      continue;
    }
    auto steps = moves_of(w);
    const std::vector<std::vector<Move>> loop(steps.begin() + static_cast<long>(start), steps.end());
    while (steps.size() <= step_bound(*g)) steps.insert(steps.end(), loop.begin(), loop.end());
    Trace capped = forge(w, steps);
    capped.termination = Termination::step_cap;
    const AuditReport rep = audit_trace(read_trace(write_trace(capped)));
    const bool overrun = rep.check("step_bound").verdict == Verdict::fail;
    const bool unstable = rep.check("stabilized").verdict == Verdict::fail;
    if (!overrun || !unstable) o.fail(std::string("audit misses the capped livelock on ") + name);
    evidence += std::string(evidence.empty() ? "" : "; ") + name + ": livelock cycle of " +
                std::to_string(loop.size()) + " steps, audit fails step_bound+stabilized";
  }
  if (o.pass) o.detail = evidence;
  return o;
}

}  // namespace

int main() {
  try {
    const auto t0 = Clock::now();
    const auto runs = run_matrix();
    const double matrix_time = seconds_since(t0);
    report(1, "every run stabilizes to a maximal matching", stabilization(runs, matrix_time));
    report(2, "steps <= 3n+2m in every trace", step_bounds(runs));
    report(3, "rounds <= 2n+1 under fair and synchronous daemons", round_bounds(runs));
    report(4, "exhaustive search over all connected graphs with n <= 4", exhaustive());
    report(5, "trace audit passes and forged traces are localized", invariants(runs));
    report(6, "example scenario golden trace", golden());
    report(7, "byte-identical traces and experiment summaries", determinism());
    report(8, "unordered Seduction is detected", broken_variant());
  } catch (const std::exception& e) {
    std::printf("acceptance aborted: %s\n", e.what());
    return 2;
  }
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
