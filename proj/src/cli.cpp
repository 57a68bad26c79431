#include "ssmatch/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>

#include "ssmatch/audit.hpp"
#include "ssmatch/config_io.hpp"
#include "ssmatch/dot.hpp"
#include "ssmatch/experiment.hpp"
#include "ssmatch/generate.hpp"
#include "ssmatch/matching.hpp"
#include "ssmatch/search.hpp"
#include "ssmatch/stepper.hpp"
#include "ssmatch/trace_io.hpp"

namespace ssmatch {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot read " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) throw UsageError("cannot write " + path);
}

std::shared_ptr<const Graph> load_graph(const std::string& path) {
  return std::make_shared<const Graph>(read_graph(slurp(path)));
}

Configuration load_init(const std::string& source, const Graph& g, std::uint64_t seed) {
  if (source == "allnull") return all_null(g);
  if (source == "random") return random_configuration(g, seed);
  return read_configuration(slurp(source), g);
}

void print_moves(const Trace& t, std::ostream& out) {
  for (const StepRecord& s : t.steps) {
    out << "step " << s.index << " (round " << s.round_index << "):";
    for (const Move& mv : s.moves) {
      out << ' ' << to_string(mv.rule) << '(' << mv.node << ')';
    }
    out << '\n';
  }
}

void print_failures(const AuditReport& r, std::ostream& out) {
  for (const CheckResult& c : r.checks) {
    if (c.verdict != Verdict::fail) continue;
    out << "FAIL " << c.name << ": " << c.detail;
    if (c.config_index) out << " [configuration " << *c.config_index << "]";
    out << '\n';
  }
}

struct RunArgs {
  std::string graph, init = "allnull", policy, variant = "standard", trace_path = "trace.jsonl",
                     report_path = "audit.txt", replay;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> init_seed;
  std::size_t max_steps = 0;
  bool verbose = false;
};

int cmd_run(const RunArgs& a, std::ostream& out) {
  std::shared_ptr<const Graph> g;
  std::optional<Trace> recorded;
  if (!a.replay.empty()) recorded = read_trace(slurp(a.replay));
  if (!a.graph.empty()) {
    g = load_graph(a.graph);
  } else if (recorded) {
    g = recorded->graph;
  } else {
    throw UsageError("--graph is required");
  }

  Configuration c0;
  if (recorded && a.init == "allnull" && a.graph.empty()) {
    c0 = recorded->initial;
  } else {
    c0 = load_init(a.init, *g, a.init_seed.value_or(mix_seed(a.seed, 0x696e6974)));
  }

  RunOptions opts;
  opts.max_steps = a.max_steps;
  opts.variant = parse_variant(a.variant);
  Trace t;
  if (recorded) {
    ScheduleDaemon daemon(schedule_of(*recorded));
    opts.max_steps = std::max(opts.max_steps, recorded->steps.size() + 1);
    t = run(g, std::move(c0), daemon, a.seed, opts);
  } else {
    if (a.policy.empty()) throw UsageError("--policy is required");
    t = run(g, std::move(c0), parse_policy(a.policy), a.seed, opts);
  }

  const AuditReport report = audit_trace(t);
  spit(a.trace_path, write_trace(t));
  spit(a.report_path, write_report(report));

  if (a.verbose) print_moves(t, out);
  std::size_t moves = 0;
  for (const auto& s : t.steps) moves += s.moves.size();
  out << "steps=" << t.steps.size() << " moves=" << moves
      << " rounds=" << (t.steps.empty() ? 0 : t.steps.back().round_index + 1)
      << " termination=" << to_string(t.termination) << " step_bound=" << step_bound(*g)
      << " round_bound=" << round_bound(*g) << '\n';
  out << "audit: " << (report.passed() ? "PASS" : "FAIL") << '\n';
  print_failures(report, out);
  return report.passed() ? kExitOk : kExitAuditFailure;
}

int cmd_verify(const std::string& path, const std::string& report_path, std::ostream& out, std::ostream& err) {
  const Trace t = read_trace(slurp(path));
  AuditReport report;
  try {
    report = audit_trace(t);
  } catch (const CorruptTrace& e) {
    err << e.what() << '\n';
    return kExitAuditFailure;
  }
  const std::string text = write_report(report);
  if (!report_path.empty()) spit(report_path, text);
  out << text;
  return report.passed() ? kExitOk : kExitAuditFailure;
}

struct SearchArgs {
  std::string graph, init = "allnull", variant = "standard", witness;
  bool branch_marriage = false;
  std::size_t budget = 1'000'000;
  std::uint64_t seed = 0;
};

int cmd_search(const SearchArgs& a, std::ostream& out, std::ostream& err) {
  const auto g = load_graph(a.graph);
  std::optional<Configuration> c0;
  if (a.init == "all") {
    if (g->node_count() > 4) {
      err << "warning: all-configurations search on " << g->node_count() << " nodes ("
          << configuration_count(*g) << " roots) may exhaust the budget\n";
    }
  } else {
    c0 = load_init(a.init, *g, a.seed);
  }
  SearchOptions opts;
  opts.branch_marriage = a.branch_marriage;
  opts.budget = a.budget;
  opts.variant = parse_variant(a.variant);
  const SearchResult r = exhaustive_search(*g, c0, opts);

  out << "worst_steps=" << r.worst_steps << " bound=" << r.bound << " complete=" << (r.complete ? "yes" : "no")
      << " livelock=" << (r.livelock ? "yes" : "no") << " leaves_maximal=" << (r.all_leaves_maximal ? "yes" : "no")
      << " explored=" << r.explored_states << " roots=" << r.initial_configurations
      << " stable_leaves=" << r.stable_leaves << " branch_marriage=" << (r.branch_marriage ? "yes" : "no") << '\n';
  if (!r.failure.empty()) out << "failure: " << r.failure << '\n';
  if (r.complete || r.livelock) {
    out << "witness initial configuration:\n" << write_configuration(r.witness_initial);
    for (std::size_t s = 0; s < r.witness_schedule.size(); ++s) {
      out << "witness step " << s << ":";
      for (NodeId v : r.witness_schedule[s].nodes) out << ' ' << v;
      for (const auto& [who, suitor] : r.witness_schedule[s].marriage_choices) {
        out << " [" << who << " marries " << suitor << "]";
      }
      out << '\n';
    }
    if (!a.witness.empty()) {
      spit(a.witness, write_trace(witness_trace(g, r, opts.variant)));
      out << "witness trace: " << a.witness << '\n';
    }
  }
  if (!r.complete && !r.livelock) return kExitIncomplete;
  return r.ok() ? kExitOk : kExitAuditFailure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulator and verifier for a self-stabilizing maximal matching protocol"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a connected graph file");
  std::string gen_kind, gen_out;
  std::size_t gen_n = 0;
  std::optional<std::size_t> gen_m;
  std::uint64_t gen_seed = 0;
  gen->add_option("--kind", gen_kind, "path | cycle | complete | random_gnm | star")->required();
  gen->add_option("--n", gen_n, "Node count")->required();
  gen->add_option("--m", gen_m, "Edge count (random_gnm)");
  gen->add_option("--seed", gen_seed, "Random seed");
  gen->add_option("--out,-o", gen_out, "Output file (default: stdout)");

  // run
  RunArgs ra;
  auto* run_cmd = app.add_subcommand("run", "Run the protocol under a daemon policy and audit the trace");
  run_cmd->footer(policy_help());
  run_cmd->add_option("--graph", ra.graph, "Graph file");
  run_cmd->add_option("--init", ra.init, "allnull | random | configuration file")->capture_default_str();
  run_cmd->add_option("--init-seed", ra.init_seed, "Seed of a random initial configuration");
  run_cmd->add_option("--policy", ra.policy, "Daemon policy, see below");
  run_cmd->add_option("--seed", ra.seed, "Policy seed")->capture_default_str();
  run_cmd->add_option("--max-steps", ra.max_steps, "Step cap (default 3n+2m+1)");
  run_cmd->add_option("--variant", ra.variant, "standard | unordered_seduction")->capture_default_str();
  run_cmd->add_option("--trace", ra.trace_path, "Trace output")->capture_default_str();
  run_cmd->add_option("--report", ra.report_path, "Audit report output")->capture_default_str();
  run_cmd->add_option("--replay", ra.replay, "Re-execute the schedule of a trace file");
  run_cmd->add_flag("--verbose,-v", ra.verbose, "Print every step");

  // experiment
  std::string exp_file, exp_output;
  std::optional<std::size_t> exp_threads;
  auto* exp = app.add_subcommand("experiment", "Run a graphs x policies x seeds matrix from a JSON spec");
  exp->add_option("spec", exp_file, "Experiment spec (JSON)")->required();
  exp->add_option("--output", exp_output, "Override the spec's output directory");
  exp->add_option("--threads", exp_threads, "Override the spec's thread count");

  // search
  SearchArgs sa;
  auto* search = app.add_subcommand("search", "Exhaustive worst-case schedule search on a small graph");
  search->add_option("--graph", sa.graph, "Graph file")->required();
  search->add_option("--init", sa.init, "all | allnull | random | configuration file")->capture_default_str();
  search->add_option("--seed", sa.seed, "Seed for --init random");
  search->add_flag("--branch-marriage", sa.branch_marriage, "Branch over every Marriage suitor");
  search->add_option("--budget", sa.budget, "Maximum distinct configurations")->capture_default_str();
  search->add_option("--variant", sa.variant, "standard | unordered_seduction")->capture_default_str();
  search->add_option("--witness", sa.witness, "Write the worst schedule as a trace file");

  // step
  std::string step_graph, step_init = "allnull", step_save, step_variant = "standard";
  std::uint64_t step_seed = 0;
  auto* step = app.add_subcommand("step", "Interactive stepper: you are the daemon");
  step->add_option("--graph", step_graph, "Graph file")->required();
  step->add_option("--init", step_init, "allnull | random | configuration file")->capture_default_str();
  step->add_option("--seed", step_seed, "Seed for 'rand' and --init random");
  step->add_option("--variant", step_variant, "standard | unordered_seduction")->capture_default_str();
  step->add_option("--save", step_save, "Write the session as a trace file when it ends");

  // export-dot
  std::string dot_trace, dot_graph, dot_config, dot_out;
  auto* dot = app.add_subcommand("export-dot", "Render a configuration (or a trace's final one) as Graphviz");
  dot->add_option("--trace", dot_trace, "Trace file");
  dot->add_option("--graph", dot_graph, "Graph file (with --config)");
  dot->add_option("--config", dot_config, "Configuration file");
  dot->add_option("--out,-o", dot_out, "Output file (default: stdout)");

  // verify
  std::string verify_trace, verify_report;
  auto* verify = app.add_subcommand("verify", "Audit an existing trace file");
  verify->add_option("--trace", verify_trace, "Trace file")->required();
  verify->add_option("--report", verify_report, "Also write the report here");

  std::vector<const char*> argv{"ssmatch"};
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (gen->parsed()) {
      const Graph g = generate(parse_graph_kind(gen_kind), gen_n, gen_m, gen_seed);
      if (gen_out.empty()) {
        out << write_graph(g);
        err << "n=" << g.node_count() << " m=" << g.edge_count() << '\n';
      } else {
        spit(gen_out, write_graph(g));
        out << "n=" << g.node_count() << " m=" << g.edge_count() << '\n';
      }
      return kExitOk;
    }
    if (run_cmd->parsed()) return cmd_run(ra, out);
    if (exp->parsed()) {
      const auto base = std::filesystem::path(exp_file).parent_path().string();
      ExperimentSpec spec = parse_experiment(slurp(exp_file), base.empty() ? "." : base);
      if (!exp_output.empty()) spec.output = exp_output;
      if (exp_threads) spec.threads = *exp_threads;
      const ExperimentResult r = run_experiment(spec);
      const std::string summary = summary_table(r);
      if (!spec.output.empty()) {
        std::filesystem::create_directories(spec.output);
        const std::filesystem::path dir(spec.output);
        spit((dir / "summary.tsv").string(), summary);
        spit((dir / "cells.tsv").string(), cell_table(r));
        spit((dir / "spec.json").string(), write_experiment(spec));
        if (spec.write_traces) {
          std::filesystem::create_directories(dir / "traces");
          for (std::size_t k = 0; k < r.cells.size(); ++k) {
            spit((dir / "traces" / ("cell" + std::to_string(k) + ".jsonl")).string(), r.cells[k].trace);
          }
        }
      }
      out << summary;
      const std::size_t failed = static_cast<std::size_t>(
          std::count_if(r.cells.begin(), r.cells.end(), [](const CellResult& c) { return !c.passed; }));
      out << "runs=" << r.cells.size() << " failures=" << failed << '\n';
      return failed == 0 ? kExitOk : kExitAuditFailure;
    }
    if (search->parsed()) return cmd_search(sa, out, err);
    if (step->parsed()) {
      const auto g = load_graph(step_graph);
      Stepper stepper(g, load_init(step_init, *g, step_seed), parse_variant(step_variant), step_seed);
      stepper.run(in, out);
      if (!step_save.empty()) {
        spit(step_save, write_trace(stepper.trace()));
        out << "saved " << step_save << '\n';
      }
      return kExitOk;
    }
    if (dot->parsed()) {
      std::string text;
      if (!dot_trace.empty()) {
        const Trace t = read_trace(slurp(dot_trace));
        text = export_dot(t.final_config, *t.graph);
      } else if (!dot_graph.empty() && !dot_config.empty()) {
        const auto g = load_graph(dot_graph);
        text = export_dot(read_configuration(slurp(dot_config), *g), *g);
      } else {
        throw UsageError("export-dot needs --trace or --graph with --config");
      }
      if (dot_out.empty()) {
        out << text;
      } else {
        spit(dot_out, text);
      }
      return kExitOk;
    }
    if (verify->parsed()) return cmd_verify(verify_trace, verify_report, out, err);
  } catch (const CorruptTrace& e) {
    err << "error: " << e.what() << '\n';
    return kExitAuditFailure;
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace ssmatch
