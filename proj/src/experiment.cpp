#include "ssmatch/experiment.hpp"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

#include "ssmatch/audit.hpp"
#include "ssmatch/config_io.hpp"
#include "ssmatch/engine.hpp"
#include "ssmatch/rng.hpp"
#include "ssmatch/trace_io.hpp"

namespace ssmatch {

using json = nlohmann::ordered_json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot read " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

std::string resolve(const std::string& path, const std::string& base) {
  const std::filesystem::path p(path);
  return p.is_absolute() ? path : (std::filesystem::path(base) / p).lexically_normal().string();
}

}  // namespace

std::string GraphSource::label() const {
  if (file) return *file;
  std::string out = std::string(to_string(kind)) + "(n=" + std::to_string(n);
  if (m) out += ",m=" + std::to_string(*m);
  if (kind == GraphKind::random_gnm) out += ",seed=" + std::to_string(seed);
  return out + ")";
}

Graph GraphSource::load() const {
  if (file) return read_graph(slurp(*file));
  return generate(kind, n, m, seed);
}

bool ExperimentResult::all_passed() const {
  return std::all_of(cells.begin(), cells.end(), [](const CellResult& c) { return c.passed; });
}

std::uint64_t cell_seed(std::uint64_t seed, std::size_t repetition) {
  return repetition == 0 ? seed : mix_seed(seed, repetition);
}

ExperimentSpec parse_experiment(std::string_view json_text, const std::string& base_dir) {
  ExperimentSpec spec;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("experiment spec: ") + e.what());
  }
  try {
    for (const json& gj : doc.at("graphs")) {
      GraphSource src;
      if (gj.contains("file")) {
        src.file = resolve(gj.at("file").get<std::string>(), base_dir);
      } else {
        src.kind = parse_graph_kind(gj.at("kind").get<std::string>());
        src.n = gj.at("n").get<std::size_t>();
        if (gj.contains("m")) src.m = gj.at("m").get<std::size_t>();
        src.seed = gj.value("seed", std::uint64_t{0});
      }
      spec.graphs.push_back(std::move(src));
    }
    if (doc.contains("init")) {
      const json& ij = doc.at("init");
      if (ij.is_object()) {
        spec.init.kind = InitSource::Kind::file;
        spec.init.file = resolve(ij.at("file").get<std::string>(), base_dir);
      } else if (ij.get<std::string>() == "allnull") {
        spec.init.kind = InitSource::Kind::all_null;
      } else if (ij.get<std::string>() == "random") {
        spec.init.kind = InitSource::Kind::random;
      } else {
        throw std::invalid_argument("init must be \"allnull\", \"random\" or {\"file\": ...}");
      }
    }
    for (const json& pj : doc.at("policies")) spec.policies.push_back(parse_policy(pj.get<std::string>()));
    const json& sj = doc.at("seeds");
    if (sj.is_array()) {
      for (const json& s : sj) spec.seeds.push_back(s.get<std::uint64_t>());
    } else {
      const auto from = sj.value("from", std::uint64_t{0});
      const auto count = sj.at("count").get<std::uint64_t>();
      for (std::uint64_t k = 0; k < count; ++k) spec.seeds.push_back(from + k);
    }
    spec.repetitions = doc.value("repetitions", std::size_t{1});
    spec.output = doc.contains("output") ? resolve(doc.at("output").get<std::string>(), base_dir) : std::string();
    spec.threads = doc.value("threads", std::size_t{1});
    spec.write_traces = doc.value("write_traces", false);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("experiment spec: ") + e.what());
  } catch (const GraphError& e) {
    throw std::invalid_argument(std::string("experiment spec: ") + e.what());
  }
  if (spec.graphs.empty()) throw std::invalid_argument("experiment spec: empty graph list");
  if (spec.policies.empty()) throw std::invalid_argument("experiment spec: empty policy list");
  if (spec.seeds.empty()) throw std::invalid_argument("experiment spec: empty seed list");
  if (spec.repetitions == 0) throw std::invalid_argument("experiment spec: repetitions must be positive");
  if (spec.threads == 0) spec.threads = 1;
  return spec;
}

std::string write_experiment(const ExperimentSpec& spec) {
  json doc;
  json graphs = json::array();
  for (const GraphSource& g : spec.graphs) {
    json gj;
    if (g.file) {
      gj["file"] = *g.file;
    } else {
      gj["kind"] = to_string(g.kind);
      gj["n"] = g.n;
      if (g.m) gj["m"] = *g.m;
      gj["seed"] = g.seed;
    }
    graphs.push_back(std::move(gj));
  }
  doc["graphs"] = std::move(graphs);
  switch (spec.init.kind) {
    case InitSource::Kind::all_null: doc["init"] = "allnull"; break;
    case InitSource::Kind::random: doc["init"] = "random"; break;
    case InitSource::Kind::file: doc["init"] = json{{"file", spec.init.file}}; break;
  }
  json policies = json::array();
  for (const PolicySpec& p : spec.policies) policies.push_back(to_string(p));
  doc["policies"] = std::move(policies);
  doc["seeds"] = spec.seeds;
  doc["repetitions"] = spec.repetitions;
  if (!spec.output.empty()) doc["output"] = spec.output;
  doc["threads"] = spec.threads;
  doc["write_traces"] = spec.write_traces;
  return doc.dump(2) + '\n';
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  ExperimentResult result;
  std::vector<std::shared_ptr<const Graph>> graphs;
  for (const GraphSource& src : spec.graphs) {
    graphs.push_back(std::make_shared<const Graph>(src.load()));
    result.graph_labels.push_back(src.label());
  }
  for (const PolicySpec& p : spec.policies) result.policy_labels.push_back(to_string(p));
  const std::string init_text = spec.init.kind == InitSource::Kind::file ? slurp(spec.init.file) : std::string();

  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    for (std::size_t pi = 0; pi < spec.policies.size(); ++pi) {
      for (std::uint64_t seed : spec.seeds) {
        for (std::size_t rep = 0; rep < spec.repetitions; ++rep) {
          CellResult c;
          c.graph = gi;
          c.policy = pi;
          c.seed = seed;
          c.repetition = rep;
          c.n = graphs[gi]->node_count();
          c.m = graphs[gi]->edge_count();
          result.cells.push_back(c);
        }
      }
    }
  }

  auto run_cell = [&](CellResult& cell) {
    const auto& g = graphs[cell.graph];
    const std::uint64_t seed = cell_seed(cell.seed, cell.repetition);
    Configuration c0;
    switch (spec.init.kind) {
      case InitSource::Kind::all_null: c0 = all_null(*g); break;
      case InitSource::Kind::random: c0 = random_configuration(*g, mix_seed(seed, 0x696e6974)); break;
      case InitSource::Kind::file: c0 = read_configuration(init_text, *g); break;
    }
    const Trace t = run(g, std::move(c0), spec.policies[cell.policy], seed);
    const AuditReport report = audit_trace(t);
    cell.steps = t.steps.size();
    std::size_t moves = 0;
    for (const auto& s : t.steps) moves += s.moves.size();
    cell.moves = moves;
    cell.rounds = t.steps.empty() ? 0 : t.steps.back().round_index + 1;
    cell.stable = t.stable();
    cell.passed = report.passed();
    for (const CheckResult& ch : report.checks) {
      if (ch.verdict != Verdict::fail) continue;
      if (!cell.failed_checks.empty()) cell.failed_checks += ',';
      cell.failed_checks += ch.name;
    }
    if (spec.write_traces) cell.trace = write_trace(t);
  };

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < result.cells.size();) {
      try {
        run_cell(result.cells[k]);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min(spec.threads, std::max<std::size_t>(1, result.cells.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t k = 0; k < threads; ++k) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
  return result;
}

namespace {

std::string fixed3(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

}  // namespace

std::string summary_table(const ExperimentResult& r) {
  std::ostringstream os;
  os << "graph\tpolicy\tn\tm\truns\tfailures\tmax_steps\tmean_steps\tstep_bound\tmax_rounds\tmean_rounds\tround_bound\n";
  for (std::size_t gi = 0; gi < r.graph_labels.size(); ++gi) {
    for (std::size_t pi = 0; pi < r.policy_labels.size(); ++pi) {
      std::size_t runs = 0, failures = 0, max_steps = 0, max_rounds = 0, n = 0, m = 0;
      double sum_steps = 0, sum_rounds = 0;
      for (const CellResult& c : r.cells) {
        if (c.graph != gi || c.policy != pi) continue;
        ++runs;
        failures += c.passed ? 0 : 1;
        max_steps = std::max(max_steps, c.steps);
        max_rounds = std::max(max_rounds, c.rounds);
        sum_steps += static_cast<double>(c.steps);
        sum_rounds += static_cast<double>(c.rounds);
        n = c.n;
        m = c.m;
      }
      if (runs == 0) continue;
      const bool fair = is_fair(parse_policy(r.policy_labels[pi]).kind);
      os << r.graph_labels[gi] << '\t' << r.policy_labels[pi] << '\t' << n << '\t' << m << '\t' << runs << '\t'
         << failures << '\t' << max_steps << '\t' << fixed3(sum_steps / static_cast<double>(runs)) << '\t'
         << 3 * n + 2 * m << '\t' << max_rounds << '\t' << fixed3(sum_rounds / static_cast<double>(runs)) << '\t'
         << (fair ? std::to_string(2 * n + 1) : std::string("-")) << '\n';
    }
  }
  return os.str();
}

std::string cell_table(const ExperimentResult& r) {
  std::ostringstream os;
  os << "graph\tpolicy\tseed\trepetition\tsteps\tmoves\trounds\tstable\taudit\tfailed_checks\n";
  for (const CellResult& c : r.cells) {
    os << r.graph_labels[c.graph] << '\t' << r.policy_labels[c.policy] << '\t' << c.seed << '\t' << c.repetition
       << '\t' << c.steps << '\t' << c.moves << '\t' << c.rounds << '\t' << (c.stable ? "yes" : "no") << '\t'
       << (c.passed ? "pass" : "fail") << '\t' << (c.failed_checks.empty() ? "-" : c.failed_checks) << '\n';
  }
  return os.str();
}

}  // namespace ssmatch
