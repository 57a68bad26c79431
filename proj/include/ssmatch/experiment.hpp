#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ssmatch/generate.hpp"
#include "ssmatch/scheduler.hpp"

namespace ssmatch {

struct GraphSource {
  std::optional<std::string> file;
  GraphKind kind = GraphKind::path;
  std::size_t n = 1;
  std::optional<std::size_t> m;
  std::uint64_t seed = 0;

  std::string label() const;
  Graph load() const;
};

struct InitSource {
  enum class Kind { all_null, random, file } kind = Kind::random;
  std::string file;
};

/// A full experiment matrix: graphs x policies x seeds x repetitions.
struct ExperimentSpec {
  std::vector<GraphSource> graphs;
  InitSource init;
  std::vector<PolicySpec> policies;
  std::vector<std::uint64_t> seeds;
  std::size_t repetitions = 1;
  std::string output;
  std::size_t threads = 1;
  bool write_traces = false;
};

/// JSON document; relative file paths resolve against base_dir. Throws
/// std::invalid_argument on missing or inconsistent fields.
ExperimentSpec parse_experiment(std::string_view json_text, const std::string& base_dir = ".");
std::string write_experiment(const ExperimentSpec& spec);

struct CellResult {
  std::size_t graph = 0;
  std::size_t policy = 0;
  std::uint64_t seed = 0;
  std::size_t repetition = 0;
  std::size_t n = 0, m = 0;
  std::size_t steps = 0, moves = 0, rounds = 0;
  bool stable = false;
  bool passed = false;
  std::string failed_checks;
  std::string trace;  // only when write_traces
};

struct ExperimentResult {
  std::vector<std::string> graph_labels;
  std::vector<std::string> policy_labels;
  std::vector<CellResult> cells;
  bool all_passed() const;
};

/// Seed of one matrix cell; also used for its random initial configuration.
std::uint64_t cell_seed(std::uint64_t seed, std::size_t repetition);

ExperimentResult run_experiment(const ExperimentSpec& spec);

/// Per (graph, policy) aggregates, tab-separated, deterministic.
std::string summary_table(const ExperimentResult& r);
/// One row per run.
std::string cell_table(const ExperimentResult& r);

}  // namespace ssmatch
