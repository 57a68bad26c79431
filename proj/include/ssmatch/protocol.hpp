#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "ssmatch/graph.hpp"

namespace ssmatch {

/// Local state of one process: pointer p (null or a neighbor) and the
/// married flag m.
struct ProcessState {
  std::optional<NodeId> p;
  bool m = false;
  friend bool operator==(const ProcessState&, const ProcessState&) = default;
};

/// Full system state: one ProcessState per node, indexed by NodeId.
class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(std::size_t n) : states_(n) {}
  explicit Configuration(std::vector<ProcessState> states) : states_(std::move(states)) {}

  std::size_t size() const { return states_.size(); }
  const ProcessState& operator[](NodeId i) const { return states_[i.index()]; }
  ProcessState& operator[](NodeId i) { return states_[i.index()]; }
  const std::vector<ProcessState>& states() const { return states_; }

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  std::vector<ProcessState> states_;
};

enum class Rule : std::uint8_t { Update, Marriage, Seduction, Abandonment };
inline constexpr std::array<Rule, 4> kAllRules = {Rule::Update, Rule::Marriage, Rule::Seduction,
                                                  Rule::Abandonment};

std::string_view to_string(Rule r);
Rule parse_rule(std::string_view name);

enum class PredicateClass : std::uint8_t { PRmarried, PRwaiting, PRcondemned, PRdead, PRfree };
std::string_view to_string(PredicateClass c);

/// Rule set to execute. `unordered_seduction` drops the "j > i" guard of
/// Seduction; it exists only as a negative control for the verifier.
enum class Variant : std::uint8_t { standard, unordered_seduction };
std::string_view to_string(Variant v);
Variant parse_variant(std::string_view name);

class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

bool pr_married(const Configuration& c, const Graph& g, NodeId i);
PredicateClass classify(const Configuration& c, const Graph& g, NodeId i);

/// Guard of one rule, evaluated independently of the others.
bool guard_holds(const Configuration& c, const Graph& g, NodeId i, Rule r, Variant v = Variant::standard);

/// Bit k set iff guard of kAllRules[k] holds.
unsigned enabled_rule_mask(const Configuration& c, const Graph& g, NodeId i, Variant v = Variant::standard);

/// First rule (in Update, Marriage, Seduction, Abandonment order) whose
/// guard holds.
std::optional<Rule> enabled_rule(const Configuration& c, const Graph& g, NodeId i, Variant v = Variant::standard);

/// Neighbors j with p_j = i, ascending by identifier.
std::vector<NodeId> marriage_suitors(const Configuration& c, const Graph& g, NodeId i);

/// Max{j in N(i) : p_j = null, j > i, not m_j}; the j > i term is dropped
/// for Variant::unordered_seduction.
std::optional<NodeId> seduction_target(const Configuration& c, const Graph& g, NodeId i,
                                       Variant v = Variant::standard);

/// New state of i after executing r. Marriage picks the suitor with the
/// largest identifier unless `marriage_choice` names another suitor.
/// Throws ContractViolation if r is not enabled at i or the choice is not
/// a suitor.
ProcessState command_target(const Configuration& c, const Graph& g, NodeId i, Rule r,
                            std::optional<NodeId> marriage_choice = std::nullopt,
                            Variant v = Variant::standard);

/// The command of r applied without checking its guard. Returns nullopt
/// when the command has no defined effect in c (Marriage with no suitor,
/// Seduction with no target, Abandonment with p_i = null).
std::optional<ProcessState> apply_command_unchecked(const Configuration& c, const Graph& g, NodeId i, Rule r,
                                                    std::optional<NodeId> marriage_choice = std::nullopt,
                                                    Variant v = Variant::standard);

/// Unvalidated per-node input. p may name any integer; m any integer
/// (nonzero means true).
struct RawProcessState {
  std::optional<std::int64_t> p;
  std::int64_t m = 0;
};
using RawConfiguration = std::vector<RawProcessState>;

/// Restricts a raw configuration to the well-formed state space: p values
/// outside N(i) become null, m is coerced to bool, missing nodes start as
/// (null, false) and surplus entries are dropped.
Configuration normalize(const RawConfiguration& raw, const Graph& g);

bool well_formed(const Configuration& c, const Graph& g);

Configuration all_null(const Graph& g);

/// Uniform over the well-formed state space of each node.
Configuration random_configuration(const Graph& g, std::uint64_t seed);

}  // namespace ssmatch
