#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ssmatch/engine.hpp"

namespace ssmatch {

enum class Verdict : std::uint8_t { pass, fail, not_applicable };
std::string_view to_string(Verdict v);

struct CheckResult {
  std::string name;
  Verdict verdict = Verdict::pass;
  std::string counters;
  /// Configuration index (0 = initial; k = after step k-1) at which the
  /// violation is first observable, and the offending step when there is one.
  std::optional<std::size_t> config_index;
  std::optional<std::size_t> step_index;
  std::string detail;
  std::string snapshot;  // configuration text at config_index
};

struct AuditReport {
  std::string graph_hash;
  std::size_t n = 0;
  std::size_t m = 0;
  std::string policy;
  std::uint64_t seed = 0;
  bool connected = true;
  bool distance2_unique = true;
  std::vector<std::string> notes;
  std::vector<CheckResult> checks;

  bool passed() const;
  /// Throws std::out_of_range for unknown check names.
  const CheckResult& check(std::string_view name) const;
};

/// Names of every check, in report order.
const std::vector<std::string>& audit_check_names();

/// Replays t and evaluates every invariant and bound. Throws CorruptTrace
/// when the trace does not replay to its recorded final configuration.
AuditReport audit_trace(const Trace& t);

/// "name: verdict: counters" per check, with indented counterexample
/// details below failing checks.
std::string write_report(const AuditReport& r);

}  // namespace ssmatch
