#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ssmatch/engine.hpp"
#include "ssmatch/rng.hpp"

namespace ssmatch {

/// Human-driven daemon. Each input line is a set of node ids to fire,
/// or one of: all, rand, undo, save PATH, show, help, quit.
class Stepper {
 public:
  Stepper(std::shared_ptr<const Graph> g, Configuration c0, Variant v = Variant::standard, std::uint64_t seed = 0);

  /// Runs until stability, 'quit' or end of input.
  void run(std::istream& in, std::ostream& out);

  /// Handles one input line; returns false when the session is over.
  bool handle(const std::string& line, std::ostream& out);

  void show(std::ostream& out) const;
  const Configuration& current() const { return history_.back(); }
  std::size_t steps() const { return schedule_.size(); }
  bool stable() const;

  /// Session so far as a replayable trace.
  Trace trace() const;

 private:
  std::vector<NodeId> enabled() const;
  void fire(const std::vector<NodeId>& chosen, std::ostream& out);

  std::shared_ptr<const Graph> graph_;
  Variant variant_;
  std::uint64_t seed_;
  Rng rng_;
  std::vector<Configuration> history_;
  std::vector<Selection> schedule_;
};

}  // namespace ssmatch
