#include "ssmatch/stepper.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "ssmatch/matching.hpp"
#include "ssmatch/trace_io.hpp"

namespace ssmatch {

Stepper::Stepper(std::shared_ptr<const Graph> g, Configuration c0, Variant v, std::uint64_t seed)
    : graph_(std::move(g)), variant_(v), seed_(seed), rng_(seed) {
  if (!well_formed(c0, *graph_)) throw ContractViolation("initial configuration is not well-formed");
  history_.push_back(std::move(c0));
}

std::vector<NodeId> Stepper::enabled() const {
  std::vector<NodeId> out;
  for (std::size_t k = 0; k < graph_->node_count(); ++k) {
    const NodeId i(static_cast<std::uint32_t>(k));
    if (enabled_rule(current(), *graph_, i, variant_)) out.push_back(i);
  }
  return out;
}

bool Stepper::stable() const { return enabled().empty(); }

void Stepper::show(std::ostream& out) const {
  const Graph& g = *graph_;
  const Configuration& c = current();
  out << "step " << steps() << '\n';
  for (std::size_t k = 0; k < g.node_count(); ++k) {
    const NodeId i(static_cast<std::uint32_t>(k));
    const auto rule = enabled_rule(c, g, i, variant_);
    out << "  node " << k << " id=" << g.ident(i) << " p=";
    if (c[i].p) {
      out << c[i].p->value;
    } else {
      out << '-';
    }
    out << " m=" << (c[i].m ? 't' : 'f') << ' ' << to_string(classify(c, g, i)) << " enabled="
        << (rule ? to_string(*rule) : std::string_view("-")) << '\n';
  }
}

Trace Stepper::trace() const {
  ScheduleDaemon daemon(schedule_, "interactive");
  RunOptions opts;
  opts.variant = variant_;
  opts.max_steps = std::max(step_bound(*graph_), schedule_.size()) + 1;
  return ssmatch::run(graph_, history_.front(), daemon, seed_, opts);
}

void Stepper::fire(const std::vector<NodeId>& chosen, std::ostream& out) {
  StepResult r = apply_step(current(), *graph_, chosen, StepOptions{variant_, {}});
  out << "fired";
  for (const Move& mv : r.record.moves) out << ' ' << to_string(mv.rule) << '(' << mv.node << ')';
  out << '\n';
  history_.push_back(std::move(r.next));
  schedule_.push_back(Selection{chosen, {}});
}

bool Stepper::handle(const std::string& line, std::ostream& out) {
  std::istringstream is(line);
  std::vector<std::string> words;
  for (std::string w; is >> w;) {
    std::replace(w.begin(), w.end(), ',', ' ');
    std::istringstream ws(w);
    for (std::string part; ws >> part;) words.push_back(part);
  }
  if (words.empty()) {
    out << "empty selection\n";
    return true;
  }
  const std::string& cmd = words.front();
  if (cmd == "quit" || cmd == "q") return false;
  if (cmd == "help") {
    out << "enter node ids to fire, or: all, rand, undo, save PATH, show, quit\n";
    return true;
  }
  if (cmd == "show") {
    show(out);
    return true;
  }
  if (cmd == "undo") {
    if (schedule_.empty()) {
      out << "nothing to undo\n";
    } else {
      history_.pop_back();
      schedule_.pop_back();
      show(out);
    }
    return true;
  }
  if (cmd == "save") {
    if (words.size() != 2) {
      out << "usage: save PATH\n";
      return true;
    }
    std::ofstream f(words[1], std::ios::binary);
    f << write_trace(trace());
    out << (f ? "saved " : "could not write ") << words[1] << '\n';
    return true;
  }

  const auto en = enabled();
  std::vector<NodeId> chosen;
  if (cmd == "all") {
    chosen = en;
  } else if (cmd == "rand") {
    while (chosen.empty()) {
      for (NodeId v : en) {
        if (rng_.coin()) chosen.push_back(v);
      }
    }
  } else {
    for (const std::string& w : words) {
      std::uint32_t v = 0;
      const auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
      if (ec != std::errc() || ptr != w.data() + w.size()) {
        out << "unknown command '" << w << "'\n";
        return true;
      }
      const NodeId i(v);
      if (!std::binary_search(en.begin(), en.end(), i)) {
        out << "node " << v << " is not enabled\n";
        return true;
      }
      if (std::find(chosen.begin(), chosen.end(), i) == chosen.end()) chosen.push_back(i);
    }
    std::sort(chosen.begin(), chosen.end());
  }
  fire(chosen, out);
  show(out);
  if (stable()) {
    const auto mt = extract_matching(current(), *graph_);
    out << "stable after " << steps() << " steps; matching:";
    for (const Edge& e : mt.edges) out << " (" << e.u << "," << e.v << ")";
    out << '\n';
    return false;
  }
  return true;
}

void Stepper::run(std::istream& in, std::ostream& out) {
  show(out);
  if (stable()) {
    out << "already stable\n";
    return;
  }
  std::string line;
  for (;;) {
    out << "> " << std::flush;
    if (!std::getline(in, line)) break;
    if (!handle(line, out)) break;
  }
}

}  // namespace ssmatch
