#include "ssmatch/trace_io.hpp"

#include <json.hpp>

namespace ssmatch {

using json = nlohmann::ordered_json;

namespace {

json config_json(const Configuration& c) {
  json arr = json::array();
  for (std::size_t k = 0; k < c.size(); ++k) {
    const auto& s = c.states()[k];
    arr.push_back(json::array({k, s.p ? json(s.p->value) : json(nullptr), s.m}));
  }
  return arr;
}

Configuration config_from(const json& arr, const Graph& g, std::size_t line) {
  if (!arr.is_array() || arr.size() != g.node_count()) throw ParseError(line, "configuration must list every node");
  Configuration c(g.node_count());
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const json& e = arr[k];
    if (!e.is_array() || e.size() != 3 || e[0].get<std::size_t>() != k) {
      throw ParseError(line, "configuration entry " + std::to_string(k) + " malformed");
    }
    const NodeId i(static_cast<std::uint32_t>(k));
    if (!e[1].is_null()) {
      const NodeId p(e[1].get<std::uint32_t>());
      if (!g.contains(p) || !g.adjacent(i, p)) throw ParseError(line, "pointer of node " + std::to_string(k) + " is not a neighbor");
      c[i].p = p;
    }
    c[i].m = e[2].get<bool>();
  }
  return c;
}

}  // namespace

std::string write_trace(const Trace& t) {
  const Graph& g = *t.graph;
  std::string out;

  json header;
  header["type"] = "header";
  header["graph_hash"] = graph_hash(g);
  header["policy"] = t.policy;
  header["seed"] = t.seed;
  header["n"] = g.node_count();
  header["m"] = g.edge_count();
  header["variant"] = to_string(t.variant);
  header["max_steps"] = t.max_steps;
  header["graph"] = write_graph(g);
  header["initial"] = config_json(t.initial);
  out += header.dump() + '\n';

  std::size_t moves = 0;
  for (const StepRecord& s : t.steps) {
    json rec;
    rec["type"] = "step";
    rec["index"] = s.index;
    rec["round_index"] = s.round_index;
    json mv = json::array();
    for (const Move& m : s.moves) {
      json e = json::array({m.node.value, to_string(m.rule)});
      if (m.marriage_choice) e.push_back(m.marriage_choice->value);
      mv.push_back(std::move(e));
    }
    moves += s.moves.size();
    rec["moves"] = std::move(mv);
    out += rec.dump() + '\n';
  }

  json footer;
  footer["type"] = "footer";
  footer["steps"] = t.steps.size();
  footer["moves"] = moves;
  footer["rounds"] = t.steps.empty() ? 0 : t.steps.back().round_index + 1;
  footer["stable"] = t.stable();
  footer["termination"] = to_string(t.termination);
  footer["final"] = config_json(t.final_config);
  out += footer.dump() + '\n';
  return out;
}

Trace read_trace(std::string_view text) {
  Trace t;
  bool have_footer = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    const auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

    try {
      const json rec = json::parse(line);
      const std::string type = rec.at("type").get<std::string>();
      if (have_footer) throw ParseError(line_no, "record after footer");
      if (type == "header") {
        if (t.graph) throw ParseError(line_no, "second header");
        auto g = std::make_shared<const Graph>(read_graph(rec.at("graph").get<std::string>()));
        if (graph_hash(*g) != rec.at("graph_hash").get<std::string>()) {
          throw CorruptTrace("corrupt trace: graph hash does not match header graph");
        }
        t.graph = g;
        t.policy = rec.at("policy").get<std::string>();
        t.seed = rec.at("seed").get<std::uint64_t>();
        t.variant = parse_variant(rec.at("variant").get<std::string>());
        t.max_steps = rec.at("max_steps").get<std::size_t>();
        t.initial = config_from(rec.at("initial"), *g, line_no);
      } else if (!t.graph) {
        throw ParseError(line_no, "missing header");
      } else if (type == "step") {
        StepRecord s;
        s.index = rec.at("index").get<std::size_t>();
        s.round_index = rec.at("round_index").get<std::size_t>();
        for (const json& m : rec.at("moves")) {
          if (!m.is_array() || m.size() < 2 || m.size() > 3) throw ParseError(line_no, "move must be [node, rule]");
          Move mv{NodeId(m[0].get<std::uint32_t>()), parse_rule(m[1].get<std::string>()), std::nullopt};
          if (m.size() == 3) mv.marriage_choice = NodeId(m[2].get<std::uint32_t>());
          s.moves.push_back(mv);
        }
        t.steps.push_back(std::move(s));
      } else if (type == "footer") {
        have_footer = true;
        t.final_config = config_from(rec.at("final"), *t.graph, line_no);
        const auto term = rec.at("termination").get<std::string>();
        if (term == "stable") {
          t.termination = Termination::stable;
        } else if (term == "step_cap") {
          t.termination = Termination::step_cap;
        } else if (term == "schedule_end") {
          t.termination = Termination::schedule_end;
        } else {
          throw ParseError(line_no, "unknown termination '" + term + "'");
        }
        if (rec.at("steps").get<std::size_t>() != t.steps.size()) {
          throw ParseError(line_no, "footer step count does not match records");
        }
      } else {
        throw ParseError(line_no, "unknown record type '" + type + "'");
      }
    } catch (const json::exception& e) {
      throw ParseError(line_no, e.what());
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    } catch (const GraphError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (!t.graph) throw ParseError(line_no, "missing header");
  if (!have_footer) throw ParseError(line_no, "missing footer");
  return t;
}

}  // namespace ssmatch
