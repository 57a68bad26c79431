#include "ssmatch/config_io.hpp"

#include <charconv>
#include <sstream>
#include <vector>

namespace ssmatch {

namespace {

std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::int64_t number(std::string_view tok, std::size_t line) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line, "expected a decimal integer, got '" + std::string(tok) + "'");
  }
  return v;
}

}  // namespace

RawConfiguration read_raw_configuration(std::string_view text, std::size_t n) {
  RawConfiguration raw(n);
  std::vector<bool> seen(n, false);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    const auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;

    const auto toks = tokens(line);
    if (toks.empty() || toks[0].front() == '#') continue;
    if (toks.size() != 3) throw ParseError(line_no, "configuration line must be 'id p m'");
    const auto id = number(toks[0], line_no);
    if (id < 0 || static_cast<std::uint64_t>(id) >= n) throw ParseError(line_no, "node id out of range");
    if (seen[id]) throw ParseError(line_no, "node " + std::to_string(id) + " listed twice");
    seen[id] = true;

    RawProcessState& s = raw[id];
    if (toks[1] != "-") s.p = number(toks[1], line_no);
    if (toks[2] == "t") {
      s.m = 1;
    } else if (toks[2] == "f") {
      s.m = 0;
    } else {
      throw ParseError(line_no, "m must be 't' or 'f'");
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (!seen[k]) throw ParseError(line_no, "node " + std::to_string(k) + " missing from configuration");
  }
  return raw;
}

Configuration read_configuration(std::string_view text, const Graph& g) {
  return normalize(read_raw_configuration(text, g.node_count()), g);
}

std::string write_configuration(const Configuration& c) {
  std::ostringstream os;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const auto& s = c.states()[k];
    os << k << ' ';
    if (s.p) {
      os << s.p->value;
    } else {
      os << '-';
    }
    os << ' ' << (s.m ? 't' : 'f') << '\n';
  }
  return os.str();
}

}  // namespace ssmatch
