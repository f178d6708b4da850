#include "khtangle/tgl.hpp"

#include <fstream>
#include <optional>
#include <set>
#include <sstream>

namespace khtangle {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw DiagramError("line " + std::to_string(line) + ": " + what);
}

int parse_int(const std::string& tok, int line) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(tok, &used);
  } catch (const std::exception&) {
    fail(line, "expected an integer, got '" + tok + "'");
  }
  if (used != tok.size()) fail(line, "expected an integer, got '" + tok + "'");
  return v;
}

std::vector<std::string> split(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

std::vector<int> int_list(const std::string& s, int line) {
  std::vector<int> out;
  for (const auto& t : split(s)) out.push_back(parse_int(t, line));
  return out;
}

DiagramSpec::Walk parse_walk(const std::string& s, int line) {
  auto toks = split(s);
  DiagramSpec::Walk w;
  std::size_t k = 0;
  if (!toks.empty() && (toks[0][0] == 'L' || toks[0][0] == 'R' || toks[0][0] == 'X')) {
    const std::string& m = toks[0];
    w.start_side = m[0];
    if (m[0] == 'X') {
      const auto dot = m.find('.');
      if (dot == std::string::npos) fail(line, "crossing marker must look like X<crossing>.<port>");
      const int c = parse_int(m.substr(1, dot - 1), line);
      const int p = parse_int(m.substr(dot + 1), line);
      if (c < 1 || p < 0 || p > 3) fail(line, "bad crossing marker '" + m + "'");
      w.start_point = 4 * (c - 1) + p;
    } else {
      w.start_point = parse_int(m.substr(1), line);
      if (w.start_point < 1) fail(line, "boundary markers are 1-based");
    }
    k = 1;
  }
  for (; k < toks.size(); ++k) w.edges.push_back(parse_int(toks[k], line));
  if (w.edges.empty()) fail(line, "empty orientation walk");
  return w;
}

}  // namespace

DiagramSpec parse_tgl(const std::string& text) {
  DiagramSpec spec;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  enum class Block { None, Crossings, Orientations } block = Block::None;
  std::set<std::string> seen;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string body = trim(raw);
    if (body.empty()) continue;
    const bool indented = raw[0] == ' ' || raw[0] == '\t';
    if (indented) {
      if (block == Block::Crossings) {
        const auto v = int_list(body, line);
        if (v.size() != 4) fail(line, "a crossing lists exactly four edges");
        spec.crossings.push_back({v[0], v[1], v[2], v[3]});
      } else if (block == Block::Orientations) {
        spec.orientations.push_back(parse_walk(body, line));
      } else {
        fail(line, "unexpected indented line");
      }
      continue;
    }
    const auto colon = body.find(':');
    if (colon == std::string::npos) fail(line, "expected 'key: value'");
    const std::string key = trim(body.substr(0, colon));
    const std::string value = trim(body.substr(colon + 1));
    if (!seen.insert(key).second) fail(line, "duplicate key '" + key + "'");
    block = Block::None;
    if (key == "left" || key == "right") {
      const int v = parse_int(value, line);
      (key == "left" ? spec.left : spec.right) = v;
    } else if (key == "left_boundary") {
      spec.left_boundary = int_list(value, line);
    } else if (key == "right_boundary") {
      spec.right_boundary = int_list(value, line);
    } else if (key == "crossings" || key == "orientations") {
      if (!value.empty()) fail(line, "'" + key + "' takes an indented block");
      block = key == "crossings" ? Block::Crossings : Block::Orientations;
    } else {
      fail(line, "unknown key '" + key + "'");
    }
  }
  for (const char* required : {"left", "right"})
    if (!seen.count(required)) throw DiagramError(std::string("missing key '") + required + "'");
  return spec;
}

std::string write_tgl(const DiagramSpec& spec) {
  std::ostringstream os;
  auto list = [&](const std::vector<int>& v) {
    for (int x : v) os << ' ' << x;
    os << '\n';
  };
  os << "left: " << spec.left << '\n' << "right: " << spec.right << '\n';
  os << "crossings:\n";
  for (const auto& c : spec.crossings) os << "  " << c[0] << ' ' << c[1] << ' ' << c[2] << ' ' << c[3] << '\n';
  os << "left_boundary:";
  list(spec.left_boundary);
  os << "right_boundary:";
  list(spec.right_boundary);
  os << "orientations:\n";
  for (const auto& w : spec.orientations) {
    os << " ";
    if (w.start_side == 'X')
      os << " X" << (w.start_point / 4 + 1) << '.' << (w.start_point % 4);
    else if (w.start_side)
      os << ' ' << w.start_side << w.start_point;
    list(w.edges);
  }
  return os.str();
}

TangleDiagram tangle_from_tgl(const std::string& text) { return TangleDiagram(parse_tgl(text)); }

TangleDiagram read_tangle_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DiagramError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return tangle_from_tgl(ss.str());
  } catch (const DiagramError& e) {
    throw DiagramError(path + ": " + e.what());
  }
}

}  // namespace khtangle
