#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "khtangle/matching.hpp"
#include "khtangle/tgl.hpp"

inline std::string fixture_path(const std::string& name) { return std::string(KHTANGLE_FIXTURES_DIR) + "/" + name + ".tgl"; }

inline khtangle::TangleDiagram fixture(const std::string& name) { return khtangle::read_tangle_file(fixture_path(name)); }

inline khtangle::DiagramSpec fixture_spec(const std::string& name) {
  std::ifstream f(fixture_path(name));
  std::stringstream ss;
  ss << f.rdbuf();
  return khtangle::parse_tgl(ss.str());
}

inline const khtangle::CrossinglessMatching& empty_matching() {
  static const khtangle::CrossinglessMatching e(0, {});
  return e;
}
