#pragma once

#include <string>

#include "khtangle/tangle.hpp"

namespace khtangle {

/// Parses the line-based `.tgl` diagram format (see docs/formats.md).
/// Syntax errors raise DiagramError with the offending line number.
DiagramSpec parse_tgl(const std::string& text);
std::string write_tgl(const DiagramSpec& spec);

TangleDiagram read_tangle_file(const std::string& path);
TangleDiagram tangle_from_tgl(const std::string& text);

}  // namespace khtangle
