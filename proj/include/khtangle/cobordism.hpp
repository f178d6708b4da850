#pragma once

#include <functional>

#include "khtangle/resolution.hpp"

namespace khtangle {

/// Order in which the arcs of the middle matching are surgered when turning
/// b-bar b into the identity tangle.
enum class SurgeryOrder : std::uint8_t { OutermostFirst, InnermostFirst };

/// The multi-saddle cobordism from (x1 on t1) disjoint union (x2 on t2) to a
/// closed configuration of the glued diagram. `x1` must close the right end of
/// t1 with b-bar and `x2` the left end of t2 with b, where b = `middle`.
/// `target_circle(copy, edge)` names the target circle containing edge `edge`
/// of t1 (copy 0) or t2 (copy 1).
SaddleChain multi_saddle(const TangleDiagram& t1, const ClosedConfig& x1, const TangleDiagram& t2,
                         const ClosedConfig& x2, const CrossinglessMatching& middle, SurgeryOrder order,
                         const std::function<int(int, int)>& target_circle, int target_circles);

}  // namespace khtangle
