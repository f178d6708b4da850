#include "khtangle/cobordism.hpp"

#include <stdexcept>

namespace khtangle {

SaddleChain multi_saddle(const TangleDiagram& t1, const ClosedConfig& x1, const TangleDiagram& t2,
                         const ClosedConfig& x2, const CrossinglessMatching& middle, SurgeryOrder order,
                         const std::function<int(int, int)>& target_circle, int target_circles) {
  if (t1.n() != middle.n() || t2.m() != middle.n()) throw std::invalid_argument("multi_saddle: boundary mismatch");
  const int off = t1.num_nodes();
  std::vector<int> junction = x1.system.junction;
  for (int k : x2.system.junction) junction.push_back(k < 0 ? k : k + off);
  std::vector<std::array<int, 4>> surgeries;
  const auto pairs = order == SurgeryOrder::OutermostFirst ? middle.outermost_first() : middle.innermost_first();
  for (auto [i, j] : pairs)
    surgeries.push_back({t1.right_node(i - 1), t1.right_node(j - 1), off + t2.left_node(i - 1), off + t2.left_node(j - 1)});
  std::vector<int> target_of_node(junction.size(), -1);
  for (int k = 0; k < off; ++k) target_of_node[static_cast<std::size_t>(k)] = target_circle(0, k >> 1);
  for (int k = 0; k < t2.num_nodes(); ++k) target_of_node[static_cast<std::size_t>(off + k)] = target_circle(1, k >> 1);
  return build_saddle_chain(std::move(junction), surgeries, target_of_node, target_circles);
}

}  // namespace khtangle
