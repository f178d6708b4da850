#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "khtangle/matching.hpp"
#include "khtangle/tangle.hpp"

namespace khtangle {

/// Vertex of the cube {0,1}^N, one entry per crossing.
using CubeVertex = std::vector<std::uint8_t>;

/// Components of a 1-manifold built from edges. Node k and node k^1 are the
/// two ends of one edge; `junction` pairs up nodes across crossings and
/// boundary closures (-1 marks a free end). Circles are numbered by their
/// smallest node, and each circle lists its nodes in cyclic order starting
/// there.
struct CircleSystem {
  std::vector<int> junction;
  std::vector<int> circle_of_node;  // -1 for nodes on open arcs
  std::vector<std::vector<int>> circles;
  std::vector<std::vector<int>> arcs;  // open components, from the smaller free end

  static CircleSystem trace(std::vector<int> junction);
  int num_circles() const { return static_cast<int>(circles.size()); }
};

/// What a crossing looks like in a particular resolution.
struct SurgeryRecord {
  int crossing = -1;
  int smoothing = 0;             // 0 or 1
  std::array<int, 4> ports{};    // nodes at ports 0..3 (counterclockwise)
  std::array<int, 2> strands{};  // component ids of the two resolved strands
                                 // (circle index, or -1 - arc index)
};

/// A complete resolution T_v with its open arcs.
struct ResolutionConfig {
  CubeVertex v;
  CircleSystem system;
  std::vector<SurgeryRecord> surgery_records;
};

/// The closure a T_v b-bar; every component is a circle.
struct ClosedConfig {
  CubeVertex v;
  CircleSystem system;
  std::vector<SurgeryRecord> surgery_records;
  int num_circles() const { return system.num_circles(); }
};

/// Junction pairs produced by smoothing crossing c with the given smoothing:
/// 0 joins ports (0,1) and (2,3); 1 joins ports (1,2) and (3,0).
void smooth_crossing(const TangleDiagram& t, int c, int smoothing, std::vector<int>& junction);

ResolutionConfig resolve(const TangleDiagram& t, const CubeVertex& v);
ClosedConfig close_resolution(const TangleDiagram& t, const CrossinglessMatching& a, const ResolutionConfig& r,
                              const CrossinglessMatching& b);
/// Shorthand for close_resolution(t, a, resolve(t, v), b).
ClosedConfig closed_config(const TangleDiagram& t, const CrossinglessMatching& a, const CubeVertex& v,
                           const CrossinglessMatching& b);

/// Circles of a b-bar. Each circle is reported as the sorted list of boundary
/// points (1..2n) it passes through.
struct MatchingClosure {
  int num_circles = 0;
  std::vector<std::vector<int>> points;
};
MatchingClosure close_matchings(const CrossinglessMatching& a, const CrossinglessMatching& b);

/// One elementary saddle between two circle systems on the same node set
/// whose junctions differ in exactly two pairs.
struct Saddle {
  enum class Kind : std::uint8_t { Merge, Split };
  Kind kind = Kind::Merge;
  // Merge: source circles in[0], in[1] become target circle out[0].
  // Split: source circle in[0] becomes target circles out[0], out[1].
  std::array<int, 2> in{-1, -1};
  std::array<int, 2> out{-1, -1};
  std::vector<int> carry;  // source circle -> target circle, -1 for involved ones
  int source_circles = 0, target_circles = 0;

  static Saddle between(const CircleSystem& from, const CircleSystem& to);
};

/// A sequence of elementary saddles followed by a relabeling of the final
/// circles; used for the multi-saddle cobordisms of multiplication, the
/// actions and gluing.
struct SaddleChain {
  std::vector<Saddle> steps;
  std::vector<int> final_map;  // circle of the last system -> target circle
  int source_circles = 0, target_circles = 0;
};

/// Replaces the junction pairs (r_i, r_j) and (l_i, l_j) by (r_i, l_i) and
/// (r_j, l_j) for each listed surgery in turn and records the saddles.
/// `target_circle_of_node` identifies circles of the final system with the
/// target's numbering.
SaddleChain build_saddle_chain(std::vector<int> junction,
                               const std::vector<std::array<int, 4>>& surgeries,  // r_i, r_j, l_i, l_j
                               const std::vector<int>& target_circle_of_node, int target_circles);

}  // namespace khtangle
